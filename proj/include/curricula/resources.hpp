// Copyright 2026 The Curricula Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Lexical databases and parse annotations consumed by the prototypicality and
// simplicity features. Every table lookup is total: absent words get the
// table's default.

#ifndef CURRICULA_RESOURCES_HPP_
#define CURRICULA_RESOURCES_HPP_

#include <filesystem>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "curricula/corpus.hpp"
#include "curricula/embeddings.hpp"

namespace curricula {

inline constexpr double kDefaultAgeOfAcquisition = 25.0;
inline constexpr double kDefaultConcreteness = 3.0;
inline constexpr double kDefaultSyllables = 5.0;
inline constexpr std::size_t kMaxTitleTokens = 5;

/// word -> value with a default for absent words. Lookups try the exact form
/// first, then its ASCII lower-case form.
class ScalarTable {
 public:
  ScalarTable() = default;
  explicit ScalarTable(double default_value) : default_(default_value) {}

  void set(std::string word, double value) { values_[std::move(word)] = value; }
  double lookup(std::string_view word) const;
  bool contains(std::string_view word) const;
  double default_value() const { return default_; }
  std::size_t size() const { return values_.size(); }

 private:
  std::unordered_map<std::string, double> values_;
  double default_ = 0.0;
};

struct ValueRange {
  double lo;
  double hi;
  bool lo_inclusive = true;
};

/// TSV `word<TAB>value`. Non-numeric or out-of-range values throw Error with
/// the line number.
ScalarTable load_scalar_table(const std::filesystem::path& path, double default_value,
                              std::optional<ValueRange> range = std::nullopt);

ScalarTable load_aoa_table(const std::filesystem::path& path);
ScalarTable load_concreteness_table(const std::filesystem::path& path);
ScalarTable load_syllable_table(const std::filesystem::path& path);

/// Titles of 1..kMaxTitleTokens normalized tokens.
class TitleSet {
 public:
  /// Returns false when the title is empty, too long, or already present.
  bool add(std::vector<std::string> tokens);
  bool contains(const std::vector<std::string>& tokens) const { return titles_.count(tokens) > 0; }
  std::size_t size() const { return titles_.size(); }

  /// Occurrences of any title as a contiguous n-gram, overlaps allowed.
  std::size_t count_matches(const std::vector<std::string>& tokens) const;

 private:
  std::set<std::vector<std::string>> titles_;
};

/// One title per line, tokens space-separated.
TitleSet load_titles(const std::filesystem::path& path);

/// Relative frequency of words inside semantic categories.
class SemanticCategoryMap {
 public:
  /// rel_freq(word | category), or 0 when the word is not a member.
  double relative_frequency(std::string_view word, std::string_view category) const;
  /// Max over the word's categories; 0 for words without a category.
  double word_value(std::string_view word) const;
  const std::map<std::string, std::map<std::string, double>>& categories() const { return categories_; }
  std::vector<std::string> categories_of(std::string_view word) const;

 private:
  friend SemanticCategoryMap build_category_map(const Corpus&,
                                                const std::map<std::string, std::vector<std::string>>&,
                                                std::vector<std::string>*);
  std::map<std::string, std::map<std::string, double>> categories_;
  std::unordered_map<std::string, double> word_value_;
  std::unordered_map<std::string, std::vector<std::string>> membership_;
};

/// `word<TAB>category[,category...]` lines.
std::map<std::string, std::vector<std::string>> load_category_membership(const std::filesystem::path& path);

/// rel_freq(w | cat) = count(w) / Σ count(w') over cat members in the corpus
/// vocabulary. Categories left empty are dropped and named in `warnings`.
SemanticCategoryMap build_category_map(const Corpus& corpus,
                                       const std::map<std::string, std::vector<std::string>>& membership,
                                       std::vector<std::string>* warnings = nullptr);

struct SentenceRecord {
  int depth = 0;
  int noun_phrases = 0;
  int verb_phrases = 0;
  int prep_phrases = 0;
  std::vector<std::string> pos;

  bool operator==(const SentenceRecord&) const = default;
};

/// `depth=<int> np=<int> vp=<int> pp=<int> pos=<tag,tag,...>`; pos is optional.
SentenceRecord parse_sentence_record(std::string_view text);
std::string serialize_sentence_record(const SentenceRecord& record);

struct ParseAnnotations {
  std::vector<std::vector<SentenceRecord>> paragraphs;

  std::size_t size() const { return paragraphs.size(); }
  /// Throws Error on paragraph count or sentence token count mismatch.
  void check_alignment(const Corpus& corpus) const;
  void save(const std::filesystem::path& path) const;
};

/// One line per paragraph, `|`-separated sentence records.
ParseAnnotations load_annotations(const std::filesystem::path& path);

/// Predicted probability of the high-imageability class per word.
class ImageabilityModel {
 public:
  void set(std::string word, double score) { scores_[std::move(word)] = score; }
  /// Score of `word`, else of UNK, else 0.5.
  double lookup(std::string_view word) const;
  std::size_t size() const { return scores_.size(); }

 private:
  std::unordered_map<std::string, double> scores_;
};

/// Seeds binarized at their median rating (high = above the median); an ℓ2
/// logistic regression on seed embeddings then scores every embedding word.
/// Throws std::invalid_argument for seeds absent from `embeddings` or with
/// fewer than two words on either side of the threshold.
ImageabilityModel propagate_imageability(const std::vector<std::pair<std::string, double>>& seed_ratings,
                                         const EmbeddingMatrix& embeddings, double l2);

/// TSV seeds in file order.
std::vector<std::pair<std::string, double>> load_seed_ratings(const std::filesystem::path& path);

/// Everything prototypicality and simplicity features may consume; absent
/// members make the dependent features unavailable.
struct ResourceBundle {
  std::optional<ScalarTable> aoa;
  std::optional<ScalarTable> concreteness;
  std::optional<ScalarTable> syllables;
  std::optional<ImageabilityModel> imageability;
  std::optional<TitleSet> titles;
  std::optional<SemanticCategoryMap> supersenses;
  std::optional<SemanticCategoryMap> synsets;
  std::optional<ParseAnnotations> annotations;
};

}  // namespace curricula

#endif  // CURRICULA_RESOURCES_HPP_
