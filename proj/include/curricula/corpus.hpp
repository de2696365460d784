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

// Paragraph-per-line corpus ingestion and the frequency-thresholded vocabulary.

#ifndef CURRICULA_CORPUS_HPP_
#define CURRICULA_CORPUS_HPP_

#include <cstdint>
#include <filesystem>
#include <memory>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace curricula {

using WordId = std::int32_t;

inline constexpr std::string_view kUnkToken = "UNK";
inline constexpr std::string_view kDigitToken = "DG";

struct Paragraph {
  std::size_t index = 0;            // 0-based position among retained lines
  std::vector<std::string> tokens;  // normalized
  std::string raw;                  // original line, used for deduplication
};

/// Dense type ids. Ids follow export order: descending count, then
/// lexicographic type, with UNK always last.
class Vocabulary {
 public:
  Vocabulary() = default;

  /// Builds from (type, count) pairs; `unk_count` is the mass folded into UNK.
  static Vocabulary from_counts(std::vector<std::pair<std::string, std::int64_t>> counts,
                                std::int64_t unk_count);

  std::size_t size() const { return words_.size(); }
  WordId unk_id() const { return static_cast<WordId>(words_.size()) - 1; }
  std::int64_t total_token_count() const { return total_; }

  /// Id of `word`, or unk_id() when absent.
  WordId id(std::string_view word) const;
  bool contains(std::string_view word) const;
  const std::string& word(WordId id) const { return words_.at(static_cast<std::size_t>(id)); }
  std::int64_t count(WordId id) const { return counts_.at(static_cast<std::size_t>(id)); }
  const std::vector<std::int64_t>& counts() const { return counts_; }
  const std::vector<std::string>& words() const { return words_; }

  void save_tsv(const std::filesystem::path& path) const;
  static Vocabulary load_tsv(const std::filesystem::path& path);

  bool operator==(const Vocabulary& other) const {
    return words_ == other.words_ && counts_ == other.counts_;
  }

 private:
  struct Hash {
    using is_transparent = void;
    std::size_t operator()(std::string_view s) const { return std::hash<std::string_view>{}(s); }
  };
  std::vector<std::string> words_;
  std::vector<std::int64_t> counts_;
  std::unordered_map<std::string, WordId, Hash, std::equal_to<>> index_;
  std::int64_t total_ = 0;
};

class Corpus {
 public:
  Corpus() = default;
  explicit Corpus(std::vector<Paragraph> paragraphs) : paragraphs_(std::move(paragraphs)) {}

  std::size_t size() const { return paragraphs_.size(); }
  const std::vector<Paragraph>& paragraphs() const { return paragraphs_; }
  const Paragraph& operator[](std::size_t i) const { return paragraphs_[i]; }

  bool has_vocabulary() const { return vocab_ != nullptr; }
  const Vocabulary& vocabulary() const;
  /// Attaches a vocabulary and caches per-paragraph token ids.
  void attach_vocabulary(std::shared_ptr<const Vocabulary> vocab);
  std::shared_ptr<const Vocabulary> shared_vocabulary() const { return vocab_; }
  /// Token ids of paragraph `i` (requires an attached vocabulary).
  const std::vector<WordId>& ids(std::size_t i) const { return ids_.at(i); }

  std::int64_t token_count() const;
  std::size_t max_paragraph_length() const;

  /// Writes raw lines in current paragraph order.
  void save_text(const std::filesystem::path& path) const;

 private:
  std::vector<Paragraph> paragraphs_;
  std::shared_ptr<const Vocabulary> vocab_;
  std::vector<std::vector<WordId>> ids_;
};

/// Replaces every ASCII digit with "DG"; case is preserved.
std::string normalize_token(std::string_view token);

/// Tokenizes one line: whitespace split, then normalize_token.
std::vector<std::string> tokenize_line(std::string_view line);

/// One paragraph per non-empty line. Throws Error naming the path if the file
/// cannot be read, or the 1-based line number on invalid UTF-8.
Corpus load_corpus(const std::filesystem::path& path);
Corpus corpus_from_lines(const std::vector<std::string>& lines);

/// Types with count < min_count are folded into UNK.
Vocabulary build_vocabulary(const Corpus& corpus, std::int64_t min_count = 10);

/// load_corpus + build_vocabulary + attach.
Corpus load_corpus_with_vocabulary(const std::filesystem::path& path, std::int64_t min_count);

}  // namespace curricula

#endif  // CURRICULA_CORPUS_HPP_
