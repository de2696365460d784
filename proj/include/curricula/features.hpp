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

// Per-paragraph diversity, simplicity and prototypicality features.
//
// Extraction is embarrassingly parallel over paragraphs. extract_features runs
// the per-paragraph kernel under OpenMP; extract_features_serial is the
// single-threaded reference. Each column is computed independently and written
// by paragraph index, so both produce bit-identical matrices.

#ifndef CURRICULA_FEATURES_HPP_
#define CURRICULA_FEATURES_HPP_

#include <array>
#include <span>
#include <vector>

#include "curricula/corpus.hpp"
#include "curricula/embeddings.hpp"
#include "curricula/feature_matrix.hpp"
#include "curricula/ngram_lm.hpp"
#include "curricula/resources.hpp"

namespace curricula {

inline constexpr int kWordLmOrder = 3;
inline constexpr int kCharLmOrder = 5;
inline constexpr double kLmSmoothing = 0.01;

/// Cosine similarity between vocabulary types, from bootstrap embeddings.
/// Rows are unit-normalized once; d(t, t) = 1 and zero vectors are orthogonal
/// to everything else.
class SimilarityProvider {
 public:
  SimilarityProvider() = default;
  /// Vocabulary types missing from `embeddings` fall back to its UNK row.
  SimilarityProvider(const Vocabulary& vocab, const EmbeddingMatrix& embeddings);

  double similarity(WordId a, WordId b) const;
  std::span<const double> unit(WordId id) const {
    return {units_.data() + static_cast<std::size_t>(id) * dim_, dim_};
  }
  double squared_norm(WordId id) const { return sq_norms_[static_cast<std::size_t>(id)]; }
  std::size_t dim() const { return dim_; }
  std::size_t size() const { return sq_norms_.size(); }

 private:
  std::size_t dim_ = 0;
  std::vector<double> units_;
  std::vector<double> sq_norms_;  // 1 for non-zero rows, 0 otherwise
};

/// Empirical type probabilities over the whole corpus, indexed by WordId.
std::vector<double> global_type_probabilities(const Corpus& corpus);

/// (#types, type-token ratio, entropy, Simpson index, quadratic entropy).
/// The first four use within-paragraph frequencies; quadratic entropy sums
/// d_ij p_i p_j over ordered pairs of the paragraph's types (i = j included)
/// with global p.
std::array<double, 5> diversity_features(std::span<const WordId> ids, std::span<const double> global_probs,
                                         const SimilarityProvider& sim);

struct LanguageModels {
  NgramLm word;
  NgramLm chars;
};

LanguageModels train_language_models(const Corpus& corpus);

/// (word LM mean log-prob, char LM mean log-prob, average sentence length,
///  verb-token ratio, noun-token ratio, mean parse depth, ΣNP, ΣVP, ΣPP).
/// Without `sentences` the paragraph counts as one sentence and the six
/// parse-derived values are 0.
std::array<double, 9> simplicity_features(const Paragraph& p, std::span<const WordId> ids,
                                          const LanguageModels& lms,
                                          const std::vector<SentenceRecord>* sentences);

/// (AoA, concreteness, imageability, conventionalization, syllables,
///  supersense rel-freq, synset rel-freq), token-level means except
///  conventionalization = title matches / tokens. Absent tables contribute
///  their defaults (0 for category maps, 0.5 for imageability).
std::array<double, 7> prototypicality_features(const Paragraph& p, std::span<const WordId> ids,
                                               const Vocabulary& vocab, const ResourceBundle& res);

/// Shared read-only inputs of the extraction kernel.
struct FeatureInputs {
  const ResourceBundle* resources = nullptr;
  const LanguageModels* lms = nullptr;
  const SimilarityProvider* similarity = nullptr;
};

/// Throws ValidationError naming the first enabled feature whose dependency is
/// missing.
void check_feature_dependencies(const FeatureSpec& spec, const FeatureInputs& inputs);

FeatureMatrix extract_features(const Corpus& corpus, const FeatureSpec& spec, const FeatureInputs& inputs);
FeatureMatrix extract_features_serial(const Corpus& corpus, const FeatureSpec& spec,
                                      const FeatureInputs& inputs);

}  // namespace curricula

#endif  // CURRICULA_FEATURES_HPP_
