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

// CBOW with negative sampling, trained over paragraphs in curriculum order.
//
// With workers == 1 training is a single deterministic pass: the same corpus,
// curriculum and seed give bit-identical vectors. With workers > 1 paragraphs
// are split into contiguous blocks processed by OpenMP threads that update the
// shared parameters without synchronization; results then depend on thread
// scheduling.

#ifndef CURRICULA_EMBEDDINGS_HPP_
#define CURRICULA_EMBEDDINGS_HPP_

#include <cmath>
#include <cstdint>
#include <filesystem>
#include <limits>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "curricula/common.hpp"
#include "curricula/corpus.hpp"
#include "curricula/curriculum.hpp"

namespace curricula {

struct CbowConfig {
  int dim = 100;
  int window = 5;
  int negative = 5;
  int epochs = 1;
  double initial_lr = 0.025;
  double min_lr = 0.025 * 1e-4;
  std::uint64_t seed = 1;
  int workers = 1;

  /// Throws std::invalid_argument when out of range.
  void validate() const;
};

class EmbeddingMatrix {
 public:
  EmbeddingMatrix() = default;
  EmbeddingMatrix(std::vector<std::string> words, int dim);

  std::size_t size() const { return words_.size(); }
  int dim() const { return dim_; }
  const std::vector<std::string>& words() const { return words_; }

  bool contains(std::string_view word) const;
  /// Row of `word`; throws Error naming the word when it is absent.
  std::size_t row_of(std::string_view word) const;
  /// Row of `word`, or of UNK if absent; -1 when neither exists.
  std::ptrdiff_t row_or_unk(std::string_view word) const;

  std::span<double> input(std::size_t row) { return {input_.data() + row * dim_, static_cast<std::size_t>(dim_)}; }
  std::span<const double> input(std::size_t row) const {
    return {input_.data() + row * dim_, static_cast<std::size_t>(dim_)};
  }
  std::span<double> output(std::size_t row) { return {output_.data() + row * dim_, static_cast<std::size_t>(dim_)}; }
  std::span<const double> output(std::size_t row) const {
    return {output_.data() + row * dim_, static_cast<std::size_t>(dim_)};
  }
  std::vector<double>& input_data() { return input_; }
  const std::vector<double>& input_data() const { return input_; }
  std::vector<double>& output_data() { return output_; }
  const std::vector<double>& output_data() const { return output_; }

  bool all_finite() const;

  bool operator==(const EmbeddingMatrix& o) const {
    return words_ == o.words_ && dim_ == o.dim_ && input_ == o.input_ && output_ == o.output_;
  }

 private:
  std::vector<std::string> words_;
  std::unordered_map<std::string, std::size_t> index_;
  int dim_ = 0;
  std::vector<double> input_;
  std::vector<double> output_;
};

/// Noise distribution proportional to count^(3/4).
class NoiseSampler {
 public:
  explicit NoiseSampler(std::span<const std::int64_t> counts, double power = 0.75);
  WordId sample(Rng& rng) const;
  double probability(WordId id) const;
  std::size_t size() const { return cumulative_.size(); }

 private:
  std::vector<double> cumulative_;
};

// ---- Single-instance kernel -------------------------------------------------
//
// For context rows C (mean h), target t and negatives n_k, the loss is
//   L = -log σ(out_t · h) - Σ_k log σ(-out_{n_k} · h).
// Parameters are |V|×dim row-major blocks.

struct CbowInstance {
  std::span<const WordId> context;
  WordId target = 0;
  std::span<const WordId> negatives;
};

double cbow_loss(std::span<const double> input, std::span<const double> output, int dim,
                 const CbowInstance& inst);

/// Gradients of cbow_loss with respect to both parameter blocks (accumulated
/// into zero-initialized outputs of the same shape).
void cbow_gradient(std::span<const double> input, std::span<const double> output, int dim,
                   const CbowInstance& inst, std::span<double> grad_input,
                   std::span<double> grad_output);

template <typename Real>
inline Real sigmoid(Real x) {
  return Real(1) / (Real(1) + std::exp(-x));
}

/// One SGD step on `inst` with step size lr·multiplier; `hidden` and `error`
/// are dim-sized scratch buffers. Returns the loss before the update.
/// Negatives equal to the target are skipped.
template <typename Real>
Real cbow_update(Real* input, Real* output, int dim, const CbowInstance& inst, Real lr_times_weight,
                 Real* hidden, Real* error) {
  const std::size_t d = static_cast<std::size_t>(dim);
  const Real inv_c = Real(1) / static_cast<Real>(inst.context.size());
  for (std::size_t k = 0; k < d; ++k) hidden[k] = Real(0);
  for (const WordId c : inst.context) {
    const Real* in = input + static_cast<std::size_t>(c) * d;
    for (std::size_t k = 0; k < d; ++k) hidden[k] += in[k];
  }
  for (std::size_t k = 0; k < d; ++k) {
    hidden[k] *= inv_c;
    error[k] = Real(0);
  }
  Real loss = 0;
  const auto step = [&](WordId word, Real label) {
    Real* out = output + static_cast<std::size_t>(word) * d;
    Real f = 0;
    for (std::size_t k = 0; k < d; ++k) f += hidden[k] * out[k];
    const Real s = sigmoid(f);
    const Real p = label > Real(0.5) ? s : Real(1) - s;
    loss -= std::log(p > std::numeric_limits<Real>::min() ? p : std::numeric_limits<Real>::min());
    const Real g = (label - s) * lr_times_weight;
    for (std::size_t k = 0; k < d; ++k) error[k] += g * out[k];
    for (std::size_t k = 0; k < d; ++k) out[k] += g * hidden[k];
  };
  step(inst.target, Real(1));
  for (const WordId n : inst.negatives) {
    if (n == inst.target) continue;
    step(n, Real(0));
  }
  for (const WordId c : inst.context) {
    Real* in = input + static_cast<std::size_t>(c) * d;
    for (std::size_t k = 0; k < d; ++k) in[k] += error[k] * inv_c;
  }
  return loss;
}

// ---- Training -----------------------------------------------------------------

/// Optional per-token loss trace, one entry per trained token in visit order.
struct TrainingTrace {
  std::vector<double> losses;
};

EmbeddingMatrix train_cbow(const Corpus& corpus, const Curriculum& curriculum, const CbowConfig& cfg,
                           TrainingTrace* trace = nullptr);

/// Each token's update is scaled by σ(score of its paragraph) + lambda.
EmbeddingMatrix train_cbow_weighted(const Corpus& corpus, const Curriculum& curriculum, double lambda,
                                    const CbowConfig& cfg, TrainingTrace* trace = nullptr);

/// σ(score) + lambda.
inline double curriculum_multiplier(double score, double lambda) {
  return 1.0 / (1.0 + std::exp(-score)) + lambda;
}

/// word2vec text format: `|V| dim`, then `word v1 ... v_dim` with 6 decimals.
void save_embeddings(const EmbeddingMatrix& m, const std::filesystem::path& path);
EmbeddingMatrix load_embeddings(const std::filesystem::path& path);

/// Cosine of the input vectors; throws Error naming an out-of-vocabulary word.
double cosine(const EmbeddingMatrix& m, std::string_view a, std::string_view b);
double cosine(std::span<const double> a, std::span<const double> b);

}  // namespace curricula

#endif  // CURRICULA_EMBEDDINGS_HPP_
