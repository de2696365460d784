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

#include "curricula/embeddings.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <stdexcept>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "curricula/common.hpp"

namespace curricula {

void CbowConfig::validate() const {
  if (dim < 1) throw std::invalid_argument("cbow dim must be >= 1");
  if (window < 1) throw std::invalid_argument("cbow window must be >= 1");
  if (negative < 0) throw std::invalid_argument("cbow negative must be >= 0");
  if (epochs < 1) throw std::invalid_argument("cbow epochs must be >= 1");
  if (workers < 1) throw std::invalid_argument("cbow workers must be >= 1");
  if (!(initial_lr > 0.0) || !(min_lr >= 0.0) || min_lr > initial_lr) {
    throw std::invalid_argument("cbow learning rates must satisfy 0 <= min_lr <= initial_lr, initial_lr > 0");
  }
}

EmbeddingMatrix::EmbeddingMatrix(std::vector<std::string> words, int dim)
    : words_(std::move(words)), dim_(dim),
      input_(words_.size() * static_cast<std::size_t>(dim), 0.0f),
      output_(words_.size() * static_cast<std::size_t>(dim), 0.0f) {
  if (dim < 1) throw std::invalid_argument("embedding dimension must be >= 1");
  for (std::size_t i = 0; i < words_.size(); ++i) {
    if (!index_.emplace(words_[i], i).second) {
      throw Error("duplicate word '" + words_[i] + "' in embedding vocabulary");
    }
  }
}

bool EmbeddingMatrix::contains(std::string_view word) const {
  return index_.find(std::string(word)) != index_.end();
}

std::size_t EmbeddingMatrix::row_of(std::string_view word) const {
  const auto it = index_.find(std::string(word));
  if (it == index_.end()) throw Error("word '" + std::string(word) + "' is not in the embedding vocabulary");
  return it->second;
}

std::ptrdiff_t EmbeddingMatrix::row_or_unk(std::string_view word) const {
  auto it = index_.find(std::string(word));
  if (it == index_.end()) it = index_.find(std::string(kUnkToken));
  return it == index_.end() ? -1 : static_cast<std::ptrdiff_t>(it->second);
}

bool EmbeddingMatrix::all_finite() const {
  const auto finite = [](double v) { return std::isfinite(v); };
  return std::all_of(input_.begin(), input_.end(), finite) &&
         std::all_of(output_.begin(), output_.end(), finite);
}

NoiseSampler::NoiseSampler(std::span<const std::int64_t> counts, double power) {
  cumulative_.reserve(counts.size());
  double acc = 0.0;
  for (const auto c : counts) {
    acc += c > 0 ? std::pow(static_cast<double>(c), power) : 0.0;
    cumulative_.push_back(acc);
  }
  if (!(acc > 0.0)) throw std::invalid_argument("noise distribution has no mass");
}

WordId NoiseSampler::sample(Rng& rng) const {
  const double u = uniform01(rng) * cumulative_.back();
  const auto it = std::upper_bound(cumulative_.begin(), cumulative_.end(), u);
  const auto idx = it == cumulative_.end() ? cumulative_.size() - 1
                                           : static_cast<std::size_t>(it - cumulative_.begin());
  return static_cast<WordId>(idx);
}

double NoiseSampler::probability(WordId id) const {
  const auto i = static_cast<std::size_t>(id);
  const double lo = i == 0 ? 0.0 : cumulative_[i - 1];
  return (cumulative_[i] - lo) / cumulative_.back();
}

double cbow_loss(std::span<const double> input, std::span<const double> output, int dim,
                 const CbowInstance& inst) {
  const std::size_t d = static_cast<std::size_t>(dim);
  std::vector<double> h(d, 0.0);
  for (const WordId c : inst.context) {
    for (std::size_t k = 0; k < d; ++k) h[k] += input[static_cast<std::size_t>(c) * d + k];
  }
  for (auto& x : h) x /= static_cast<double>(inst.context.size());
  const auto dot = [&](WordId w) {
    double f = 0.0;
    for (std::size_t k = 0; k < d; ++k) f += h[k] * output[static_cast<std::size_t>(w) * d + k];
    return f;
  };
  double loss = -std::log(sigmoid(dot(inst.target)));
  for (const WordId n : inst.negatives) {
    if (n == inst.target) continue;
    loss -= std::log(sigmoid(-dot(n)));
  }
  return loss;
}

void cbow_gradient(std::span<const double> input, std::span<const double> output, int dim,
                   const CbowInstance& inst, std::span<double> grad_input,
                   std::span<double> grad_output) {
  const std::size_t d = static_cast<std::size_t>(dim);
  const double inv_c = 1.0 / static_cast<double>(inst.context.size());
  std::vector<double> h(d, 0.0);
  for (const WordId c : inst.context) {
    for (std::size_t k = 0; k < d; ++k) h[k] += input[static_cast<std::size_t>(c) * d + k];
  }
  for (auto& x : h) x *= inv_c;
  std::vector<double> grad_h(d, 0.0);
  const auto term = [&](WordId w, double label) {
    const std::size_t base = static_cast<std::size_t>(w) * d;
    double f = 0.0;
    for (std::size_t k = 0; k < d; ++k) f += h[k] * output[base + k];
    // d/df of -log σ(f) is σ(f) - 1; of -log σ(-f) is σ(f).
    const double coef = sigmoid(f) - label;
    for (std::size_t k = 0; k < d; ++k) {
      grad_h[k] += coef * output[base + k];
      grad_output[base + k] += coef * h[k];
    }
  };
  term(inst.target, 1.0);
  for (const WordId n : inst.negatives) {
    if (n == inst.target) continue;
    term(n, 0.0);
  }
  for (const WordId c : inst.context) {
    for (std::size_t k = 0; k < d; ++k) grad_input[static_cast<std::size_t>(c) * d + k] += grad_h[k] * inv_c;
  }
}

namespace {

struct TrainPlan {
  const Corpus* corpus;
  const Curriculum* curriculum;
  const CbowConfig* cfg;
  const std::vector<double>* multipliers;  // per paragraph index; null means 1
};

/// Trains paragraphs order[begin, end) of every epoch. `processed` is the
/// shared token counter driving the learning-rate schedule.
void train_block(const TrainPlan& plan, EmbeddingMatrix& m, const NoiseSampler& noise, Rng& rng,
                 std::size_t begin, std::size_t end, std::atomic<std::int64_t>& processed,
                 std::int64_t total_work, TrainingTrace* trace) {
  const auto& cfg = *plan.cfg;
  const std::size_t d = static_cast<std::size_t>(cfg.dim);
  std::vector<double> hidden(d), error(d);
  std::vector<WordId> context;
  std::vector<WordId> negatives(static_cast<std::size_t>(cfg.negative));
  double* input = m.input_data().data();
  double* output = m.output_data().data();

  for (std::size_t r = begin; r < end; ++r) {
    const std::size_t pi = plan.curriculum->order[r];
    const auto& ids = plan.corpus->ids(pi);
    const double weight = plan.multipliers ? (*plan.multipliers)[pi] : 1.0;
    const std::size_t len = ids.size();
    for (std::size_t t = 0; t < len; ++t) {
      const std::int64_t done = processed.fetch_add(1, std::memory_order_relaxed);
      const double progress = static_cast<double>(done) / static_cast<double>(total_work);
      const double lr = cfg.initial_lr - (cfg.initial_lr - cfg.min_lr) * std::min(progress, 1.0);

      context.clear();
      const std::size_t lo = t >= static_cast<std::size_t>(cfg.window) ? t - cfg.window : 0;
      const std::size_t hi = std::min(len, t + static_cast<std::size_t>(cfg.window) + 1);
      for (std::size_t j = lo; j < hi; ++j) {
        if (j != t) context.push_back(ids[j]);
      }
      if (context.empty()) continue;
      for (auto& n : negatives) n = noise.sample(rng);

      const CbowInstance inst{context, ids[t], negatives};
      const double loss = cbow_update<double>(input, output, cfg.dim, inst, lr * weight, hidden.data(),
                                              error.data());
      if (trace != nullptr) trace->losses.push_back(loss);
    }
  }
}

EmbeddingMatrix train_impl(const Corpus& corpus, const Curriculum& curriculum, const CbowConfig& cfg,
                           const std::vector<double>* multipliers, TrainingTrace* trace) {
  cfg.validate();
  if (!corpus.has_vocabulary() || corpus.vocabulary().size() == 0) {
    throw std::invalid_argument("cannot train embeddings without a vocabulary");
  }
  if (curriculum.size() != corpus.size() || !curriculum.is_permutation()) {
    throw std::invalid_argument("curriculum does not permute the corpus paragraphs");
  }
  const auto& vocab = corpus.vocabulary();
  if (vocab.total_token_count() == 0) throw std::invalid_argument("cannot train embeddings on an empty vocabulary");

  EmbeddingMatrix m(vocab.words(), cfg.dim);
  Rng rng(cfg.seed);
  const double scale = 0.5 / static_cast<double>(cfg.dim);
  for (auto& x : m.input_data()) x = (uniform01(rng) * 2.0 - 1.0) * scale;

  const NoiseSampler noise(vocab.counts());
  const std::int64_t total_work = std::max<std::int64_t>(1, corpus.token_count() * cfg.epochs);
  std::atomic<std::int64_t> processed{0};
  const TrainPlan plan{&corpus, &curriculum, &cfg, multipliers};
  const std::size_t n = corpus.size();

  for (int epoch = 0; epoch < cfg.epochs; ++epoch) {
    if (cfg.workers == 1) {
      train_block(plan, m, noise, rng, 0, n, processed, total_work, trace);
      continue;
    }
#ifdef _OPENMP
#pragma omp parallel num_threads(cfg.workers)
    {
      const auto tid = static_cast<std::size_t>(omp_get_thread_num());
      const auto nt = static_cast<std::size_t>(omp_get_num_threads());
      Rng local(mix_seed(cfg.seed, static_cast<std::uint64_t>(epoch) * 1024 + tid + 1));
      train_block(plan, m, noise, local, n * tid / nt, n * (tid + 1) / nt, processed, total_work, nullptr);
    }
#else
    train_block(plan, m, noise, rng, 0, n, processed, total_work, trace);
#endif
  }
  return m;
}

}  // namespace

EmbeddingMatrix train_cbow(const Corpus& corpus, const Curriculum& curriculum, const CbowConfig& cfg,
                           TrainingTrace* trace) {
  return train_impl(corpus, curriculum, cfg, nullptr, trace);
}

EmbeddingMatrix train_cbow_weighted(const Corpus& corpus, const Curriculum& curriculum, double lambda,
                                    const CbowConfig& cfg, TrainingTrace* trace) {
  if (!(lambda >= 0.0)) throw std::invalid_argument("lambda must be >= 0");
  if (curriculum.scores.size() != corpus.size()) {
    throw std::invalid_argument("weighted training needs one curriculum score per paragraph");
  }
  std::vector<double> multipliers(corpus.size());
  for (std::size_t i = 0; i < corpus.size(); ++i) {
    multipliers[i] = curriculum_multiplier(curriculum.scores[i], lambda);
  }
  return train_impl(corpus, curriculum, cfg, &multipliers, trace);
}

void save_embeddings(const EmbeddingMatrix& m, const std::filesystem::path& path) {
  std::FILE* f = std::fopen(path.string().c_str(), "w");
  if (f == nullptr) throw Error("cannot write embedding file " + path.string());
  std::fprintf(f, "%zu %d\n", m.size(), m.dim());
  for (std::size_t i = 0; i < m.size(); ++i) {
    std::fputs(m.words()[i].c_str(), f);
    for (const double v : m.input(i)) std::fprintf(f, " %.6f", v);
    std::fputc('\n', f);
  }
  if (std::fclose(f) != 0) throw Error("error while writing embedding file " + path.string());
}

EmbeddingMatrix load_embeddings(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot read embedding file " + path.string());
  std::string line;
  if (!std::getline(in, line)) throw Error(path.string() + ": empty file, expected header '<|V|> <dim>'");
  const auto header = split_whitespace(line);
  if (header.size() != 2) throw Error(path.string() + ": malformed header, expected '<|V|> <dim>'");
  const auto rows = parse_int(header[0], path.string() + ": header |V|");
  const auto dim = parse_int(header[1], path.string() + ": header dim");
  if (rows < 0 || dim < 1) throw Error(path.string() + ": malformed header, expected '<|V|> <dim>' with dim >= 1");

  std::vector<std::string> words;
  std::vector<double> values;
  words.reserve(static_cast<std::size_t>(rows));
  values.reserve(static_cast<std::size_t>(rows * dim));
  std::size_t lineno = 1;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    const auto fields = split_whitespace(line);
    const std::string ctx = path.string() + ":" + std::to_string(lineno);
    if (static_cast<long long>(fields.size()) != dim + 1) {
      throw Error(ctx + ": expected a word and " + std::to_string(dim) + " values");
    }
    words.push_back(fields[0]);
    for (std::size_t k = 1; k < fields.size(); ++k) {
      values.push_back(parse_double(fields[k], ctx));
    }
  }
  if (static_cast<long long>(words.size()) != rows) {
    throw Error(path.string() + ": header declares " + std::to_string(rows) + " vectors of dim " +
                std::to_string(dim) + " but the file holds " + std::to_string(words.size()));
  }
  EmbeddingMatrix m(std::move(words), static_cast<int>(dim));
  m.input_data() = std::move(values);
  return m;
}

double cosine(std::span<const double> a, std::span<const double> b) {
  double ab = 0.0, aa = 0.0, bb = 0.0;
  for (std::size_t k = 0; k < a.size(); ++k) {
    ab += a[k] * b[k];
    aa += a[k] * a[k];
    bb += b[k] * b[k];
  }
  if (aa == 0.0 || bb == 0.0) return 0.0;
  return std::clamp(ab / std::sqrt(aa * bb), -1.0, 1.0);
}

double cosine(const EmbeddingMatrix& m, std::string_view a, std::string_view b) {
  const auto ra = m.row_of(a);
  const auto rb = m.row_of(b);
  if (ra == rb) return 1.0;
  return cosine(m.input(ra), m.input(rb));
}

}  // namespace curricula
