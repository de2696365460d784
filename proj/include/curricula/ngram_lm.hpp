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

#ifndef CURRICULA_NGRAM_LM_HPP_
#define CURRICULA_NGRAM_LM_HPP_

#include <cstdint>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

#include "curricula/corpus.hpp"

namespace curricula {

inline constexpr int kMaxNgramOrder = 5;

/// Add-k smoothed n-gram model over symbols [0, vocab_size):
///   p(w | h) = (c(h, w) + k) / (c(h) + k * vocab_size)
/// with h the previous order-1 symbols. Sequences start with order-1 copies of
/// a begin marker that is never predicted.
class NgramLm {
 public:
  NgramLm() = default;

  /// Throws std::invalid_argument unless 1 <= order <= kMaxNgramOrder, k > 0
  /// and vocab_size >= 1.
  static NgramLm train(const std::vector<std::vector<std::int32_t>>& sequences, int vocab_size, int order,
                       double k);

  int order() const { return order_; }
  int vocab_size() const { return vocab_size_; }
  double k() const { return k_; }
  std::int32_t begin_marker() const { return vocab_size_; }

  /// `history` holds exactly order-1 symbols (begin markers allowed).
  double probability(std::span<const std::int32_t> history, std::int32_t symbol) const;

  /// Sum of natural-log probabilities of every symbol in `sequence`.
  double log_probability(std::span<const std::int32_t> sequence) const;
  /// log_probability / length; 0 for an empty sequence.
  double mean_log_probability(std::span<const std::int32_t> sequence) const;

 private:
  static std::string key(std::span<const std::int32_t> symbols);

  int order_ = 0;
  int vocab_size_ = 0;
  double k_ = 0.0;
  std::unordered_map<std::string, std::int64_t> ngram_counts_;
  std::unordered_map<std::string, std::int64_t> context_counts_;
};

/// Word model over vocabulary ids, one sequence per paragraph.
NgramLm train_ngram_lm(const Corpus& corpus, int order, double k);

/// Byte-level model over paragraphs' tokens joined by single spaces.
NgramLm train_char_lm(const Corpus& corpus, int order, double k);
std::vector<std::int32_t> char_symbols(const std::vector<std::string>& tokens);

}  // namespace curricula

#endif  // CURRICULA_NGRAM_LM_HPP_
