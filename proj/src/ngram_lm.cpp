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

#include "curricula/ngram_lm.hpp"

#include <cmath>
#include <cstring>
#include <stdexcept>

namespace curricula {

std::string NgramLm::key(std::span<const std::int32_t> symbols) {
  std::string k(symbols.size() * sizeof(std::int32_t), '\0');
  if (!symbols.empty()) std::memcpy(k.data(), symbols.data(), k.size());
  return k;
}

NgramLm NgramLm::train(const std::vector<std::vector<std::int32_t>>& sequences, int vocab_size, int order,
                       double k) {
  if (order < 1) throw std::invalid_argument("n-gram order must be >= 1");
  if (order > kMaxNgramOrder) {
    throw std::invalid_argument("n-gram order " + std::to_string(order) + " exceeds the maximum of " +
                                std::to_string(kMaxNgramOrder));
  }
  if (!(k > 0.0)) throw std::invalid_argument("add-k smoothing constant must be > 0");
  if (vocab_size < 1) throw std::invalid_argument("n-gram vocabulary must be non-empty");

  NgramLm lm;
  lm.order_ = order;
  lm.vocab_size_ = vocab_size;
  lm.k_ = k;
  const std::size_t h = static_cast<std::size_t>(order - 1);
  std::vector<std::int32_t> padded;
  for (const auto& seq : sequences) {
    padded.assign(h, lm.begin_marker());
    padded.insert(padded.end(), seq.begin(), seq.end());
    for (std::size_t t = h; t < padded.size(); ++t) {
      const auto sym = padded[t];
      if (sym < 0 || sym >= vocab_size) throw std::invalid_argument("n-gram symbol out of range");
      const std::span<const std::int32_t> gram(padded.data() + t - h, h + 1);
      ++lm.ngram_counts_[key(gram)];
      ++lm.context_counts_[key(gram.first(h))];
    }
  }
  return lm;
}

double NgramLm::probability(std::span<const std::int32_t> history, std::int32_t symbol) const {
  if (history.size() != static_cast<std::size_t>(order_ - 1)) {
    throw std::invalid_argument("n-gram history must hold order-1 symbols");
  }
  std::vector<std::int32_t> gram(history.begin(), history.end());
  gram.push_back(symbol);
  const auto c_ctx = context_counts_.find(key(history));
  const auto c_gram = ngram_counts_.find(key(gram));
  const double num = (c_gram == ngram_counts_.end() ? 0.0 : static_cast<double>(c_gram->second)) + k_;
  const double den = (c_ctx == context_counts_.end() ? 0.0 : static_cast<double>(c_ctx->second)) +
                     k_ * static_cast<double>(vocab_size_);
  return num / den;
}

double NgramLm::log_probability(std::span<const std::int32_t> sequence) const {
  const std::size_t h = static_cast<std::size_t>(order_ - 1);
  std::vector<std::int32_t> padded(h, begin_marker());
  padded.insert(padded.end(), sequence.begin(), sequence.end());
  double total = 0.0;
  for (std::size_t t = h; t < padded.size(); ++t) {
    total += std::log(probability(std::span<const std::int32_t>(padded.data() + t - h, h), padded[t]));
  }
  return total;
}

double NgramLm::mean_log_probability(std::span<const std::int32_t> sequence) const {
  if (sequence.empty()) return 0.0;
  return log_probability(sequence) / static_cast<double>(sequence.size());
}

NgramLm train_ngram_lm(const Corpus& corpus, int order, double k) {
  std::vector<std::vector<std::int32_t>> seqs;
  seqs.reserve(corpus.size());
  for (std::size_t i = 0; i < corpus.size(); ++i) seqs.push_back(corpus.ids(i));
  return NgramLm::train(seqs, static_cast<int>(corpus.vocabulary().size()), order, k);
}

std::vector<std::int32_t> char_symbols(const std::vector<std::string>& tokens) {
  std::vector<std::int32_t> out;
  for (std::size_t i = 0; i < tokens.size(); ++i) {
    if (i > 0) out.push_back(' ');
    for (const char c : tokens[i]) out.push_back(static_cast<unsigned char>(c));
  }
  return out;
}

NgramLm train_char_lm(const Corpus& corpus, int order, double k) {
  std::vector<std::vector<std::int32_t>> seqs;
  seqs.reserve(corpus.size());
  for (const auto& p : corpus.paragraphs()) seqs.push_back(char_symbols(p.tokens));
  return NgramLm::train(seqs, 256, order, k);
}

}  // namespace curricula
