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


#include "curricula/analysis.hpp"

#include <algorithm>
#include <fstream>
#include <numeric>
#include <stdexcept>
#include <unordered_set>

#include "curricula/common.hpp"
#include "curricula/stats.hpp"

namespace curricula {

std::vector<std::size_t> deduplicated_indices(const Corpus& corpus) {
  std::unordered_set<std::string_view> seen;
  std::vector<std::size_t> kept;
  for (std::size_t i = 0; i < corpus.size(); ++i) {
    if (seen.insert(corpus[i].raw).second) kept.push_back(i);
  }
  return kept;
}

std::vector<double> rank_series(const Curriculum& c, const std::vector<std::size_t>& kept) {
  const auto ranks = c.ranks();
  std::vector<std::size_t> by_rank(kept.size());
  std::iota(by_rank.begin(), by_rank.end(), 0);
  std::sort(by_rank.begin(), by_rank.end(),
            [&](std::size_t a, std::size_t b) { return ranks[kept[a]] < ranks[kept[b]]; });
  std::vector<double> out(kept.size());
  for (std::size_t r = 0; r < by_rank.size(); ++r) out[by_rank[r]] = static_cast<double>(r);
  return out;
}

double spearman(const Curriculum& a, const Curriculum& b, const Corpus& corpus) {
  if (a.size() != corpus.size() || b.size() != corpus.size() || !a.is_permutation() || !b.is_permutation()) {
    throw std::invalid_argument("curricula must both permute the corpus paragraphs");
  }
  const auto kept = deduplicated_indices(corpus);
  if (kept.size() < 3) {
    throw std::invalid_argument("spearman needs at least 3 distinct paragraphs, got " +
                                std::to_string(kept.size()));
  }
  return spearman_rho(rank_series(a, kept), rank_series(b, kept));
}

Corpus select_top_tokens(const Curriculum& c, const Corpus& corpus, double fraction) {
  if (!(fraction > 0.0 && fraction <= 1.0)) throw std::invalid_argument("fraction must lie in (0, 1]");
  if (c.size() != corpus.size() || !c.is_permutation()) {
    throw std::invalid_argument("curriculum does not permute the corpus paragraphs");
  }
  const double budget = fraction * static_cast<double>(corpus.token_count());
  std::vector<Paragraph> out;
  std::int64_t taken = 0;
  for (const auto i : c.order) {
    if (static_cast<double>(taken) >= budget) break;
    out.push_back(corpus[i]);
    taken += static_cast<std::int64_t>(corpus[i].tokens.size());
  }
  Corpus reduced(std::move(out));
  if (corpus.has_vocabulary()) reduced.attach_vocabulary(corpus.shared_vocabulary());
  return reduced;
}

void CorrelationReport::save_tsv(const std::filesystem::path& path) const {
  std::ofstream out(path);
  if (!out) throw Error("cannot write " + path.string());
  out << "curriculum";
  for (const auto& n : names) out << '\t' << n;
  out << '\n';
  for (std::size_t i = 0; i < names.size(); ++i) {
    out << names[i];
    for (std::size_t j = 0; j < names.size(); ++j) out << '\t' << format_g9(rho[i][j]);
    out << '\n';
  }
  if (!out) throw Error("failed writing " + path.string());
}

CorrelationReport correlation_report(const std::vector<std::pair<std::string, Curriculum>>& curricula,
                                     const Corpus& corpus) {
  if (curricula.size() < 2) throw std::invalid_argument("correlation report needs at least two curricula");
  const auto kept = deduplicated_indices(corpus);
  if (kept.size() < 3) throw std::invalid_argument("spearman needs at least 3 distinct paragraphs");
  std::vector<std::vector<double>> series;
  CorrelationReport r;
  for (const auto& [name, c] : curricula) {
    if (c.size() != corpus.size() || !c.is_permutation()) {
      throw std::invalid_argument("curriculum '" + name + "' does not permute the corpus paragraphs");
    }
    r.names.push_back(name);
    series.push_back(rank_series(c, kept));
  }
  const std::size_t k = curricula.size();
  r.rho.assign(k, std::vector<double>(k, 1.0));
  for (std::size_t i = 0; i < k; ++i) {
    for (std::size_t j = i + 1; j < k; ++j) r.rho[i][j] = r.rho[j][i] = spearman_rho(series[i], series[j]);
  }
  return r;
}

}  // namespace curricula
