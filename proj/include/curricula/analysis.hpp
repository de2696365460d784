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


#ifndef CURRICULA_ANALYSIS_HPP_
#define CURRICULA_ANALYSIS_HPP_

#include <filesystem>
#include <string>
#include <vector>

#include "curricula/corpus.hpp"
#include "curricula/curriculum.hpp"

namespace curricula {

/// Indices of the first occurrence of every distinct raw line.
std::vector<std::size_t> deduplicated_indices(const Corpus& corpus);

/// Rank (0-based) of each deduplicated paragraph under `c`, re-ranked so the
/// result is a permutation of [0, m).
std::vector<double> rank_series(const Curriculum& c, const std::vector<std::size_t>& kept);

/// Spearman correlation of two curricula over deduplicated paragraphs.
/// Throws std::invalid_argument when the curricula do not match the corpus or
/// fewer than 3 distinct paragraphs remain.
double spearman(const Curriculum& a, const Curriculum& b, const Corpus& corpus);

/// Prefix of the curriculum holding at least fraction * tokens: paragraphs are
/// taken while the running count before them is below the budget, so the one
/// crossing it is kept. Throws std::invalid_argument unless 0 < fraction <= 1.
Corpus select_top_tokens(const Curriculum& c, const Corpus& corpus, double fraction = 0.10);

struct CorrelationReport {
  std::vector<std::string> names;
  std::vector<std::vector<double>> rho;  // symmetric, unit diagonal

  /// TSV with names as header row and first column, %.9g values.
  void save_tsv(const std::filesystem::path& path) const;
};

/// Throws std::invalid_argument for fewer than two curricula.
CorrelationReport correlation_report(const std::vector<std::pair<std::string, Curriculum>>& curricula,
                                     const Corpus& corpus);

}  // namespace curricula

#endif  // CURRICULA_ANALYSIS_HPP_
