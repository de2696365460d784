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


#ifndef CURRICULA_STATS_HPP_
#define CURRICULA_STATS_HPP_

#include <span>
#include <vector>

namespace curricula {

/// 1-based ranks, ties sharing the average of their positions.
std::vector<double> average_ranks(std::span<const double> values);

/// Pearson correlation; 0 when either side is constant.
double pearson(std::span<const double> a, std::span<const double> b);

/// Pearson correlation of average ranks. Throws std::invalid_argument on
/// length mismatch or fewer than two pairs.
double spearman_rho(std::span<const double> a, std::span<const double> b);

double median(std::vector<double> values);

}  // namespace curricula

#endif  // CURRICULA_STATS_HPP_
