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

// Linear paragraph scoring and the orderings derived from it.

#ifndef CURRICULA_CURRICULUM_HPP_
#define CURRICULA_CURRICULUM_HPP_

#include <cstdint>
#include <filesystem>
#include <span>
#include <string>
#include <vector>

#include "curricula/corpus.hpp"
#include "curricula/feature_matrix.hpp"

namespace curricula {

/// Feature weights aligned to a FeatureSpec.
class WeightVector {
 public:
  WeightVector() = default;
  /// Throws std::invalid_argument on non-finite entries.
  explicit WeightVector(std::vector<double> values);
  static WeightVector zeros(std::size_t n) { return WeightVector(std::vector<double>(n, 0.0)); }

  std::size_t size() const { return values_.size(); }
  double operator[](std::size_t i) const { return values_[i]; }
  const std::vector<double>& values() const { return values_; }
  WeightVector scaled(double c) const;

  bool operator==(const WeightVector&) const = default;

 private:
  std::vector<double> values_;
};

enum class Provenance { kOptimized, kShuffled, kLengthSorted, kCoherent };

enum class LengthDirection { kLongToShort, kShortToLong };

struct Curriculum {
  std::vector<std::size_t> order;  // rank -> paragraph index
  std::vector<double> scores;      // in original paragraph index order
  Provenance provenance = Provenance::kOptimized;
  std::string parameters;          // free-form "key=value ..." annotations

  std::size_t size() const { return order.size(); }
  /// paragraph index -> rank
  std::vector<std::size_t> ranks() const;
  bool is_permutation() const;

  /// Header `#provenance=<p> <parameters>` then `rank<TAB>index<TAB>score`.
  void save(const std::filesystem::path& path) const;
  static Curriculum load(const std::filesystem::path& path);

  bool operator==(const Curriculum&) const = default;
};

std::string provenance_name(Provenance p);
Provenance parse_provenance(std::string_view name);

/// Per-row mean 0 and population standard deviation 1; constant rows become 0.
/// Throws std::invalid_argument if fewer than two columns.
FeatureMatrix znormalize(const FeatureMatrix& m);

/// z-scores of a single series; n < 2 or zero variance yields zeros.
std::vector<double> zscores(std::span<const double> values);

/// score_j = sum_f w_f * m(f, j). Requires a normalized matrix.
std::vector<double> score_paragraphs(const WeightVector& w, const FeatureMatrix& m);

/// Descending score; ties keep ascending original index.
Curriculum sort_curriculum(std::vector<double> scores, Provenance provenance = Provenance::kOptimized,
                           std::string parameters = {});

/// Sorts by w^T phi and stores the z-scored scores (the order comes from the
/// raw scores, so z-scoring cannot introduce ties).
Curriculum curriculum_from_weights(const WeightVector& w, const FeatureMatrix& normalized,
                                   std::string parameters = {});

Curriculum baseline_shuffled(std::size_t n, std::uint64_t seed);
Curriculum baseline_length_sorted(const Corpus& corpus, LengthDirection direction);
Curriculum baseline_coherent(std::size_t n);

/// Paragraphs reordered by `c`; original indices are preserved.
Corpus apply_curriculum(const Corpus& corpus, const Curriculum& c);

}  // namespace curricula

#endif  // CURRICULA_CURRICULUM_HPP_
