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

#ifndef CURRICULA_FEATURE_MATRIX_HPP_
#define CURRICULA_FEATURE_MATRIX_HPP_

#include <filesystem>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace curricula {

enum class FeatureGroup { kDiversity, kSimplicity, kPrototypicality };

std::string_view group_name(FeatureGroup group);
FeatureGroup parse_group(std::string_view name);

/// Canonical feature names, grouped 5 / 9 / 7.
const std::vector<std::string>& all_feature_names();
FeatureGroup feature_group(std::string_view feature);
/// Features that need parse annotations.
bool is_parse_feature(std::string_view feature);

/// Ordered list of enabled features.
class FeatureSpec {
 public:
  FeatureSpec() = default;
  /// Throws std::invalid_argument on unknown or duplicate names.
  explicit FeatureSpec(std::vector<std::string> names);

  static FeatureSpec all();
  static FeatureSpec for_groups(const std::vector<FeatureGroup>& groups);

  std::size_t size() const { return names_.size(); }
  const std::vector<std::string>& names() const { return names_; }
  const std::string& name(std::size_t i) const { return names_[i]; }
  bool contains(std::string_view name) const;
  std::size_t position(std::string_view name) const;

  FeatureSpec only(FeatureGroup group) const;
  FeatureSpec without_parse_features() const;
  bool has_parse_features() const;

  bool operator==(const FeatureSpec&) const = default;

 private:
  std::vector<std::string> names_;
};

/// ℓ×n values, one row per feature and one column per paragraph.
class FeatureMatrix {
 public:
  FeatureMatrix() = default;
  FeatureMatrix(FeatureSpec spec, std::size_t columns, bool normalized = false);

  const FeatureSpec& spec() const { return spec_; }
  std::size_t rows() const { return spec_.size(); }
  std::size_t cols() const { return cols_; }
  bool normalized() const { return normalized_; }
  void set_normalized(bool v) { normalized_ = v; }

  double& at(std::size_t feature, std::size_t paragraph) { return values_[feature * cols_ + paragraph]; }
  double at(std::size_t feature, std::size_t paragraph) const {
    return values_[feature * cols_ + paragraph];
  }
  std::span<double> row(std::size_t feature) { return {values_.data() + feature * cols_, cols_}; }
  std::span<const double> row(std::size_t feature) const {
    return {values_.data() + feature * cols_, cols_};
  }
  const std::vector<double>& values() const { return values_; }

  /// Keeps only the rows named in `spec`, in its order.
  FeatureMatrix select(const FeatureSpec& spec) const;
  /// Column permutation: result column j = this column order[j].
  FeatureMatrix permute_columns(std::span<const std::size_t> order) const;

  bool all_finite() const;

  /// TSV: header of feature names, one row per paragraph, %.9g.
  void save_tsv(const std::filesystem::path& path) const;
  static FeatureMatrix load_tsv(const std::filesystem::path& path);

  bool operator==(const FeatureMatrix&) const = default;

 private:
  FeatureSpec spec_;
  std::size_t cols_ = 0;
  bool normalized_ = false;
  std::vector<double> values_;
};

}  // namespace curricula

#endif  // CURRICULA_FEATURE_MATRIX_HPP_
