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

#include "curricula/feature_matrix.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <set>
#include <stdexcept>

#include "curricula/common.hpp"

namespace curricula {
namespace {

struct FeatureInfo {
  const char* name;
  FeatureGroup group;
  bool needs_parse;
};

constexpr FeatureInfo kFeatures[] = {
    {"num_types", FeatureGroup::kDiversity, false},
    {"type_token_ratio", FeatureGroup::kDiversity, false},
    {"entropy", FeatureGroup::kDiversity, false},
    {"simpson_index", FeatureGroup::kDiversity, false},
    {"quadratic_entropy", FeatureGroup::kDiversity, false},
    {"word_lm_score", FeatureGroup::kSimplicity, false},
    {"char_lm_score", FeatureGroup::kSimplicity, false},
    {"avg_sentence_length", FeatureGroup::kSimplicity, false},
    {"verb_token_ratio", FeatureGroup::kSimplicity, true},
    {"noun_token_ratio", FeatureGroup::kSimplicity, true},
    {"parse_tree_depth", FeatureGroup::kSimplicity, true},
    {"num_noun_phrases", FeatureGroup::kSimplicity, true},
    {"num_verb_phrases", FeatureGroup::kSimplicity, true},
    {"num_prep_phrases", FeatureGroup::kSimplicity, true},
    {"age_of_acquisition", FeatureGroup::kPrototypicality, false},
    {"concreteness", FeatureGroup::kPrototypicality, false},
    {"imageability", FeatureGroup::kPrototypicality, false},
    {"conventionalization", FeatureGroup::kPrototypicality, false},
    {"num_syllables", FeatureGroup::kPrototypicality, false},
    {"supersense_rel_freq", FeatureGroup::kPrototypicality, false},
    {"synset_rel_freq", FeatureGroup::kPrototypicality, false},
};

const FeatureInfo& info(std::string_view name) {
  for (const auto& f : kFeatures) {
    if (name == f.name) return f;
  }
  throw std::invalid_argument("unknown feature '" + std::string(name) + "'");
}

}  // namespace

std::string_view group_name(FeatureGroup group) {
  switch (group) {
    case FeatureGroup::kDiversity:
      return "diversity";
    case FeatureGroup::kSimplicity:
      return "simplicity";
    case FeatureGroup::kPrototypicality:
      return "prototypicality";
  }
  return "?";
}

FeatureGroup parse_group(std::string_view name) {
  if (name == "diversity") return FeatureGroup::kDiversity;
  if (name == "simplicity") return FeatureGroup::kSimplicity;
  if (name == "prototypicality") return FeatureGroup::kPrototypicality;
  throw std::invalid_argument("unknown feature group '" + std::string(name) +
                              "' (expected diversity, simplicity or prototypicality)");
}

const std::vector<std::string>& all_feature_names() {
  static const std::vector<std::string> names = [] {
    std::vector<std::string> v;
    for (const auto& f : kFeatures) v.emplace_back(f.name);
    return v;
  }();
  return names;
}

FeatureGroup feature_group(std::string_view feature) { return info(feature).group; }

bool is_parse_feature(std::string_view feature) { return info(feature).needs_parse; }

FeatureSpec::FeatureSpec(std::vector<std::string> names) : names_(std::move(names)) {
  std::set<std::string_view> seen;
  for (const auto& n : names_) {
    info(n);
    if (!seen.insert(n).second) throw std::invalid_argument("duplicate feature '" + n + "'");
  }
}

FeatureSpec FeatureSpec::all() { return FeatureSpec(all_feature_names()); }

FeatureSpec FeatureSpec::for_groups(const std::vector<FeatureGroup>& groups) {
  std::vector<std::string> names;
  for (const auto& f : kFeatures) {
    if (std::find(groups.begin(), groups.end(), f.group) != groups.end()) names.emplace_back(f.name);
  }
  return FeatureSpec(std::move(names));
}

bool FeatureSpec::contains(std::string_view name) const {
  return std::find(names_.begin(), names_.end(), name) != names_.end();
}

std::size_t FeatureSpec::position(std::string_view name) const {
  const auto it = std::find(names_.begin(), names_.end(), name);
  if (it == names_.end()) throw std::invalid_argument("feature '" + std::string(name) + "' not enabled");
  return static_cast<std::size_t>(it - names_.begin());
}

FeatureSpec FeatureSpec::only(FeatureGroup group) const {
  std::vector<std::string> names;
  for (const auto& n : names_) {
    if (feature_group(n) == group) names.push_back(n);
  }
  return FeatureSpec(std::move(names));
}

FeatureSpec FeatureSpec::without_parse_features() const {
  std::vector<std::string> names;
  for (const auto& n : names_) {
    if (!is_parse_feature(n)) names.push_back(n);
  }
  return FeatureSpec(std::move(names));
}

bool FeatureSpec::has_parse_features() const {
  return std::any_of(names_.begin(), names_.end(), [](const auto& n) { return is_parse_feature(n); });
}

FeatureMatrix::FeatureMatrix(FeatureSpec spec, std::size_t columns, bool normalized)
    : spec_(std::move(spec)), cols_(columns), normalized_(normalized),
      values_(spec_.size() * columns, 0.0) {}

FeatureMatrix FeatureMatrix::select(const FeatureSpec& spec) const {
  FeatureMatrix out(spec, cols_, normalized_);
  for (std::size_t r = 0; r < spec.size(); ++r) {
    const auto src = row(spec_.position(spec.name(r)));
    std::copy(src.begin(), src.end(), out.row(r).begin());
  }
  return out;
}

FeatureMatrix FeatureMatrix::permute_columns(std::span<const std::size_t> order) const {
  if (order.size() != cols_) throw std::invalid_argument("permutation length mismatch");
  FeatureMatrix out(spec_, cols_, normalized_);
  for (std::size_t r = 0; r < rows(); ++r) {
    for (std::size_t j = 0; j < cols_; ++j) out.at(r, j) = at(r, order[j]);
  }
  return out;
}

bool FeatureMatrix::all_finite() const {
  return std::all_of(values_.begin(), values_.end(), [](double v) { return std::isfinite(v); });
}

void FeatureMatrix::save_tsv(const std::filesystem::path& path) const {
  std::ofstream out(path);
  if (!out) throw Error("cannot write feature file " + path.string());
  for (std::size_t r = 0; r < rows(); ++r) out << (r ? "\t" : "") << spec_.name(r);
  out << '\n';
  for (std::size_t j = 0; j < cols_; ++j) {
    for (std::size_t r = 0; r < rows(); ++r) out << (r ? "\t" : "") << format_g9(at(r, j));
    out << '\n';
  }
}

FeatureMatrix FeatureMatrix::load_tsv(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot read feature file " + path.string());
  std::string line;
  if (!std::getline(in, line)) throw Error(path.string() + ": missing header row");
  FeatureSpec spec;
  try {
    spec = FeatureSpec(split(line, '\t'));
  } catch (const std::invalid_argument& e) {
    throw Error(path.string() + ": bad header: " + e.what());
  }
  std::vector<std::vector<double>> columns;
  std::size_t lineno = 1;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    const auto fields = split(line, '\t');
    const std::string ctx = path.string() + ":" + std::to_string(lineno);
    if (fields.size() != spec.size()) {
      throw Error(ctx + ": expected " + std::to_string(spec.size()) + " fields, got " +
                  std::to_string(fields.size()));
    }
    std::vector<double> col;
    for (const auto& f : fields) col.push_back(parse_double(f, ctx));
    columns.push_back(std::move(col));
  }
  FeatureMatrix m(spec, columns.size());
  for (std::size_t j = 0; j < columns.size(); ++j) {
    for (std::size_t r = 0; r < spec.size(); ++r) m.at(r, j) = columns[j][r];
  }
  return m;
}

}  // namespace curricula
