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

#include "curricula/curriculum.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numeric>
#include <stdexcept>

#include "curricula/common.hpp"

namespace curricula {

WeightVector::WeightVector(std::vector<double> values) : values_(std::move(values)) {
  for (const double v : values_) {
    if (!std::isfinite(v)) throw std::invalid_argument("weight vector has a non-finite entry");
  }
}

WeightVector WeightVector::scaled(double c) const {
  std::vector<double> v = values_;
  for (auto& x : v) x *= c;
  return WeightVector(std::move(v));
}

std::vector<std::size_t> Curriculum::ranks() const {
  std::vector<std::size_t> r(order.size());
  for (std::size_t rank = 0; rank < order.size(); ++rank) r.at(order[rank]) = rank;
  return r;
}

bool Curriculum::is_permutation() const {
  std::vector<bool> seen(order.size(), false);
  for (const auto i : order) {
    if (i >= order.size() || seen[i]) return false;
    seen[i] = true;
  }
  return true;
}

std::string provenance_name(Provenance p) {
  switch (p) {
    case Provenance::kOptimized:
      return "optimized";
    case Provenance::kShuffled:
      return "shuffled";
    case Provenance::kLengthSorted:
      return "length_sorted";
    case Provenance::kCoherent:
      return "coherent";
  }
  return "?";
}

Provenance parse_provenance(std::string_view name) {
  if (name == "optimized") return Provenance::kOptimized;
  if (name == "shuffled") return Provenance::kShuffled;
  if (name == "length_sorted") return Provenance::kLengthSorted;
  if (name == "coherent") return Provenance::kCoherent;
  throw Error("unknown curriculum provenance '" + std::string(name) + "'");
}

void Curriculum::save(const std::filesystem::path& path) const {
  std::ofstream out(path);
  if (!out) throw Error("cannot write curriculum file " + path.string());
  out << "#provenance=" << provenance_name(provenance);
  if (!parameters.empty()) out << ' ' << parameters;
  out << '\n';
  for (std::size_t rank = 0; rank < order.size(); ++rank) {
    out << rank << '\t' << order[rank] << '\t' << format_g9(scores.at(order[rank])) << '\n';
  }
}

Curriculum Curriculum::load(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot read curriculum file " + path.string());
  std::string line;
  if (!std::getline(in, line) || line.rfind("#provenance=", 0) != 0) {
    throw Error(path.string() + ": missing '#provenance=' header");
  }
  Curriculum c;
  const std::string header = line.substr(12);
  const auto space = header.find(' ');
  c.provenance = parse_provenance(header.substr(0, space));
  if (space != std::string::npos) c.parameters = header.substr(space + 1);

  std::vector<std::pair<std::size_t, double>> rows;
  std::size_t lineno = 1;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    const std::string ctx = path.string() + ":" + std::to_string(lineno);
    const auto fields = split(line, '\t');
    if (fields.size() != 3) throw Error(ctx + ": expected 'rank<TAB>index<TAB>score'");
    const auto rank = parse_int(fields[0], ctx);
    if (rank != static_cast<long long>(rows.size())) throw Error(ctx + ": ranks must be consecutive");
    const auto index = parse_int(fields[1], ctx);
    if (index < 0) throw Error(ctx + ": negative paragraph index");
    rows.emplace_back(static_cast<std::size_t>(index), parse_double(fields[2], ctx));
  }
  c.order.resize(rows.size());
  c.scores.assign(rows.size(), 0.0);
  for (std::size_t r = 0; r < rows.size(); ++r) {
    c.order[r] = rows[r].first;
    if (rows[r].first >= rows.size()) throw Error(path.string() + ": paragraph index out of range");
    c.scores[rows[r].first] = rows[r].second;
  }
  if (!c.is_permutation()) throw Error(path.string() + ": order is not a permutation");
  return c;
}

std::vector<double> zscores(std::span<const double> values) {
  const std::size_t n = values.size();
  std::vector<double> out(n, 0.0);
  if (n < 2) return out;
  double mean = 0.0;
  for (const double v : values) mean += v;
  mean /= static_cast<double>(n);
  double var = 0.0;
  for (const double v : values) var += (v - mean) * (v - mean);
  var /= static_cast<double>(n);
  const double sd = std::sqrt(var);
  double max_abs = 0.0;
  for (const double v : values) max_abs = std::max(max_abs, std::abs(v));
  // Rows whose spread is pure rounding noise are treated as constant.
  if (!(sd > 1e-12 * max_abs)) return out;
  for (std::size_t j = 0; j < n; ++j) out[j] = (values[j] - mean) / sd;
  return out;
}

FeatureMatrix znormalize(const FeatureMatrix& m) {
  if (m.cols() < 2) throw std::invalid_argument("z-normalization needs at least two paragraphs");
  FeatureMatrix out(m.spec(), m.cols(), true);
  for (std::size_t r = 0; r < m.rows(); ++r) {
    const auto z = zscores(m.row(r));
    std::copy(z.begin(), z.end(), out.row(r).begin());
  }
  return out;
}

std::vector<double> score_paragraphs(const WeightVector& w, const FeatureMatrix& m) {
  if (!m.normalized()) throw std::invalid_argument("score_paragraphs expects a z-normalized matrix");
  if (w.size() != m.rows()) {
    throw std::invalid_argument("weight vector has " + std::to_string(w.size()) +
                                " entries but the feature matrix has " + std::to_string(m.rows()) +
                                " rows");
  }
  std::vector<double> scores(m.cols(), 0.0);
  for (std::size_t f = 0; f < m.rows(); ++f) {
    const double wf = w[f];
    const auto row = m.row(f);
    for (std::size_t j = 0; j < m.cols(); ++j) scores[j] += wf * row[j];
  }
  return scores;
}

Curriculum sort_curriculum(std::vector<double> scores, Provenance provenance, std::string parameters) {
  for (const double s : scores) {
    if (!std::isfinite(s)) throw std::invalid_argument("curriculum scores must be finite");
  }
  Curriculum c;
  c.order.resize(scores.size());
  std::iota(c.order.begin(), c.order.end(), std::size_t{0});
  std::stable_sort(c.order.begin(), c.order.end(),
                   [&](std::size_t a, std::size_t b) { return scores[a] > scores[b]; });
  c.scores = std::move(scores);
  c.provenance = provenance;
  c.parameters = std::move(parameters);
  return c;
}

Curriculum curriculum_from_weights(const WeightVector& w, const FeatureMatrix& normalized,
                                   std::string parameters) {
  Curriculum c = sort_curriculum(score_paragraphs(w, normalized), Provenance::kOptimized, std::move(parameters));
  c.scores = zscores(c.scores);
  return c;
}

Curriculum baseline_shuffled(std::size_t n, std::uint64_t seed) {
  std::vector<std::size_t> perm(n);
  std::iota(perm.begin(), perm.end(), std::size_t{0});
  Rng rng(seed);
  for (std::size_t i = n; i > 1; --i) {
    const auto j = static_cast<std::size_t>(uniform_index(rng, i));
    std::swap(perm[i - 1], perm[j]);
  }
  // Scores are the z-scored reversed ranks so the stored order is consistent
  // with sort_curriculum over them.
  std::vector<double> rank_score(n);
  for (std::size_t r = 0; r < n; ++r) rank_score[perm[r]] = static_cast<double>(n - r);
  Curriculum c;
  c.order = std::move(perm);
  c.scores = zscores(rank_score);
  c.provenance = Provenance::kShuffled;
  c.parameters = "seed=" + std::to_string(seed);
  return c;
}

Curriculum baseline_length_sorted(const Corpus& corpus, LengthDirection direction) {
  std::vector<double> lengths(corpus.size());
  const double sign = direction == LengthDirection::kLongToShort ? 1.0 : -1.0;
  for (std::size_t i = 0; i < corpus.size(); ++i) {
    lengths[i] = sign * static_cast<double>(corpus[i].tokens.size());
  }
  return sort_curriculum(zscores(lengths), Provenance::kLengthSorted,
                         direction == LengthDirection::kLongToShort ? "direction=long_to_short"
                                                                    : "direction=short_to_long");
}

Curriculum baseline_coherent(std::size_t n) {
  return sort_curriculum(std::vector<double>(n, 0.0), Provenance::kCoherent);
}

Corpus apply_curriculum(const Corpus& corpus, const Curriculum& c) {
  if (c.size() != corpus.size() || !c.is_permutation()) {
    throw std::invalid_argument("curriculum does not permute the corpus paragraphs");
  }
  std::vector<Paragraph> ps;
  ps.reserve(corpus.size());
  for (const auto i : c.order) ps.push_back(corpus[i]);
  Corpus out(std::move(ps));
  if (corpus.has_vocabulary()) out.attach_vocabulary(corpus.shared_vocabulary());
  return out;
}

}  // namespace curricula
