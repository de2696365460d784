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


#include "curricula/bayesopt.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <numbers>
#include <numeric>
#include <stdexcept>

#include <json.hpp>

namespace curricula {

void OptimizerConfig::validate(std::size_t dim) const {
  if (trials < 1) throw std::invalid_argument("optimizer: trials must be >= 1");
  if (!(gamma > 0.0 && gamma < 1.0)) throw std::invalid_argument("optimizer: gamma must lie in (0, 1)");
  if (startup_trials < 1) throw std::invalid_argument("optimizer: startup_trials must be >= 1");
  if (candidates_per_trial < 1) throw std::invalid_argument("optimizer: candidates_per_trial must be >= 1");
  if (dim == 0) throw std::invalid_argument("optimizer: search space has no dimensions");
  if (!bounds.empty() && bounds.size() != dim) {
    throw std::invalid_argument("optimizer: " + std::to_string(bounds.size()) + " bounds for " +
                                std::to_string(dim) + " dimensions");
  }
  for (const auto& b : bounds) {
    if (!(std::isfinite(b.lo) && std::isfinite(b.hi) && b.lo < b.hi)) {
      throw std::invalid_argument("optimizer: every bound needs finite lo < hi");
    }
  }
}

ObservationSplit split_observations(const std::vector<Observation>& history, double gamma) {
  if (history.empty()) throw std::invalid_argument("cannot split an empty observation history");
  std::vector<const Observation*> sorted;
  for (const auto& o : history) sorted.push_back(&o);
  std::stable_sort(sorted.begin(), sorted.end(), [](const Observation* a, const Observation* b) {
    if (a->dev_score != b->dev_score) return a->dev_score > b->dev_score;
    return a->trial < b->trial;
  });
  const auto n_good = std::max<std::size_t>(
      1, static_cast<std::size_t>(std::ceil(gamma * static_cast<double>(history.size()) - 1e-12)));
  ObservationSplit s;
  s.good.assign(sorted.begin(), sorted.begin() + static_cast<std::ptrdiff_t>(n_good));
  s.bad.assign(sorted.begin() + static_cast<std::ptrdiff_t>(n_good), sorted.end());
  return s;
}

namespace {

double normal_cdf(double z) { return 0.5 * std::erfc(-z / std::numbers::sqrt2); }

}  // namespace

ParzenEstimator::ParzenEstimator(std::vector<double> points, Bounds bounds)
    : points_(std::move(points)), bounds_(bounds) {
  if (!(bounds.lo < bounds.hi)) throw std::invalid_argument("Parzen bounds need lo < hi");
  const double width = bounds.hi - bounds.lo;
  const double floor = width / std::min(100.0, static_cast<double>(points_.size()) + 1.0);
  for (std::size_t i = 0; i < points_.size(); ++i) {
    double nearest = 0.0;
    bool found = false;
    for (std::size_t j = 0; j < points_.size(); ++j) {
      if (j == i) continue;
      const double d = std::abs(points_[i] - points_[j]);
      if (!found || d < nearest) nearest = d;
      found = true;
    }
    const double h = std::max(nearest, floor);
    bandwidths_.push_back(h);
    masses_.push_back(normal_cdf((bounds.hi - points_[i]) / h) - normal_cdf((bounds.lo - points_[i]) / h));
  }
}

double ParzenEstimator::density(double x) const {
  if (!(x >= bounds_.lo && x <= bounds_.hi)) {
    throw std::invalid_argument("Parzen density evaluated outside its bounds");
  }
  double sum = 1.0 / (bounds_.hi - bounds_.lo);
  for (std::size_t i = 0; i < points_.size(); ++i) {
    const double z = (x - points_[i]) / bandwidths_[i];
    sum += std::exp(-0.5 * z * z) / (bandwidths_[i] * std::sqrt(2.0 * std::numbers::pi) * masses_[i]);
  }
  return sum / static_cast<double>(points_.size() + 1);
}

double ParzenEstimator::log_density(double x) const { return std::log(density(x)); }

double ParzenEstimator::sample(Rng& rng) const {
  const auto c = uniform_index(rng, points_.size() + 1);
  if (c == points_.size()) return uniform(rng, bounds_.lo, bounds_.hi);
  const double mu = points_[c];
  const double h = bandwidths_[c];
  for (int attempt = 0; attempt < 1000; ++attempt) {
    const double x = mu + h * standard_normal(rng);
    if (x >= bounds_.lo && x <= bounds_.hi) return x;
  }
  return std::clamp(mu, bounds_.lo, bounds_.hi);
}

double parzen_density(const std::vector<double>& points, Bounds bounds, double x) {
  return ParzenEstimator(points, bounds).density(x);
}

std::vector<double> suggest(const std::vector<Observation>& history, const OptimizerConfig& cfg,
                            std::size_t dim, int trial, Rng& rng) {
  std::vector<double> w(dim);
  if (trial < cfg.startup_trials || history.empty()) {
    for (std::size_t d = 0; d < dim; ++d) w[d] = uniform(rng, cfg.bound(d).lo, cfg.bound(d).hi);
    return w;
  }
  const auto split = split_observations(history, cfg.gamma);
  std::vector<ParzenEstimator> good, bad;
  for (std::size_t d = 0; d < dim; ++d) {
    std::vector<double> gp, bp;
    for (const auto* o : split.good) gp.push_back(o->w[d]);
    for (const auto* o : split.bad) bp.push_back(o->w[d]);
    good.emplace_back(std::move(gp), cfg.bound(d));
    bad.emplace_back(std::move(bp), cfg.bound(d));
  }
  double best_score = -std::numeric_limits<double>::infinity();
  std::vector<double> candidate(dim);
  for (int c = 0; c < cfg.candidates_per_trial; ++c) {
    double score = 0.0;
    for (std::size_t d = 0; d < dim; ++d) {
      candidate[d] = good[d].sample(rng);
      score += good[d].log_density(candidate[d]) - bad[d].log_density(candidate[d]);
    }
    if (score > best_score) {
      best_score = score;
      w = candidate;
    }
  }
  return w;
}

std::size_t best_observation(const std::vector<Observation>& history) {
  if (history.empty()) throw std::invalid_argument("empty history has no best observation");
  std::size_t best = 0;
  for (std::size_t i = 1; i < history.size(); ++i) {
    if (history[i].dev_score > history[best].dev_score) best = i;
  }
  return best;
}

std::string observation_to_json(const Observation& o) {
  nlohmann::ordered_json j;
  j["trial"] = o.trial;
  j["w"] = o.w;
  if (o.failed) {
    j["dev"] = nullptr;
    j["test"] = nullptr;
  } else {
    j["dev"] = o.dev_score;
    j["test"] = o.test_score;
  }
  j["status"] = o.failed ? "failed" : "ok";
  return j.dump();
}

Observation observation_from_json(const std::string& line) {
  try {
    const auto j = nlohmann::json::parse(line);
    Observation o;
    o.trial = j.at("trial").get<int>();
    o.w = j.at("w").get<std::vector<double>>();
    const auto status = j.at("status").get<std::string>();
    if (status != "ok" && status != "failed") throw Error("unknown trial status '" + status + "'");
    o.failed = status == "failed";
    if (o.failed) {
      o.dev_score = -std::numeric_limits<double>::infinity();
      o.test_score = std::numeric_limits<double>::quiet_NaN();
    } else {
      o.dev_score = j.at("dev").get<double>();
      o.test_score = j.at("test").get<double>();
    }
    return o;
  } catch (const nlohmann::json::exception& e) {
    throw Error(std::string("malformed history record: ") + e.what());
  }
}

void save_history(const std::vector<Observation>& history, const std::filesystem::path& path) {
  auto tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary);
    if (!out) throw Error("cannot write " + tmp.string());
    for (const auto& o : history) out << observation_to_json(o) << '\n';
    if (!out) throw Error("failed writing " + tmp.string());
  }
  std::filesystem::rename(tmp, path);
}

std::vector<Observation> load_history(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open history " + path.string());
  std::vector<Observation> out;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    out.push_back(observation_from_json(line));
  }
  return out;
}

OptimizationResult optimize(const ObjectiveFn& fn, std::size_t dim, const OptimizerConfig& cfg,
                            const std::optional<std::filesystem::path>& history_path) {
  cfg.validate(dim);
  OptimizationResult result;
  if (history_path && std::filesystem::exists(*history_path)) {
    result.history = load_history(*history_path);
    for (std::size_t i = 0; i < result.history.size(); ++i) {
      const auto& o = result.history[i];
      if (o.trial != static_cast<int>(i) || o.w.size() != dim) {
        throw ValidationError("history " + history_path->string() + " does not match this search (record " +
                              std::to_string(i) + ")");
      }
    }
    if (result.history.size() > static_cast<std::size_t>(cfg.trials)) {
      throw ValidationError("history " + history_path->string() + " already holds more than " +
                            std::to_string(cfg.trials) + " trials");
    }
  }
  for (int t = static_cast<int>(result.history.size()); t < cfg.trials; ++t) {
    Rng rng(mix_seed(cfg.seed, static_cast<std::uint64_t>(t)));
    Observation o;
    o.trial = t;
    o.w = suggest(result.history, cfg, dim, t, rng);
    try {
      const TrialScores s = fn(o.w, t);
      if (!std::isfinite(s.dev)) throw Error("non-finite dev score");
      o.dev_score = s.dev;
      o.test_score = s.test;
    } catch (const std::exception& e) {
      log_warning("trial " + std::to_string(t) + " failed: " + e.what());
      o.failed = true;
      o.dev_score = -std::numeric_limits<double>::infinity();
      o.test_score = std::numeric_limits<double>::quiet_NaN();
    }
    result.history.push_back(std::move(o));
    if (history_path) save_history(result.history, *history_path);
  }
  result.best = best_observation(result.history);
  return result;
}

}  // namespace curricula
