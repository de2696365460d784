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


// Sequential model-based optimization of curriculum weights: a tree-structured
// Parzen estimator surrogate with the l/g expected-improvement surrogate as
// acquisition. The weight space is a flat box, so every dimension gets its own
// pair of one-dimensional estimators.

#ifndef CURRICULA_BAYESOPT_HPP_
#define CURRICULA_BAYESOPT_HPP_

#include <cstdint>
#include <filesystem>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "curricula/common.hpp"

namespace curricula {

struct Observation {
  int trial = 0;
  std::vector<double> w;
  double dev_score = 0.0;   // -inf for failed trials
  double test_score = 0.0;  // NaN for failed trials
  bool failed = false;
};

struct Bounds {
  double lo = -1.0;
  double hi = 1.0;
};

struct OptimizerConfig {
  int trials = 10;
  std::vector<Bounds> bounds;  // one per dimension; empty means [-1, 1] everywhere
  int startup_trials = 3;
  double gamma = 0.25;
  int candidates_per_trial = 24;
  std::uint64_t seed = 0;

  /// Throws std::invalid_argument on invalid settings for `dim` dimensions.
  void validate(std::size_t dim) const;
  Bounds bound(std::size_t d) const { return bounds.empty() ? Bounds{} : bounds[d]; }
};

struct ObservationSplit {
  std::vector<const Observation*> good;
  std::vector<const Observation*> bad;
};

/// good = the max(1, ceil(gamma |H|)) best by dev score, ties to earlier
/// trials. Throws std::invalid_argument for an empty history.
ObservationSplit split_observations(const std::vector<Observation>& history, double gamma);

/// One-dimensional Parzen mixture: a uniform prior over the bounds plus one
/// bound-truncated Gaussian per point, equally weighted.
class ParzenEstimator {
 public:
  ParzenEstimator(std::vector<double> points, Bounds bounds);

  /// Throws std::invalid_argument when x lies outside the bounds.
  double density(double x) const;
  double log_density(double x) const;
  double sample(Rng& rng) const;

  const std::vector<double>& points() const { return points_; }
  const std::vector<double>& bandwidths() const { return bandwidths_; }

 private:
  std::vector<double> points_;
  std::vector<double> bandwidths_;
  std::vector<double> masses_;  // Gaussian mass inside the bounds
  Bounds bounds_;
};

double parzen_density(const std::vector<double>& points, Bounds bounds, double x);

/// Proposal for trial `trial`: uniform in the box during start-up, otherwise
/// the best of `candidates_per_trial` draws from the good density under
/// Σ_d log l_d(x_d) − log g_d(x_d).
std::vector<double> suggest(const std::vector<Observation>& history, const OptimizerConfig& cfg,
                            std::size_t dim, int trial, Rng& rng);

struct TrialScores {
  double dev = 0.0;
  double test = 0.0;
};

/// Returns the scores of one trial; exceptions mark the trial failed.
using ObjectiveFn = std::function<TrialScores(const std::vector<double>& w, int trial)>;

struct OptimizationResult {
  std::vector<Observation> history;
  std::size_t best = 0;  // index into history
};

/// Runs trials until the history holds cfg.trials entries. With a history path
/// the file is rewritten after every trial and an existing file is resumed.
/// Trial t draws from an Rng seeded with mix_seed(cfg.seed, t).
OptimizationResult optimize(const ObjectiveFn& fn, std::size_t dim, const OptimizerConfig& cfg,
                            const std::optional<std::filesystem::path>& history_path = std::nullopt);

/// Highest dev score, ties to the earliest trial.
std::size_t best_observation(const std::vector<Observation>& history);

/// JSON lines `{"trial":t,"w":[...],"dev":x,"test":y,"status":"ok|failed"}`.
std::string observation_to_json(const Observation& o);
Observation observation_from_json(const std::string& line);
void save_history(const std::vector<Observation>& history, const std::filesystem::path& path);
std::vector<Observation> load_history(const std::filesystem::path& path);

}  // namespace curricula

#endif  // CURRICULA_BAYESOPT_HPP_
