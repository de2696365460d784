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


// Run configuration and the command layer behind the CLI. Every command reads
// its inputs from the configuration and the output directory and writes one
// artifact back; a missing upstream artifact names the command producing it.

#ifndef CURRICULA_PIPELINE_HPP_
#define CURRICULA_PIPELINE_HPP_

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "curricula/bayesopt.hpp"
#include "curricula/embeddings.hpp"
#include "curricula/evaluation.hpp"
#include "curricula/feature_matrix.hpp"

namespace curricula {

struct ResourcePaths {
  std::optional<std::filesystem::path> aoa;
  std::optional<std::filesystem::path> concreteness;
  std::optional<std::filesystem::path> syllables;
  std::optional<std::filesystem::path> imageability_seeds;
  std::optional<std::filesystem::path> titles;
  std::optional<std::filesystem::path> supersenses;
  std::optional<std::filesystem::path> synsets;
  std::optional<std::filesystem::path> annotations;
};

enum class TrainingMode { kOrdered, kWeighted };

struct RunConfig {
  std::filesystem::path corpus;
  std::int64_t min_count = 10;
  std::optional<std::uint64_t> seed;
  std::filesystem::path output = "run";

  std::vector<FeatureGroup> groups = {FeatureGroup::kDiversity, FeatureGroup::kSimplicity,
                                      FeatureGroup::kPrototypicality};
  // Drop the parse-derived simplicity features with a warning instead of
  // failing when no annotation file is configured.
  bool allow_missing_annotations = false;
  ResourcePaths resources;
  double imageability_l2 = 0.01;

  CbowConfig cbow;
  TrainingMode training = TrainingMode::kOrdered;
  double lambda = 0.5;

  OptimizerConfig optimizer;
  EvaluatorConfig evaluator;
  int shuffles = 10;

  std::map<std::string, double> sort_weights;
  double select_fraction = 0.10;
  std::optional<std::filesystem::path> select_curriculum;
  std::vector<std::pair<std::string, std::filesystem::path>> analyze_curricula;

  /// Throws ValidationError when the seed is missing or a referenced input
  /// file does not exist.
  void validate() const;
  std::uint64_t master_seed() const { return *seed; }
  /// Embedding settings with the derived training seed.
  CbowConfig cbow_config() const;
};

/// Parses JSON text; relative paths resolve against `base_dir`. Unknown keys
/// and mistyped values throw ValidationError naming the JSON path.
RunConfig parse_run_config(std::string_view json_text, const std::filesystem::path& base_dir);
RunConfig load_run_config(const std::filesystem::path& path);

/// Fixed artifact names inside the output directory.
namespace artifacts {
inline constexpr const char* kVocabulary = "vocab.tsv";
inline constexpr const char* kFeatures = "features.tsv";
inline constexpr const char* kBootstrap = "bootstrap.vec";
inline constexpr const char* kCurriculum = "curriculum.tsv";
inline constexpr const char* kEmbeddings = "embeddings.vec";
inline constexpr const char* kEvaluation = "evaluation.json";
inline constexpr const char* kCorrelations = "correlations.tsv";
inline constexpr const char* kSelected = "selected.txt";
inline constexpr const char* kBaselines = "baselines.tsv";
inline constexpr const char* kReport = "report.tsv";
}  // namespace artifacts

std::string history_file_name(FeatureGroup group);

/// Each returns the one-line summary the CLI prints.
std::string cmd_preprocess(const RunConfig& cfg);
std::string cmd_extract(const RunConfig& cfg);
std::string cmd_sort(const RunConfig& cfg);
std::string cmd_train(const RunConfig& cfg);
std::string cmd_evaluate(const RunConfig& cfg);
std::string cmd_analyze(const RunConfig& cfg);
std::string cmd_select(const RunConfig& cfg);
std::string cmd_optimize(const RunConfig& cfg);

struct SystemScore {
  std::string system;
  double dev = 0.0;
  double test = 0.0;
};

/// Rows of report.tsv: shuffled_median, shuffled_best, long_to_short,
/// short_to_long, coherent, then optimized_<group> per optimized group.
std::vector<SystemScore> load_report(const std::filesystem::path& path);

/// Index of the shuffled run whose dev score is closest to the median dev
/// score, ties to the earlier run.
std::size_t median_closest(const std::vector<double>& dev_scores);

}  // namespace curricula

#endif  // CURRICULA_PIPELINE_HPP_
