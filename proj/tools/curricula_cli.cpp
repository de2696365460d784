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


#include <CLI11.hpp>

#include <cstdio>
#include <exception>
#include <functional>
#include <iostream>
#include <map>
#include <string>

#include "curricula/common.hpp"
#include "curricula/pipeline.hpp"
#include "curricula/synthetic.hpp"

namespace {

constexpr int kExitValidation = 1;
constexpr int kExitRuntime = 2;

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Curriculum optimization for word-embedding training"};
  app.require_subcommand(1);

  std::string config_path;
  std::string output_dir;
  long long seed = -1;
  int trials = 0;

  using Command = std::function<std::string(const curricula::RunConfig&)>;
  const std::map<std::string, std::pair<std::string, Command>> commands = {
      {"preprocess", {"Tokenize the corpus and build the vocabulary", curricula::cmd_preprocess}},
      {"extract", {"Compute per-paragraph features", curricula::cmd_extract}},
      {"sort", {"Order paragraphs by configured feature weights", curricula::cmd_sort}},
      {"train", {"Train CBOW embeddings on the current curriculum", curricula::cmd_train}},
      {"evaluate", {"Score the trained embeddings", curricula::cmd_evaluate}},
      {"analyze", {"Spearman correlations between curricula", curricula::cmd_analyze}},
      {"select", {"Keep the top fraction of tokens under a curriculum", curricula::cmd_select}},
      {"optimize", {"Optimize curriculum weights and run the baseline battery", curricula::cmd_optimize}},
  };
  std::map<std::string, CLI::App*> subs;
  for (const auto& [name, entry] : commands) {
    auto* sub = app.add_subcommand(name, entry.first);
    sub->add_option("--config", config_path, "Run configuration (JSON)")->required()->check(CLI::ExistingFile);
    sub->add_option("--output", output_dir, "Output directory (overrides the config)");
    sub->add_option("--seed", seed, "Master seed (overrides the config)")->check(CLI::NonNegativeNumber);
    sub->add_option("--trials", trials, "Optimizer trials (overrides the config)")->check(CLI::PositiveNumber);
    subs[name] = sub;
  }

  curricula::SyntheticConfig synth;
  std::string synth_dir;
  auto* synth_cmd = app.add_subcommand("synth", "Write a synthetic corpus, resources, datasets and config");
  synth_cmd->add_option("--output", synth_dir, "Directory to create")->required();
  synth_cmd->add_option("--seed", synth.seed, "Generator seed");
  synth_cmd->add_option("--tokens", synth.target_tokens, "Approximate corpus size in tokens");
  synth_cmd->add_option("--examples", synth.dataset_size, "Sentiment examples across all splits");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitValidation;
  }

  try {
    if (synth_cmd->parsed()) {
      curricula::write_synthetic_suite(synth_dir, synth);
      std::cout << "synth: wrote " << synth_dir << "\n";
      return 0;
    }
    for (const auto& [name, sub] : subs) {
      if (!sub->parsed()) continue;
      curricula::RunConfig cfg = curricula::load_run_config(config_path);
      if (!output_dir.empty()) cfg.output = output_dir;
      if (seed >= 0) cfg.seed = static_cast<std::uint64_t>(seed);
      if (trials > 0) cfg.optimizer.trials = trials;
      cfg.validate();
      std::cout << commands.at(name).second(cfg) << "\n";
      return 0;
    }
  } catch (const curricula::ValidationError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitValidation;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitRuntime;
  }
  return 0;
}
