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


#include <gtest/gtest.h>

#include <json.hpp>

#include "curricula/common.hpp"
#include "curricula/curriculum.hpp"
#include "curricula/feature_matrix.hpp"
#include "curricula/pipeline.hpp"
#include "curricula/synthetic.hpp"
#include "test_util.hpp"

namespace curricula {
namespace {

namespace fs = std::filesystem;
using Json = nlohmann::json;

class PipelineTest : public ::testing::Test {
 protected:
  static void SetUpTestSuite() {
    dir_ = new testing::TempDir();
    SyntheticConfig s;
    s.target_tokens = 6000;
    s.dataset_size = 200;
    write_synthetic_suite(dir_->path(), s);
  }
  static void TearDownTestSuite() {
    delete dir_;
    dir_ = nullptr;
  }

  static Json base_json() { return Json::parse(testing::read_file(*dir_ / "config.json")); }

  // Config with output in a fresh subdirectory.
  static RunConfig config(Json j, const std::string& out) {
    j["output"] = out;
    RunConfig cfg = parse_run_config(j.dump(), dir_->path());
    cfg.validate();
    return cfg;
  }

  static std::string error_of(const Json& j) {
    try {
      parse_run_config(j.dump(), dir_->path()).validate();
    } catch (const ValidationError& e) {
      return e.what();
    }
    return "";
  }

  static testing::TempDir* dir_;
};

testing::TempDir* PipelineTest::dir_ = nullptr;

std::size_t count_lines(const fs::path& p) {
  const auto text = testing::read_file(p);
  return static_cast<std::size_t>(std::count(text.begin(), text.end(), '\n'));
}

TEST_F(PipelineTest, ConfigErrorsNameTheKey) {
  Json j = base_json();
  j["cbow"]["bogus"] = 1;
  EXPECT_NE(error_of(j).find("/cbow/bogus"), std::string::npos);
  j = base_json();
  j["cbow"]["dim"] = "big";
  EXPECT_NE(error_of(j).find("/cbow/dim"), std::string::npos);
  j = base_json();
  j.erase("evaluator");
  EXPECT_NE(error_of(j).find("/evaluator"), std::string::npos);
  j = base_json();
  j.erase("seed");
  EXPECT_NE(error_of(j).find("/seed"), std::string::npos);
  j = base_json();
  j["evaluator"]["name"] = "bleu";
  EXPECT_NE(error_of(j).find("word_similarity"), std::string::npos);
  j = base_json();
  j["resources"]["aoa"] = "missing.tsv";
  EXPECT_NE(error_of(j).find("/resources/aoa"), std::string::npos);
  j = base_json();
  j["features"]["groups"] = {"diversity", "style"};
  EXPECT_NE(error_of(j).find("/features/groups/1"), std::string::npos);
  EXPECT_THROW(parse_run_config("{not json", dir_->path()), ValidationError);
  EXPECT_EQ(error_of(base_json()), "");
}

TEST_F(PipelineTest, ConfigDefaultsAndPaths) {
  const RunConfig cfg = parse_run_config(base_json().dump(), dir_->path());
  EXPECT_EQ(cfg.corpus, dir_->path() / "corpus.txt");
  EXPECT_EQ(cfg.cbow.dim, 32);
  EXPECT_DOUBLE_EQ(cfg.cbow.min_lr, 0.25 * 1e-4);
  EXPECT_EQ(cfg.shuffles, 10);
  EXPECT_EQ(cfg.cbow_config().seed, mix_seed(1, 1));
}

TEST_F(PipelineTest, MissingArtifactsNameTheCommand) {
  const RunConfig cfg = config(base_json(), "missing_artifacts");
  try {
    cmd_extract(cfg);
    FAIL();
  } catch (const ValidationError& e) {
    EXPECT_NE(std::string(e.what()).find("run `preprocess` first"), std::string::npos);
  }
  cmd_preprocess(cfg);
  try {
    cmd_train(cfg);
    FAIL();
  } catch (const ValidationError& e) {
    EXPECT_NE(std::string(e.what()).find("run `sort` first"), std::string::npos);
  }
  EXPECT_THROW(cmd_sort(cfg), ValidationError);
  EXPECT_THROW(cmd_evaluate(cfg), ValidationError);
}

TEST_F(PipelineTest, MissingAnnotationsFailUnlessAllowed) {
  Json j = base_json();
  j["resources"].erase("annotations");
  const RunConfig strict = config(j, "no_annotations");
  cmd_preprocess(strict);
  try {
    cmd_extract(strict);
    FAIL();
  } catch (const ValidationError& e) {
    EXPECT_NE(std::string(e.what()).find("allow_missing_annotations"), std::string::npos);
  }
  j["features"]["allow_missing_annotations"] = true;
  const RunConfig lenient = config(j, "no_annotations");
  cmd_extract(lenient);
  const auto m = FeatureMatrix::load_tsv(lenient.output / artifacts::kFeatures);
  EXPECT_EQ(m.rows(), 15u);
  EXPECT_FALSE(m.spec().contains("parse_tree_depth"));
}

TEST_F(PipelineTest, StepwiseCommands) {
  Json j = base_json();
  j["sort"]["weights"] = {{"num_types", -1.0}};
  j["select"]["fraction"] = 0.2;
  const RunConfig cfg = config(j, "stepwise");
  cmd_preprocess(cfg);
  cmd_extract(cfg);
  EXPECT_TRUE(fs::exists(cfg.output / artifacts::kBootstrap));
  const auto m = FeatureMatrix::load_tsv(cfg.output / artifacts::kFeatures);
  EXPECT_EQ(m.rows(), 21u);
  cmd_sort(cfg);
  const auto c = Curriculum::load(cfg.output / artifacts::kCurriculum);
  const auto row = m.row(m.spec().position("num_types"));
  for (std::size_t r = 1; r < c.size(); ++r) EXPECT_LE(row[c.order[r - 1]], row[c.order[r]]);
  cmd_train(cfg);
  cmd_evaluate(cfg);
  const Json eval = Json::parse(testing::read_file(cfg.output / artifacts::kEvaluation));
  EXPECT_EQ(eval["metric"], "accuracy");
  EXPECT_GE(eval["dev"].get<double>(), 0.0);
  cmd_select(cfg);
  EXPECT_GT(count_lines(cfg.output / artifacts::kSelected), 0u);
  EXPECT_THROW(cmd_analyze(cfg), ValidationError);  // only one curriculum so far
}

TEST_F(PipelineTest, SortWithoutWeightsKeepsCorpusOrder) {
  const RunConfig cfg = config(base_json(), "coherent_sort");
  cmd_preprocess(cfg);
  Json j = base_json();
  j["features"]["groups"] = {"diversity"};
  const RunConfig div = config(j, "coherent_sort");
  cmd_extract(div);
  cmd_sort(div);
  const auto c = Curriculum::load(div.output / artifacts::kCurriculum);
  EXPECT_EQ(c.order, baseline_coherent(c.size()).order);
}

TEST_F(PipelineTest, OptimizeEndToEnd) {
  Json j = base_json();
  j["features"]["groups"] = {"prototypicality"};
  j["optimizer"]["trials"] = 1;
  const RunConfig cfg = config(j, "optimize");
  cmd_preprocess(cfg);
  cmd_extract(cfg);
  cmd_optimize(cfg);
  EXPECT_EQ(count_lines(cfg.output / "history_prototypicality.jsonl"), 1u);
  EXPECT_EQ(count_lines(cfg.output / artifacts::kBaselines), 14u);
  const auto report = load_report(cfg.output / artifacts::kReport);
  std::vector<std::string> systems;
  for (const auto& r : report) systems.push_back(r.system);
  EXPECT_EQ(systems, (std::vector<std::string>{"shuffled_median", "shuffled_best", "long_to_short", "short_to_long",
                                               "coherent", "optimized_prototypicality"}));
  EXPECT_GE(report[1].dev, report[0].dev);
  for (const char* f : {"curriculum_optimized_prototypicality.tsv", "curriculum_long_to_short.tsv",
                        "curriculum_short_to_long.tsv", "curriculum_coherent.tsv"}) {
    EXPECT_TRUE(fs::exists(cfg.output / f)) << f;
  }
  cmd_analyze(cfg);
  EXPECT_EQ(count_lines(cfg.output / artifacts::kCorrelations), 5u);
}

TEST_F(PipelineTest, OptimizeHistoryIsReproducible) {
  Json j = base_json();
  j["features"]["groups"] = {"diversity"};
  j["optimizer"]["trials"] = 3;
  j["baselines"]["shuffles"] = 1;
  const RunConfig a = config(j, "repro_a");
  const RunConfig b = config(j, "repro_b");
  for (const auto* cfg : {&a, &b}) {
    cmd_preprocess(*cfg);
    cmd_extract(*cfg);
    cmd_optimize(*cfg);
  }
  EXPECT_EQ(testing::read_file(a.output / "history_diversity.jsonl"),
            testing::read_file(b.output / "history_diversity.jsonl"));
  EXPECT_EQ(testing::read_file(a.output / artifacts::kReport), testing::read_file(b.output / artifacts::kReport));
}

TEST(Report, MedianClosestPicksFirstOnTies) {
  EXPECT_EQ(median_closest({0.5, 0.7, 0.6}), 2u);
  EXPECT_EQ(median_closest({0.4, 0.6, 0.8, 0.2}), 0u);
}

}  // namespace
}  // namespace curricula
