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


// Acceptance suite: one PASS/FAIL line per criterion. Exits non-zero if any
// criterion fails. Pass criterion numbers as arguments to run a subset.

#include <json.hpp>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <filesystem>
#include <functional>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "curricula/analysis.hpp"
#include "curricula/bayesopt.hpp"
#include "curricula/common.hpp"
#include "curricula/curriculum.hpp"
#include "curricula/embeddings.hpp"
#include "curricula/features.hpp"
#include "curricula/logreg.hpp"
#include "curricula/pipeline.hpp"
#include "curricula/stats.hpp"
#include "oracles.hpp"
#include "test_util.hpp"

namespace {

using namespace curricula;
namespace fs = std::filesystem;
using Json = nlohmann::json;

struct Outcome {
  bool pass = false;
  std::string detail;
};

std::string g(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.4g", v);
  return buf;
}

fs::path synthetic_dir() { return fs::path(CURRICULA_SOURCE_DIR) / "data" / "synthetic"; }

// 1. Diversity formulas against token-level brute force.
Outcome formula_oracles() {
  std::mt19937_64 rng(101);
  const Corpus c = testing::random_corpus(rng, 200, 20, 40);
  const auto emb = testing::random_embeddings(c.vocabulary(), 16, 5);
  const SimilarityProvider sim(c.vocabulary(), emb);
  const auto global = global_type_probabilities(c);
  double worst = 0.0;
  for (std::size_t p = 0; p < c.size(); ++p) {
    const auto d = diversity_features(c.ids(p), global, sim);
    const auto b = testing::brute_force_diversity(c.ids(p), global, emb, c.vocabulary());
    for (const double diff : {d[0] - b.types, d[1] - b.ttr, d[2] - b.entropy, d[3] - b.simpson, d[4] - b.quadratic}) {
      worst = std::max(worst, std::abs(diff));
    }
  }
  return {worst <= 1e-10, "max |diff| " + g(worst) + " over 200 paragraphs"};
}

double relative_error(const std::vector<double>& a, const std::vector<double>& b) {
  double diff = 0, na = 0, nb = 0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    diff += (a[i] - b[i]) * (a[i] - b[i]);
    na += a[i] * a[i];
    nb += b[i] * b[i];
  }
  return std::sqrt(diff) / std::max({std::sqrt(na), std::sqrt(nb), 1e-12});
}

// 2. Analytic gradients against central finite differences.
Outcome gradient_checks() {
  Rng rng(202);
  const double h = 1e-5;
  double cbow_worst = 0, logreg_worst = 0;
  for (int inst = 0; inst < 50; ++inst) {
    const int dim = 4 + static_cast<int>(uniform_index(rng, 8));
    const std::size_t vocab = 12;
    std::vector<double> input(vocab * dim), output(vocab * dim);
    for (auto& x : input) x = 0.5 * standard_normal(rng);
    for (auto& x : output) x = 0.5 * standard_normal(rng);
    std::vector<WordId> context(1 + uniform_index(rng, 8)), negatives(1 + uniform_index(rng, 5));
    for (auto& c : context) c = static_cast<WordId>(uniform_index(rng, vocab));
    for (auto& n : negatives) n = static_cast<WordId>(uniform_index(rng, vocab));
    const CbowInstance ci{context, static_cast<WordId>(uniform_index(rng, vocab)), negatives};
    std::vector<double> gi(input.size(), 0.0), go(output.size(), 0.0);
    cbow_gradient(input, output, dim, ci, gi, go);
    std::vector<double> analytic = gi, numeric;
    analytic.insert(analytic.end(), go.begin(), go.end());
    for (auto* v : {&input, &output}) {
      for (auto& x : *v) {
        const double saved = x;
        x = saved + h;
        const double up = cbow_loss(input, output, dim, ci);
        x = saved - h;
        const double down = cbow_loss(input, output, dim, ci);
        x = saved;
        numeric.push_back((up - down) / (2 * h));
      }
    }
    cbow_worst = std::max(cbow_worst, relative_error(analytic, numeric));

    const std::size_t n = 10 + uniform_index(rng, 30), d = 1 + uniform_index(rng, 6);
    DenseRows x(n, d);
    std::vector<int> y(n);
    for (auto& v : x.values) v = standard_normal(rng);
    for (auto& v : y) v = static_cast<int>(uniform_index(rng, 2));
    std::vector<double> w(d);
    for (auto& v : w) v = standard_normal(rng);
    const double b = standard_normal(rng), l2 = uniform(rng, 0.0, 0.1);
    const auto grad = logreg_gradient(x, y, l2, w, b);
    std::vector<double> fd;
    for (std::size_t k = 0; k <= d; ++k) {
      auto wu = w, wd = w;
      double bu = b, bd = b;
      if (k < d) {
        wu[k] += h;
        wd[k] -= h;
      } else {
        bu += h;
        bd -= h;
      }
      fd.push_back((logreg_objective(x, y, l2, wu, bu) - logreg_objective(x, y, l2, wd, bd)) / (2 * h));
    }
    logreg_worst = std::max(logreg_worst, relative_error(grad, fd));
  }
  return {cbow_worst < 1e-4 && logreg_worst < 1e-5,
          "cbow rel err " + g(cbow_worst) + " (< 1e-4), logreg rel err " + g(logreg_worst) + " (< 1e-5)"};
}

// 3. Weighted training with unit multipliers reproduces ordered training.
Outcome weighted_equivalence() {
  std::mt19937_64 rng(303);
  const Corpus c = testing::random_corpus(rng, 1000, 19, 300);
  Curriculum cur = baseline_shuffled(c.size(), 4);
  cur.scores.assign(c.size(), 0.0);
  CbowConfig cfg;
  cfg.dim = 32;
  cfg.seed = 17;
  const auto a = train_cbow(c, cur, cfg);
  const auto b = train_cbow_weighted(c, cur, 0.5, cfg);
  const bool same = a.words() == b.words() &&
                    std::memcmp(a.input_data().data(), b.input_data().data(), a.input_data().size() * 8) == 0 &&
                    std::memcmp(a.output_data().data(), b.output_data().data(), a.output_data().size() * 8) == 0;
  return {same, std::to_string(c.token_count()) + " tokens, " + (same ? "bit-identical" : "outputs differ")};
}

// 4. Positive rescaling of w leaves the curriculum unchanged.
Outcome scale_invariance() {
  Rng rng(404);
  int identical = 0;
  for (int t = 0; t < 100; ++t) {
    const std::size_t rows = 1 + uniform_index(rng, all_feature_names().size());
    const std::size_t cols = 2 + uniform_index(rng, 300);
    std::vector<std::string> names(all_feature_names().begin(), all_feature_names().begin() + rows);
    FeatureMatrix m(FeatureSpec(names), cols);
    for (std::size_t r = 0; r < rows; ++r) {
      for (std::size_t j = 0; j < cols; ++j) m.at(r, j) = uniform(rng, -5, 20);
    }
    std::vector<double> w(rows);
    for (auto& v : w) v = uniform(rng, -1, 1);
    const WeightVector wv(w);
    const auto z = znormalize(m);
    if (curriculum_from_weights(wv, z).order == curriculum_from_weights(wv.scaled(7.3), z).order) ++identical;
  }
  return {identical == 100, std::to_string(identical) + "/100 identical permutations"};
}

// 5. TPE against random search on a 2-d quadratic.
Outcome tpe_vs_random() {
  std::vector<double> tpe_best, random_best, tpe_dist;
  for (std::uint64_t rep = 1; rep <= 20; ++rep) {
    Rng target_rng(mix_seed(rep, 99));
    const std::vector<double> target = {uniform(target_rng, -0.8, 0.8), uniform(target_rng, -0.8, 0.8)};
    const ObjectiveFn fn = [&](const std::vector<double>& w, int) {
      const double d0 = w[0] - target[0], d1 = w[1] - target[1];
      return TrialScores{-(d0 * d0 + d1 * d1), 0.0};
    };
    OptimizerConfig cfg;
    cfg.trials = 30;
    cfg.seed = rep;
    const auto tpe = optimize(fn, 2, cfg);
    OptimizerConfig rnd = cfg;
    rnd.startup_trials = cfg.trials;
    const auto rs = optimize(fn, 2, rnd);
    const auto& best = tpe.history[tpe.best];
    tpe_best.push_back(best.dev_score);
    random_best.push_back(rs.history[rs.best].dev_score);
    tpe_dist.push_back(std::hypot(best.w[0] - target[0], best.w[1] - target[1]));
  }
  const double mt = median(tpe_best), mr = median(random_best), md = median(tpe_dist);
  return {mt >= mr && md < 0.15, "median best TPE " + g(mt) + " vs random " + g(mr) + ", median distance " +
                                     g(md) + " (< 0.15)"};
}

Json synthetic_config() {
  return Json::parse(testing::read_file(synthetic_dir() / "config.json"));
}

RunConfig run_config(Json j, const fs::path& output) {
  j["output"] = output.string();
  RunConfig cfg = parse_run_config(j.dump(), synthetic_dir());
  cfg.validate();
  return cfg;
}

double report_dev(const std::vector<SystemScore>& report, const std::string& system) {
  for (const auto& r : report) {
    if (r.system == system) return r.dev;
  }
  throw Error("report has no row '" + system + "'");
}

// 6. Optimized curriculum against the median shuffled baseline.
Outcome end_to_end() {
  if (!fs::exists(synthetic_dir() / "config.json")) return {false, "data/synthetic is missing"};
  testing::TempDir tmp;
  int wins = 0;
  std::string detail;
  for (std::uint64_t seed = 1; seed <= 5; ++seed) {
    Json j = synthetic_config();
    j["seed"] = seed;
    j["features"]["groups"] = {"prototypicality"};
    j["optimizer"]["trials"] = 10;
    const RunConfig cfg = run_config(j, tmp / ("seed" + std::to_string(seed)));
    cmd_preprocess(cfg);
    cmd_extract(cfg);
    cmd_optimize(cfg);
    const auto report = load_report(cfg.output / artifacts::kReport);
    const double opt = report_dev(report, "optimized_prototypicality");
    const double med = report_dev(report, "shuffled_median");
    wins += opt >= med ? 1 : 0;
    detail += " seed" + std::to_string(seed) + " " + g(opt) + "/" + g(med);
  }
  return {wins >= 4, std::to_string(wins) + "/5 seeds optimized >= shuffled median (dev" + detail + ")"};
}

// 7. Spearman on hand-checkable curricula.
Outcome spearman_values() {
  const Corpus c = testing::make_corpus({"p zero", "p one", "p two", "p three"});
  const auto make = [](std::vector<std::size_t> order) {
    Curriculum k;
    k.scores.assign(order.size(), 0.0);
    k.order = std::move(order);
    return k;
  };
  const double same = spearman(make({0, 1, 2, 3}), make({0, 1, 2, 3}), c);
  const double rev = spearman(make({0, 1, 2, 3}), make({3, 2, 1, 0}), c);
  const double worked = spearman(make({0, 1, 2, 3}), make({0, 2, 1, 3}), c);
  const bool ok = same == 1.0 && rev == -1.0 && std::abs(worked - 0.8) <= 1e-12;
  return {ok, "identical " + g(same) + ", reversed " + g(rev) + ", worked example " + g(worked)};
}

// 8. Token budget of data selection.
Outcome selection_budget() {
  std::mt19937_64 rng(808);
  int ok = 0;
  for (int t = 0; t < 50; ++t) {
    const Corpus c = testing::random_corpus(rng, 20 + rng() % 300, 1 + rng() % 40, 50);
    const auto cur = baseline_shuffled(c.size(), rng());
    const double n = static_cast<double>(c.token_count());
    const auto got = static_cast<double>(select_top_tokens(cur, c, 0.10).token_count());
    if (got >= 0.10 * n && got < 0.10 * n + static_cast<double>(c.max_paragraph_length())) ++ok;
  }
  return {ok == 50, std::to_string(ok) + "/50 corpora within [0.1 N, 0.1 N + max length)"};
}

// 9. Identical configs give byte-identical histories.
Outcome determinism() {
  if (!fs::exists(synthetic_dir() / "config.json")) return {false, "data/synthetic is missing"};
  testing::TempDir tmp;
  Json j = synthetic_config();
  j["optimizer"]["trials"] = 3;
  std::vector<RunConfig> runs = {run_config(j, tmp / "a"), run_config(j, tmp / "b")};
  for (const auto& cfg : runs) {
    cmd_preprocess(cfg);
    cmd_extract(cfg);
    cmd_optimize(cfg);
  }
  int files = 0;
  for (const auto group : runs[0].groups) {
    const auto name = history_file_name(group);
    if (testing::read_file(runs[0].output / name) != testing::read_file(runs[1].output / name)) {
      return {false, name + " differs between runs"};
    }
    ++files;
  }
  return {files > 0, std::to_string(files) + " history files byte-identical across two runs"};
}

// 10. File round-trips.
Outcome format_fidelity() {
  testing::TempDir tmp;
  std::mt19937_64 rng(1010);
  const Corpus c = testing::random_corpus(rng, 300, 25, 500);
  CbowConfig cfg;
  cfg.dim = 24;
  cfg.initial_lr = 0.25;
  const auto m = train_cbow(c, baseline_coherent(c.size()), cfg);
  EmbeddingMatrix wide = m;
  Rng vr(3);
  for (auto& x : wide.input_data()) x = uniform(vr, -8, 8);
  double worst = 0;
  const std::vector<const EmbeddingMatrix*> cases = {&m, &wide};
  for (const auto* e : cases) {
    save_embeddings(*e, tmp / "e.vec");
    const auto back = load_embeddings(tmp / "e.vec");
    if (back.words() != e->words()) return {false, "embedding words changed"};
    for (std::size_t i = 0; i < e->input_data().size(); ++i) {
      worst = std::max(worst, std::abs(back.input_data()[i] - e->input_data()[i]));
    }
  }
  const Vocabulary& v = c.vocabulary();
  v.save_tsv(tmp / "v.tsv");
  const Vocabulary vb = Vocabulary::load_tsv(tmp / "v.tsv");
  vb.save_tsv(tmp / "v2.tsv");
  const bool vocab_ok = vb == v && testing::read_file(tmp / "v.tsv") == testing::read_file(tmp / "v2.tsv");
  const auto cur = baseline_shuffled(c.size(), 5);
  cur.save(tmp / "c.tsv");
  const Curriculum cb = Curriculum::load(tmp / "c.tsv");
  cb.save(tmp / "c2.tsv");
  const bool cur_ok = cb.order == cur.order && cb.provenance == cur.provenance && cb.parameters == cur.parameters &&
                      testing::read_file(tmp / "c.tsv") == testing::read_file(tmp / "c2.tsv");
  return {worst <= 5e-7 && vocab_ok && cur_ok, "embedding max error " + g(worst) + " (<= 5e-7), vocabulary " +
                                                   (vocab_ok ? "exact" : "differs") + ", curriculum " +
                                                   (cur_ok ? "exact" : "differs")};
}

struct Criterion {
  int id;
  const char* name;
  double limit_seconds;  // 0 means no limit
  std::function<Outcome()> run;
};

}  // namespace

int main(int argc, char** argv) {
  const std::vector<Criterion> criteria = {
      {1, "formula oracles", 5, formula_oracles},
      {2, "gradient checks", 10, gradient_checks},
      {3, "weighted-objective equivalence", 30, weighted_equivalence},
      {4, "scale invariance", 0, scale_invariance},
      {5, "TPE vs random search", 10, tpe_vs_random},
      {6, "end-to-end directional check", 900, end_to_end},
      {7, "Spearman unit values", 0, spearman_values},
      {8, "data selection budget", 0, selection_budget},
      {9, "determinism", 0, determinism},
      {10, "format fidelity", 0, format_fidelity},
  };
  std::set<int> only;
  for (int i = 1; i < argc; ++i) only.insert(std::atoi(argv[i]));
  int failed = 0;
  for (const auto& c : criteria) {
    if (!only.empty() && !only.count(c.id)) continue;
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (c.limit_seconds > 0 && secs >= c.limit_seconds) {
      o.pass = false;
      o.detail += "; exceeded the " + g(c.limit_seconds) + " s limit";
    }
    std::printf("%s %d %s: %s (%.1f s)\n", o.pass ? "PASS" : "FAIL", c.id, c.name, o.detail.c_str(), secs);
    std::fflush(stdout);
    failed += o.pass ? 0 : 1;
  }
  return failed == 0 ? 0 : 1;
}
