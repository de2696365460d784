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


#include "curricula/pipeline.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <initializer_list>
#include <sstream>

#include <json.hpp>

#include "curricula/analysis.hpp"
#include "curricula/common.hpp"
#include "curricula/corpus.hpp"
#include "curricula/curriculum.hpp"
#include "curricula/features.hpp"
#include "curricula/resources.hpp"
#include "curricula/stats.hpp"

namespace curricula {

namespace {

using Json = nlohmann::json;
namespace fs = std::filesystem;

// Seed streams derived from the master seed.
constexpr std::uint64_t kCbowStream = 1;
constexpr std::uint64_t kOptimizerStream = 2;
constexpr std::uint64_t kShuffleStream = 1000;

[[noreturn]] void bad(const std::string& where, const std::string& what) {
  throw ValidationError("config " + where + ": " + what);
}

void reject_unknown(const Json& obj, const std::string& where, std::initializer_list<std::string_view> allowed) {
  if (!obj.is_object()) bad(where, "expected an object");
  for (auto it = obj.begin(); it != obj.end(); ++it) {
    if (std::find(allowed.begin(), allowed.end(), it.key()) == allowed.end()) {
      bad(where + "/" + it.key(), "unknown key");
    }
  }
}

double get_number(const Json& j, const std::string& where) {
  if (!j.is_number()) bad(where, "expected a number");
  const double v = j.get<double>();
  if (!std::isfinite(v)) bad(where, "expected a finite number");
  return v;
}

long long get_integer(const Json& j, const std::string& where, long long min_value) {
  if (!j.is_number_integer()) bad(where, "expected an integer");
  const long long v = j.get<long long>();
  if (v < min_value) bad(where, "must be >= " + std::to_string(min_value));
  return v;
}

std::string get_string(const Json& j, const std::string& where) {
  if (!j.is_string()) bad(where, "expected a string");
  return j.get<std::string>();
}

bool get_bool(const Json& j, const std::string& where) {
  if (!j.is_boolean()) bad(where, "expected true or false");
  return j.get<bool>();
}

fs::path get_path(const Json& j, const std::string& where, const fs::path& base) {
  const fs::path p = get_string(j, where);
  if (p.empty()) bad(where, "path is empty");
  return p.is_absolute() ? p : base / p;
}

void require_file(const std::optional<fs::path>& p, const std::string& key) {
  if (p && !fs::exists(*p)) throw ValidationError("config " + key + ": file not found: " + p->string());
}

fs::path require_artifact(const RunConfig& cfg, const char* name, const char* producer) {
  const fs::path p = cfg.output / name;
  if (!fs::exists(p)) {
    throw ValidationError(p.string() + " not found; run `" + std::string(producer) + "` first");
  }
  return p;
}

Corpus load_prepared_corpus(const RunConfig& cfg) {
  const auto vocab_path = require_artifact(cfg, artifacts::kVocabulary, "preprocess");
  Corpus corpus = load_corpus(cfg.corpus);
  corpus.attach_vocabulary(std::make_shared<const Vocabulary>(Vocabulary::load_tsv(vocab_path)));
  return corpus;
}

FeatureMatrix load_features(const RunConfig& cfg, const Corpus& corpus) {
  FeatureMatrix m = FeatureMatrix::load_tsv(require_artifact(cfg, artifacts::kFeatures, "extract"));
  if (m.cols() != corpus.size()) {
    throw ValidationError(std::string(artifacts::kFeatures) + " holds " + std::to_string(m.cols()) +
                          " paragraphs but the corpus has " + std::to_string(corpus.size()) +
                          "; run `extract` again");
  }
  return m;
}

EmbeddingMatrix train_for(const RunConfig& cfg, const Corpus& corpus, const Curriculum& c) {
  return cfg.training == TrainingMode::kWeighted ? train_cbow_weighted(corpus, c, cfg.lambda, cfg.cbow_config())
                                                 : train_cbow(corpus, c, cfg.cbow_config());
}

std::unique_ptr<Evaluator> evaluator_for(const RunConfig& cfg) {
  EvaluatorConfig ec = cfg.evaluator;
  if (ec.work_dir.empty()) ec.work_dir = cfg.output / "eval";
  return make_evaluator(ec);
}

std::string fmt(double v) { return format_g9(v); }

void write_scores(const fs::path& path, const std::vector<SystemScore>& rows) {
  std::ofstream out(path);
  if (!out) throw Error("cannot write " + path.string());
  out << "system\tdev\ttest\n";
  for (const auto& r : rows) out << r.system << '\t' << fmt(r.dev) << '\t' << fmt(r.test) << '\n';
  if (!out) throw Error("failed writing " + path.string());
}

}  // namespace

void RunConfig::validate() const {
  if (!seed) throw ValidationError("config /seed: a master seed is required (set it in the config or pass --seed)");
  if (!fs::exists(corpus)) throw ValidationError("config /corpus: file not found: " + corpus.string());
  require_file(resources.aoa, "/resources/aoa");
  require_file(resources.concreteness, "/resources/concreteness");
  require_file(resources.syllables, "/resources/syllables");
  require_file(resources.imageability_seeds, "/resources/imageability_seeds");
  require_file(resources.titles, "/resources/titles");
  require_file(resources.supersenses, "/resources/supersenses");
  require_file(resources.synsets, "/resources/synsets");
  require_file(resources.annotations, "/resources/annotations");
  if (evaluator.name == "avg_classifier") {
    require_file(evaluator.train_path, "/evaluator/train");
    require_file(evaluator.dev_path, "/evaluator/dev");
    require_file(evaluator.test_path, "/evaluator/test");
  } else if (evaluator.name == "word_similarity") {
    require_file(evaluator.dev_pairs_path, "/evaluator/dev_pairs");
    require_file(evaluator.test_pairs_path, "/evaluator/test_pairs");
  }
  if (select_curriculum) require_file(select_curriculum, "/select/curriculum");
  for (const auto& [name, path] : analyze_curricula) require_file(path, "/analyze/curricula/" + name);
  try {
    cbow.validate();
    optimizer.validate(1);
  } catch (const std::invalid_argument& e) {
    throw ValidationError(std::string("config: ") + e.what());
  }
}

CbowConfig RunConfig::cbow_config() const {
  CbowConfig c = cbow;
  c.seed = mix_seed(master_seed(), kCbowStream);
  return c;
}

RunConfig parse_run_config(std::string_view json_text, const fs::path& base_dir) {
  Json root;
  try {
    root = Json::parse(json_text);
  } catch (const Json::parse_error& e) {
    throw ValidationError(std::string("config is not valid JSON: ") + e.what());
  }
  reject_unknown(root, "",
                 {"corpus", "min_count", "seed", "output", "features", "resources", "imageability_l2", "cbow",
                  "training", "optimizer", "evaluator", "baselines", "sort", "select", "analyze"});
  RunConfig cfg;
  if (!root.contains("corpus")) bad("/corpus", "required key is missing");
  cfg.corpus = get_path(root["corpus"], "/corpus", base_dir);
  if (root.contains("min_count")) cfg.min_count = get_integer(root["min_count"], "/min_count", 1);
  if (root.contains("seed")) cfg.seed = static_cast<std::uint64_t>(get_integer(root["seed"], "/seed", 0));
  if (root.contains("output")) cfg.output = get_path(root["output"], "/output", base_dir);
  else cfg.output = base_dir / "run";
  if (root.contains("imageability_l2")) {
    cfg.imageability_l2 = get_number(root["imageability_l2"], "/imageability_l2");
    if (!(cfg.imageability_l2 > 0.0)) bad("/imageability_l2", "must be > 0");
  }

  if (root.contains("features")) {
    const auto& f = root["features"];
    reject_unknown(f, "/features", {"groups", "allow_missing_annotations"});
    if (f.contains("groups")) {
      if (!f["groups"].is_array() || f["groups"].empty()) bad("/features/groups", "expected a non-empty array");
      cfg.groups.clear();
      for (std::size_t i = 0; i < f["groups"].size(); ++i) {
        const std::string where = "/features/groups/" + std::to_string(i);
        try {
          const auto g = parse_group(get_string(f["groups"][i], where));
          if (std::find(cfg.groups.begin(), cfg.groups.end(), g) != cfg.groups.end()) bad(where, "duplicate group");
          cfg.groups.push_back(g);
        } catch (const std::invalid_argument& e) {
          bad(where, e.what());
        }
      }
    }
    if (f.contains("allow_missing_annotations")) {
      cfg.allow_missing_annotations = get_bool(f["allow_missing_annotations"], "/features/allow_missing_annotations");
    }
  }

  if (root.contains("resources")) {
    const auto& r = root["resources"];
    reject_unknown(r, "/resources",
                   {"aoa", "concreteness", "syllables", "imageability_seeds", "titles", "supersenses", "synsets",
                    "annotations"});
    const auto opt = [&](const char* key, std::optional<fs::path>& dst) {
      if (r.contains(key)) dst = get_path(r[key], std::string("/resources/") + key, base_dir);
    };
    opt("aoa", cfg.resources.aoa);
    opt("concreteness", cfg.resources.concreteness);
    opt("syllables", cfg.resources.syllables);
    opt("imageability_seeds", cfg.resources.imageability_seeds);
    opt("titles", cfg.resources.titles);
    opt("supersenses", cfg.resources.supersenses);
    opt("synsets", cfg.resources.synsets);
    opt("annotations", cfg.resources.annotations);
  }

  if (root.contains("cbow")) {
    const auto& c = root["cbow"];
    reject_unknown(c, "/cbow", {"dim", "window", "negative", "epochs", "initial_lr", "min_lr", "workers"});
    if (c.contains("dim")) cfg.cbow.dim = static_cast<int>(get_integer(c["dim"], "/cbow/dim", 1));
    if (c.contains("window")) cfg.cbow.window = static_cast<int>(get_integer(c["window"], "/cbow/window", 1));
    if (c.contains("negative")) cfg.cbow.negative = static_cast<int>(get_integer(c["negative"], "/cbow/negative", 1));
    if (c.contains("epochs")) cfg.cbow.epochs = static_cast<int>(get_integer(c["epochs"], "/cbow/epochs", 1));
    if (c.contains("initial_lr")) cfg.cbow.initial_lr = get_number(c["initial_lr"], "/cbow/initial_lr");
    if (c.contains("min_lr")) cfg.cbow.min_lr = get_number(c["min_lr"], "/cbow/min_lr");
    else cfg.cbow.min_lr = cfg.cbow.initial_lr * 1e-4;
    if (c.contains("workers")) cfg.cbow.workers = static_cast<int>(get_integer(c["workers"], "/cbow/workers", 1));
  }

  if (root.contains("training")) {
    const auto& t = root["training"];
    reject_unknown(t, "/training", {"mode", "lambda"});
    if (t.contains("mode")) {
      const auto mode = get_string(t["mode"], "/training/mode");
      if (mode == "ordered") cfg.training = TrainingMode::kOrdered;
      else if (mode == "weighted") cfg.training = TrainingMode::kWeighted;
      else bad("/training/mode", "expected \"ordered\" or \"weighted\"");
    }
    if (t.contains("lambda")) {
      cfg.lambda = get_number(t["lambda"], "/training/lambda");
      if (cfg.lambda < 0.0) bad("/training/lambda", "must be >= 0");
    }
  }

  if (root.contains("optimizer")) {
    const auto& o = root["optimizer"];
    reject_unknown(o, "/optimizer", {"trials", "startup_trials", "gamma", "candidates_per_trial", "lo", "hi"});
    if (o.contains("trials")) cfg.optimizer.trials = static_cast<int>(get_integer(o["trials"], "/optimizer/trials", 1));
    if (o.contains("startup_trials")) {
      cfg.optimizer.startup_trials = static_cast<int>(get_integer(o["startup_trials"], "/optimizer/startup_trials", 1));
    }
    if (o.contains("gamma")) {
      cfg.optimizer.gamma = get_number(o["gamma"], "/optimizer/gamma");
      if (!(cfg.optimizer.gamma > 0.0 && cfg.optimizer.gamma < 1.0)) bad("/optimizer/gamma", "must lie in (0, 1)");
    }
    if (o.contains("candidates_per_trial")) {
      cfg.optimizer.candidates_per_trial =
          static_cast<int>(get_integer(o["candidates_per_trial"], "/optimizer/candidates_per_trial", 1));
    }
    Bounds b;
    if (o.contains("lo")) b.lo = get_number(o["lo"], "/optimizer/lo");
    if (o.contains("hi")) b.hi = get_number(o["hi"], "/optimizer/hi");
    if (!(b.lo < b.hi)) bad("/optimizer", "lo must be below hi");
    cfg.optimizer.bounds.clear();
    if (b.lo != -1.0 || b.hi != 1.0) cfg.optimizer.bounds.push_back(b);  // expanded per dimension later
  }

  if (root.contains("evaluator")) {
    const auto& e = root["evaluator"];
    reject_unknown(e, "/evaluator",
                   {"name", "train", "dev", "test", "l2_grid", "dev_pairs", "test_pairs", "command", "work_dir"});
    if (e.contains("name")) cfg.evaluator.name = get_string(e["name"], "/evaluator/name");
    if (e.contains("train")) cfg.evaluator.train_path = get_path(e["train"], "/evaluator/train", base_dir);
    if (e.contains("dev")) cfg.evaluator.dev_path = get_path(e["dev"], "/evaluator/dev", base_dir);
    if (e.contains("test")) cfg.evaluator.test_path = get_path(e["test"], "/evaluator/test", base_dir);
    if (e.contains("dev_pairs")) cfg.evaluator.dev_pairs_path = get_path(e["dev_pairs"], "/evaluator/dev_pairs", base_dir);
    if (e.contains("test_pairs")) {
      cfg.evaluator.test_pairs_path = get_path(e["test_pairs"], "/evaluator/test_pairs", base_dir);
    }
    if (e.contains("command")) cfg.evaluator.command = get_string(e["command"], "/evaluator/command");
    if (e.contains("work_dir")) cfg.evaluator.work_dir = get_path(e["work_dir"], "/evaluator/work_dir", base_dir);
    if (e.contains("l2_grid")) {
      const auto& g = e["l2_grid"];
      if (!g.is_array() || g.empty()) bad("/evaluator/l2_grid", "expected a non-empty array");
      cfg.evaluator.l2_grid.clear();
      for (std::size_t i = 0; i < g.size(); ++i) {
        const double v = get_number(g[i], "/evaluator/l2_grid/" + std::to_string(i));
        if (!(v >= 0.0)) bad("/evaluator/l2_grid/" + std::to_string(i), "must be >= 0");
        cfg.evaluator.l2_grid.push_back(v);
      }
    }
    const auto& known = known_evaluators();
    if (std::find(known.begin(), known.end(), cfg.evaluator.name) == known.end()) {
      std::string list;
      for (const auto& n : known) list += (list.empty() ? "" : ", ") + n;
      bad("/evaluator/name", "unknown evaluator '" + cfg.evaluator.name + "' (known: " + list + ")");
    }
    const auto need = [&](const fs::path& p, const char* key) {
      if (p.empty()) bad(std::string("/evaluator/") + key, "required by evaluator '" + cfg.evaluator.name + "'");
    };
    if (cfg.evaluator.name == "avg_classifier") {
      need(cfg.evaluator.train_path, "train");
      need(cfg.evaluator.dev_path, "dev");
      need(cfg.evaluator.test_path, "test");
    } else if (cfg.evaluator.name == "word_similarity") {
      need(cfg.evaluator.dev_pairs_path, "dev_pairs");
      need(cfg.evaluator.test_pairs_path, "test_pairs");
    } else if (cfg.evaluator.command.empty()) {
      bad("/evaluator/command", "required by evaluator 'subprocess'");
    }
  } else {
    bad("/evaluator", "required key is missing");
  }

  if (root.contains("baselines")) {
    const auto& b = root["baselines"];
    reject_unknown(b, "/baselines", {"shuffles"});
    if (b.contains("shuffles")) cfg.shuffles = static_cast<int>(get_integer(b["shuffles"], "/baselines/shuffles", 1));
  }
  if (root.contains("sort")) {
    const auto& s = root["sort"];
    reject_unknown(s, "/sort", {"weights"});
    if (s.contains("weights")) {
      if (!s["weights"].is_object()) bad("/sort/weights", "expected an object of feature -> weight");
      for (auto it = s["weights"].begin(); it != s["weights"].end(); ++it) {
        const auto& names = all_feature_names();
        if (std::find(names.begin(), names.end(), it.key()) == names.end()) {
          bad("/sort/weights/" + it.key(), "unknown feature");
        }
        cfg.sort_weights[it.key()] = get_number(it.value(), "/sort/weights/" + it.key());
      }
    }
  }
  if (root.contains("select")) {
    const auto& s = root["select"];
    reject_unknown(s, "/select", {"fraction", "curriculum"});
    if (s.contains("fraction")) {
      cfg.select_fraction = get_number(s["fraction"], "/select/fraction");
      if (!(cfg.select_fraction > 0.0 && cfg.select_fraction <= 1.0)) bad("/select/fraction", "must lie in (0, 1]");
    }
    if (s.contains("curriculum")) cfg.select_curriculum = get_path(s["curriculum"], "/select/curriculum", base_dir);
  }
  if (root.contains("analyze")) {
    const auto& a = root["analyze"];
    reject_unknown(a, "/analyze", {"curricula"});
    if (a.contains("curricula")) {
      if (!a["curricula"].is_object()) bad("/analyze/curricula", "expected an object of name -> path");
      for (auto it = a["curricula"].begin(); it != a["curricula"].end(); ++it) {
        cfg.analyze_curricula.emplace_back(it.key(),
                                           get_path(it.value(), "/analyze/curricula/" + it.key(), base_dir));
      }
    }
  }
  return cfg;
}

RunConfig load_run_config(const fs::path& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError("cannot open config " + path.string());
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_run_config(ss.str(), path.parent_path().empty() ? fs::path(".") : path.parent_path());
}

std::string history_file_name(FeatureGroup group) {
  return "history_" + std::string(group_name(group)) + ".jsonl";
}

std::string cmd_preprocess(const RunConfig& cfg) {
  const Corpus corpus = load_corpus(cfg.corpus);
  if (corpus.size() == 0) throw ValidationError("corpus " + cfg.corpus.string() + " has no paragraphs");
  const Vocabulary vocab = build_vocabulary(corpus, cfg.min_count);
  fs::create_directories(cfg.output);
  vocab.save_tsv(cfg.output / artifacts::kVocabulary);
  return "preprocess: " + std::to_string(corpus.size()) + " paragraphs, " + std::to_string(corpus.token_count()) +
         " tokens, " + std::to_string(vocab.size()) + " types -> " + (cfg.output / artifacts::kVocabulary).string();
}

std::string cmd_extract(const RunConfig& cfg) {
  const Corpus corpus = load_prepared_corpus(cfg);
  FeatureSpec spec = FeatureSpec::for_groups(cfg.groups);
  if (spec.has_parse_features() && !cfg.resources.annotations) {
    if (!cfg.allow_missing_annotations) {
      throw ValidationError(
          "simplicity features need parse annotations but resources.annotations is not set; provide an annotation "
          "file or set features.allow_missing_annotations=true to drop the parse-derived features "
          "(verb_token_ratio, noun_token_ratio, parse_tree_depth, num_noun_phrases, num_verb_phrases, "
          "num_prep_phrases)");
    }
    log_warning("no parse annotations; dropping the parse-derived simplicity features");
    spec = spec.without_parse_features();
  }
  if (spec.size() == 0) throw ValidationError("no features enabled");

  ResourceBundle res;
  const auto& rp = cfg.resources;
  if (rp.aoa) res.aoa = load_aoa_table(*rp.aoa);
  if (rp.concreteness) res.concreteness = load_concreteness_table(*rp.concreteness);
  if (rp.syllables) res.syllables = load_syllable_table(*rp.syllables);
  if (rp.titles) res.titles = load_titles(*rp.titles);
  const auto category_map = [&](const fs::path& p) {
    return build_category_map(corpus, load_category_membership(p));
  };
  if (rp.supersenses) res.supersenses = category_map(*rp.supersenses);
  if (rp.synsets) res.synsets = category_map(*rp.synsets);
  if (rp.annotations && spec.only(FeatureGroup::kSimplicity).size() > 0) {
    res.annotations = load_annotations(*rp.annotations);
  }

  fs::create_directories(cfg.output);
  std::optional<EmbeddingMatrix> bootstrap;
  const bool need_bootstrap =
      spec.contains("quadratic_entropy") || (spec.contains("imageability") && rp.imageability_seeds);
  if (need_bootstrap) {
    bootstrap = train_cbow(corpus, baseline_coherent(corpus.size()), cfg.cbow_config());
    save_embeddings(*bootstrap, cfg.output / artifacts::kBootstrap);
  }
  if (rp.imageability_seeds && spec.contains("imageability")) {
    std::vector<std::pair<std::string, double>> seeds;
    for (auto& [word, rating] : load_seed_ratings(*rp.imageability_seeds)) {
      if (!bootstrap->contains(word)) {
        log_warning("imageability seed '" + word + "' is not in the vocabulary; skipped");
        continue;
      }
      seeds.emplace_back(std::move(word), rating);
    }
    try {
      res.imageability = propagate_imageability(seeds, *bootstrap, cfg.imageability_l2);
    } catch (const std::invalid_argument& e) {
      throw ValidationError(std::string("imageability seeds: ") + e.what());
    }
  }
  std::optional<SimilarityProvider> sim;
  if (bootstrap && spec.contains("quadratic_entropy")) sim.emplace(corpus.vocabulary(), *bootstrap);
  std::optional<LanguageModels> lms;
  if (spec.contains("word_lm_score") || spec.contains("char_lm_score")) lms = train_language_models(corpus);

  const FeatureInputs inputs{&res, lms ? &*lms : nullptr, sim ? &*sim : nullptr};
  const FeatureMatrix m = extract_features(corpus, spec, inputs);
  m.save_tsv(cfg.output / artifacts::kFeatures);
  return "extract: " + std::to_string(m.rows()) + " features x " + std::to_string(m.cols()) + " paragraphs -> " +
         (cfg.output / artifacts::kFeatures).string();
}

std::string cmd_sort(const RunConfig& cfg) {
  const Corpus corpus = load_prepared_corpus(cfg);
  const FeatureMatrix m = load_features(cfg, corpus);
  std::vector<double> w(m.rows(), 0.0);
  for (const auto& [name, value] : cfg.sort_weights) {
    if (!m.spec().contains(name)) {
      throw ValidationError("config /sort/weights/" + name + ": feature is not in " + artifacts::kFeatures);
    }
    w[m.spec().position(name)] = value;
  }
  const Curriculum c = curriculum_from_weights(WeightVector(w), znormalize(m), "source=config");
  c.save(cfg.output / artifacts::kCurriculum);
  return "sort: " + std::to_string(c.size()) + " paragraphs ordered -> " +
         (cfg.output / artifacts::kCurriculum).string();
}

std::string cmd_train(const RunConfig& cfg) {
  const Corpus corpus = load_prepared_corpus(cfg);
  const Curriculum c = Curriculum::load(require_artifact(cfg, artifacts::kCurriculum, "sort"));
  if (c.size() != corpus.size()) {
    throw ValidationError(std::string(artifacts::kCurriculum) + " does not match the corpus; run `sort` again");
  }
  const EmbeddingMatrix m = train_for(cfg, corpus, c);
  save_embeddings(m, cfg.output / artifacts::kEmbeddings);
  return "train: " + std::to_string(m.size()) + " vectors of dim " + std::to_string(m.dim()) + " -> " +
         (cfg.output / artifacts::kEmbeddings).string();
}

std::string cmd_evaluate(const RunConfig& cfg) {
  const EmbeddingMatrix m = load_embeddings(require_artifact(cfg, artifacts::kEmbeddings, "train"));
  const auto evaluator = evaluator_for(cfg);
  const EvalResult r = evaluator->evaluate(m);
  nlohmann::ordered_json j;
  j["evaluator"] = evaluator->name();
  j["metric"] = r.metric;
  j["dev"] = r.dev_score;
  j["test"] = r.test_score;
  std::ofstream out(cfg.output / artifacts::kEvaluation);
  out << j.dump(2) << '\n';
  if (!out) throw Error("failed writing " + (cfg.output / artifacts::kEvaluation).string());
  return "evaluate: " + evaluator->name() + " " + r.metric + " dev=" + fmt(r.dev_score) +
         " test=" + fmt(r.test_score);
}

std::string cmd_analyze(const RunConfig& cfg) {
  const Corpus corpus = load_prepared_corpus(cfg);
  std::vector<std::pair<std::string, fs::path>> files = cfg.analyze_curricula;
  if (files.empty() && fs::exists(cfg.output)) {
    for (const auto& entry : fs::directory_iterator(cfg.output)) {
      const auto name = entry.path().filename().string();
      if (name.rfind("curriculum", 0) == 0 && entry.path().extension() == ".tsv") {
        files.emplace_back(entry.path().stem().string(), entry.path());
      }
    }
    std::sort(files.begin(), files.end());
  }
  if (files.size() < 2) {
    throw ValidationError("analyze needs at least two curricula; run `sort` or `optimize` first, or list them "
                          "under analyze.curricula");
  }
  std::vector<std::pair<std::string, Curriculum>> curricula;
  for (const auto& [name, path] : files) curricula.emplace_back(name, Curriculum::load(path));
  const auto report = correlation_report(curricula, corpus);
  report.save_tsv(cfg.output / artifacts::kCorrelations);
  return "analyze: " + std::to_string(files.size()) + " curricula compared -> " +
         (cfg.output / artifacts::kCorrelations).string();
}

std::string cmd_select(const RunConfig& cfg) {
  const Corpus corpus = load_prepared_corpus(cfg);
  const fs::path path = cfg.select_curriculum ? *cfg.select_curriculum
                                              : require_artifact(cfg, artifacts::kCurriculum, "sort");
  const Curriculum c = Curriculum::load(path);
  const Corpus reduced = select_top_tokens(c, corpus, cfg.select_fraction);
  reduced.save_text(cfg.output / artifacts::kSelected);
  return "select: " + std::to_string(reduced.size()) + " paragraphs, " + std::to_string(reduced.token_count()) +
         " of " + std::to_string(corpus.token_count()) + " tokens -> " + (cfg.output / artifacts::kSelected).string();
}

std::size_t median_closest(const std::vector<double>& dev_scores) {
  const double med = median(dev_scores);
  std::size_t best = 0;
  for (std::size_t i = 1; i < dev_scores.size(); ++i) {
    if (std::abs(dev_scores[i] - med) < std::abs(dev_scores[best] - med)) best = i;
  }
  return best;
}

std::string cmd_optimize(const RunConfig& cfg) {
  const Corpus corpus = load_prepared_corpus(cfg);
  const FeatureMatrix normalized = znormalize(load_features(cfg, corpus));
  const auto evaluator = evaluator_for(cfg);
  const auto run = [&](const Curriculum& c) { return evaluator->evaluate(train_for(cfg, corpus, c)); };

  std::vector<SystemScore> report;
  std::vector<SystemScore> optimized;
  std::string summary;
  for (const FeatureGroup group : cfg.groups) {
    const FeatureSpec spec = normalized.spec().only(group);
    const std::string gname(group_name(group));
    if (spec.size() == 0) {
      log_warning("no " + gname + " features in " + artifacts::kFeatures + "; group skipped");
      continue;
    }
    const FeatureMatrix sub = normalized.select(spec);
    OptimizerConfig oc = cfg.optimizer;
    oc.seed = mix_seed(cfg.master_seed(), kOptimizerStream);
    if (!oc.bounds.empty()) oc.bounds.assign(spec.size(), oc.bounds.front());
    const auto objective = [&](const std::vector<double>& w, int) {
      const EvalResult r = run(curriculum_from_weights(WeightVector(w), sub));
      return TrialScores{r.dev_score, r.test_score};
    };
    const auto result = optimize(objective, spec.size(), oc, cfg.output / history_file_name(group));
    const Observation& best = result.history[result.best];
    if (best.failed) throw Error("every " + gname + " trial failed");
    curriculum_from_weights(WeightVector(best.w), sub, "group=" + gname + " trial=" + std::to_string(best.trial))
        .save(cfg.output / ("curriculum_optimized_" + gname + ".tsv"));
    optimized.push_back({"optimized_" + gname, best.dev_score, best.test_score});
    summary += " optimized_" + gname + " dev=" + fmt(best.dev_score);
  }

  std::vector<SystemScore> baselines;
  std::vector<double> shuffled_dev;
  for (int i = 0; i < cfg.shuffles; ++i) {
    const auto c = baseline_shuffled(corpus.size(), mix_seed(cfg.master_seed(), kShuffleStream + i));
    const EvalResult r = run(c);
    baselines.push_back({"shuffled_" + std::to_string(i), r.dev_score, r.test_score});
    shuffled_dev.push_back(r.dev_score);
  }
  const auto sorted_long = baseline_length_sorted(corpus, LengthDirection::kLongToShort);
  const auto sorted_short = baseline_length_sorted(corpus, LengthDirection::kShortToLong);
  const auto coherent = baseline_coherent(corpus.size());
  sorted_long.save(cfg.output / "curriculum_long_to_short.tsv");
  sorted_short.save(cfg.output / "curriculum_short_to_long.tsv");
  coherent.save(cfg.output / "curriculum_coherent.tsv");
  for (const auto& [name, c] : {std::pair<const char*, const Curriculum*>{"long_to_short", &sorted_long},
                                {"short_to_long", &sorted_short},
                                {"coherent", &coherent}}) {
    const EvalResult r = run(*c);
    baselines.push_back({name, r.dev_score, r.test_score});
  }
  write_scores(cfg.output / artifacts::kBaselines, baselines);

  const std::size_t med = median_closest(shuffled_dev);
  const std::size_t best = static_cast<std::size_t>(
      std::max_element(shuffled_dev.begin(), shuffled_dev.end()) - shuffled_dev.begin());
  report.push_back({"shuffled_median", baselines[med].dev, baselines[med].test});
  report.push_back({"shuffled_best", baselines[best].dev, baselines[best].test});
  for (std::size_t i = static_cast<std::size_t>(cfg.shuffles); i < baselines.size(); ++i) {
    report.push_back(baselines[i]);
  }
  report.insert(report.end(), optimized.begin(), optimized.end());
  write_scores(cfg.output / artifacts::kReport, report);
  return "optimize:" + summary + " shuffled_median dev=" + fmt(baselines[med].dev) + " -> " +
         (cfg.output / artifacts::kReport).string();
}

std::vector<SystemScore> load_report(const fs::path& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open " + path.string());
  std::vector<SystemScore> rows;
  std::string line;
  std::getline(in, line);
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    const auto f = split(line, '\t');
    if (f.size() != 3) throw Error(path.string() + ": expected system<TAB>dev<TAB>test");
    rows.push_back({f[0], parse_double(f[1], path.string()), parse_double(f[2], path.string())});
  }
  return rows;
}

}  // namespace curricula
