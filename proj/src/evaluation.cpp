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


#include "curricula/evaluation.hpp"

#include <sys/wait.h>

#include <algorithm>
#include <array>
#include <atomic>
#include <cstdio>
#include <fstream>
#include <set>

#include "curricula/common.hpp"
#include "curricula/corpus.hpp"
#include "curricula/stats.hpp"

namespace curricula {

namespace {

std::string joined(const std::vector<std::string>& tokens) {
  std::string out;
  for (const auto& t : tokens) {
    if (!out.empty()) out += ' ';
    out += t;
  }
  return out;
}

}  // namespace

void LabeledTextDataset::check_disjoint() const {
  std::set<std::string> seen_train, seen_dev;
  for (const auto& e : train) seen_train.insert(joined(e.tokens));
  for (const auto& e : dev) {
    const auto s = joined(e.tokens);
    if (seen_train.count(s)) throw ValidationError("dataset splits overlap: '" + s + "' is in train and dev");
    seen_dev.insert(s);
  }
  for (const auto& e : test) {
    const auto s = joined(e.tokens);
    if (seen_train.count(s)) throw ValidationError("dataset splits overlap: '" + s + "' is in train and test");
    if (seen_dev.count(s)) throw ValidationError("dataset splits overlap: '" + s + "' is in dev and test");
  }
}

std::vector<LabeledExample> load_labeled_split(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError("cannot open dataset split " + path.string());
  std::vector<LabeledExample> out;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    const auto tab = line.find('\t');
    const std::string where = path.string() + ":" + std::to_string(lineno);
    if (tab == std::string::npos) throw Error(where + ": expected label<TAB>tokens");
    const long long label = parse_int(std::string_view(line).substr(0, tab), where);
    if (label != 0 && label != 1) throw Error(where + ": label must be 0 or 1");
    out.push_back({static_cast<int>(label), tokenize_line(std::string_view(line).substr(tab + 1))});
  }
  return out;
}

void save_labeled_split(const std::vector<LabeledExample>& split, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw Error("cannot write " + path.string());
  for (const auto& e : split) out << e.label << '\t' << joined(e.tokens) << '\n';
  if (!out) throw Error("failed writing " + path.string());
}

LabeledTextDataset load_labeled_dataset(const std::filesystem::path& train, const std::filesystem::path& dev,
                                        const std::filesystem::path& test) {
  LabeledTextDataset d{load_labeled_split(train), load_labeled_split(dev), load_labeled_split(test)};
  d.check_disjoint();
  return d;
}

std::vector<double> sentence_vector(const std::vector<std::string>& tokens, const EmbeddingMatrix& m) {
  std::vector<double> v(static_cast<std::size_t>(m.dim()), 0.0);
  std::size_t used = 0;
  for (const auto& t : tokens) {
    const auto row = m.row_or_unk(t);
    if (row < 0) continue;
    const auto in = m.input(static_cast<std::size_t>(row));
    for (std::size_t k = 0; k < v.size(); ++k) v[k] += in[k];
    ++used;
  }
  if (used > 0) {
    for (double& x : v) x /= static_cast<double>(used);
  }
  return v;
}

DenseRows sentence_vectors(const std::vector<LabeledExample>& split, const EmbeddingMatrix& m) {
  DenseRows rows(split.size(), static_cast<std::size_t>(m.dim()));
  for (std::size_t i = 0; i < split.size(); ++i) {
    const auto v = sentence_vector(split[i].tokens, m);
    std::copy(v.begin(), v.end(), rows.row(i).begin());
  }
  return rows;
}

EvalResult eval_avg_classifier(const EmbeddingMatrix& m, const LabeledTextDataset& d,
                               const std::vector<double>& l2_grid, double* chosen_l2) {
  if (l2_grid.empty()) throw std::invalid_argument("l2 grid is empty");
  const DenseRows xtr = sentence_vectors(d.train, m);
  const DenseRows xdev = sentence_vectors(d.dev, m);
  const DenseRows xte = sentence_vectors(d.test, m);
  const auto labels = [](const std::vector<LabeledExample>& s) {
    std::vector<int> y;
    y.reserve(s.size());
    for (const auto& e : s) y.push_back(e.label);
    return y;
  };
  const auto ytr = labels(d.train), ydev = labels(d.dev), yte = labels(d.test);

  std::vector<LogRegModel> models(l2_grid.size());
  std::vector<double> dev_acc(l2_grid.size());
  const auto n = static_cast<std::ptrdiff_t>(l2_grid.size());
#pragma omp parallel for schedule(dynamic, 1)
  for (std::ptrdiff_t g = 0; g < n; ++g) {
    models[g] = train_logreg(xtr, ytr, l2_grid[g]);
    dev_acc[g] = models[g].accuracy(xdev, ydev);
  }
  std::size_t best = 0;
  for (std::size_t g = 1; g < l2_grid.size(); ++g) {
    if (dev_acc[g] > dev_acc[best] || (dev_acc[g] == dev_acc[best] && l2_grid[g] < l2_grid[best])) best = g;
  }
  if (chosen_l2 != nullptr) *chosen_l2 = l2_grid[best];
  return {dev_acc[best], models[best].accuracy(xte, yte), "accuracy"};
}

std::vector<WordPair> load_word_pairs(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError("cannot open word-pair file " + path.string());
  std::vector<WordPair> out;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    const auto f = split(line, '\t');
    const std::string where = path.string() + ":" + std::to_string(lineno);
    if (f.size() != 3) throw Error(where + ": expected word<TAB>word<TAB>score");
    out.push_back({normalize_token(f[0]), normalize_token(f[1]), parse_double(f[2], where)});
  }
  return out;
}

double word_similarity_score(const EmbeddingMatrix& m, const std::vector<WordPair>& pairs) {
  std::vector<double> model, human;
  for (const auto& p : pairs) {
    if (!m.contains(p.a) || !m.contains(p.b)) continue;
    model.push_back(cosine(m, p.a, p.b));
    human.push_back(p.score);
  }
  if (model.size() < 2) return 0.0;
  return spearman_rho(model, human);
}

namespace {

class AvgClassifierEvaluator final : public Evaluator {
 public:
  explicit AvgClassifierEvaluator(const EvaluatorConfig& cfg)
      : data_(load_labeled_dataset(cfg.train_path, cfg.dev_path, cfg.test_path)), grid_(cfg.l2_grid) {
    if (grid_.empty()) throw ValidationError("avg_classifier: l2_grid is empty");
  }
  std::string name() const override { return "avg_classifier"; }
  EvalResult evaluate(const EmbeddingMatrix& m) const override { return eval_avg_classifier(m, data_, grid_); }

 private:
  LabeledTextDataset data_;
  std::vector<double> grid_;
};

class WordSimilarityEvaluator final : public Evaluator {
 public:
  explicit WordSimilarityEvaluator(const EvaluatorConfig& cfg)
      : dev_(load_word_pairs(cfg.dev_pairs_path)), test_(load_word_pairs(cfg.test_pairs_path)) {}
  std::string name() const override { return "word_similarity"; }
  EvalResult evaluate(const EmbeddingMatrix& m) const override {
    return {word_similarity_score(m, dev_), word_similarity_score(m, test_), "spearman"};
  }

 private:
  std::vector<WordPair> dev_;
  std::vector<WordPair> test_;
};

class SubprocessEvaluator final : public Evaluator {
 public:
  explicit SubprocessEvaluator(const EvaluatorConfig& cfg)
      : command_(cfg.command), work_dir_(cfg.work_dir.empty() ? std::filesystem::path(".") : cfg.work_dir) {
    if (command_.find("{vectors}") == std::string::npos) {
      throw ValidationError("subprocess evaluator: command must contain {vectors}");
    }
  }
  std::string name() const override { return "subprocess"; }

  EvalResult evaluate(const EmbeddingMatrix& m) const override {
    std::filesystem::create_directories(work_dir_);
    const auto path = work_dir_ / ("eval_vectors_" + std::to_string(counter_++) + ".vec");
    save_embeddings(m, path);
    std::string cmd = command_;
    for (auto pos = cmd.find("{vectors}"); pos != std::string::npos; pos = cmd.find("{vectors}")) {
      cmd.replace(pos, 9, "'" + path.string() + "'");
    }
    FILE* pipe = popen(cmd.c_str(), "r");
    if (pipe == nullptr) throw Error("subprocess evaluator: cannot run '" + cmd + "'");
    std::string output;
    std::array<char, 4096> buf{};
    while (std::fgets(buf.data(), static_cast<int>(buf.size()), pipe) != nullptr) output += buf.data();
    const int status = pclose(pipe);
    std::filesystem::remove(path);
    if (status == -1 || !WIFEXITED(status) || WEXITSTATUS(status) != 0) {
      throw Error("subprocess evaluator: '" + cmd + "' failed");
    }
    std::string last;
    for (const auto& line : split(output, '\n')) {
      if (!split_whitespace(line).empty()) last = line;
    }
    const auto f = split_whitespace(last);
    if (f.size() != 2) throw Error("subprocess evaluator: expected 'dev<TAB>test' as the last output line");
    return {parse_double(f[0], "subprocess dev score"), parse_double(f[1], "subprocess test score"), "external"};
  }

 private:
  std::string command_;
  std::filesystem::path work_dir_;
  mutable std::atomic<std::uint64_t> counter_{0};
};

}  // namespace

const std::vector<std::string>& known_evaluators() {
  static const std::vector<std::string> names = {"avg_classifier", "word_similarity", "subprocess"};
  return names;
}

std::unique_ptr<Evaluator> make_evaluator(const EvaluatorConfig& cfg) {
  if (cfg.name == "avg_classifier") return std::make_unique<AvgClassifierEvaluator>(cfg);
  if (cfg.name == "word_similarity") return std::make_unique<WordSimilarityEvaluator>(cfg);
  if (cfg.name == "subprocess") return std::make_unique<SubprocessEvaluator>(cfg);
  std::string known;
  for (const auto& n : known_evaluators()) known += (known.empty() ? "" : ", ") + n;
  throw ValidationError("unknown evaluator '" + cfg.name + "' (known: " + known + ")");
}

}  // namespace curricula
