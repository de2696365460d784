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


// Downstream scoring of embeddings. The optimizer only ever sees dev_score.

#ifndef CURRICULA_EVALUATION_HPP_
#define CURRICULA_EVALUATION_HPP_

#include <filesystem>
#include <memory>
#include <string>
#include <vector>

#include "curricula/embeddings.hpp"
#include "curricula/logreg.hpp"

namespace curricula {

struct LabeledExample {
  int label = 0;
  std::vector<std::string> tokens;
};

struct LabeledTextDataset {
  std::vector<LabeledExample> train;
  std::vector<LabeledExample> dev;
  std::vector<LabeledExample> test;

  /// Throws ValidationError when a sentence occurs in two splits.
  void check_disjoint() const;
};

/// TSV `label<TAB>token token ...`; tokens are normalized like the corpus.
std::vector<LabeledExample> load_labeled_split(const std::filesystem::path& path);
void save_labeled_split(const std::vector<LabeledExample>& split, const std::filesystem::path& path);
LabeledTextDataset load_labeled_dataset(const std::filesystem::path& train, const std::filesystem::path& dev,
                                        const std::filesystem::path& test);

struct EvalResult {
  double dev_score = 0.0;
  double test_score = 0.0;
  std::string metric;
};

/// Mean of token vectors (input side); absent tokens use the UNK row and are
/// skipped when there is none. Zero vector when nothing remains.
std::vector<double> sentence_vector(const std::vector<std::string>& tokens, const EmbeddingMatrix& m);
DenseRows sentence_vectors(const std::vector<LabeledExample>& split, const EmbeddingMatrix& m);

inline const std::vector<double> kDefaultL2Grid = {1e-4, 1e-3, 1e-2, 1e-1};

/// Trains one model per l2 value, keeps the best dev accuracy (ties to the
/// smaller l2) and reports its dev and test accuracy. `chosen_l2` receives
/// the selected value.
EvalResult eval_avg_classifier(const EmbeddingMatrix& m, const LabeledTextDataset& d,
                               const std::vector<double>& l2_grid, double* chosen_l2 = nullptr);

struct WordPair {
  std::string a;
  std::string b;
  double score = 0.0;
};

/// TSV `word<TAB>word<TAB>score`.
std::vector<WordPair> load_word_pairs(const std::filesystem::path& path);

/// Spearman correlation between cosine and human scores over the pairs whose
/// words are both in `m`; 0 when fewer than two pairs remain.
double word_similarity_score(const EmbeddingMatrix& m, const std::vector<WordPair>& pairs);

/// Settings for every built-in evaluator; each uses only its own fields.
struct EvaluatorConfig {
  std::string name = "avg_classifier";
  // avg_classifier
  std::filesystem::path train_path;
  std::filesystem::path dev_path;
  std::filesystem::path test_path;
  std::vector<double> l2_grid = kDefaultL2Grid;
  // word_similarity
  std::filesystem::path dev_pairs_path;
  std::filesystem::path test_pairs_path;
  // subprocess: `{vectors}` in the command is replaced by the vector file
  std::string command;
  std::filesystem::path work_dir;  // empty means the current directory
};

class Evaluator {
 public:
  virtual ~Evaluator() = default;
  virtual std::string name() const = 0;
  virtual EvalResult evaluate(const EmbeddingMatrix& m) const = 0;
};

const std::vector<std::string>& known_evaluators();

/// Throws ValidationError listing the known names when `cfg.name` is unknown.
std::unique_ptr<Evaluator> make_evaluator(const EvaluatorConfig& cfg);

}  // namespace curricula

#endif  // CURRICULA_EVALUATION_HPP_
