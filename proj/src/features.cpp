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

#include "curricula/features.hpp"

#include <algorithm>
#include <cmath>
#include <unordered_map>

#include "curricula/common.hpp"

namespace curricula {

SimilarityProvider::SimilarityProvider(const Vocabulary& vocab, const EmbeddingMatrix& embeddings)
    : dim_(static_cast<std::size_t>(embeddings.dim())),
      units_(vocab.size() * static_cast<std::size_t>(embeddings.dim()), 0.0),
      sq_norms_(vocab.size(), 0.0) {
  for (std::size_t id = 0; id < vocab.size(); ++id) {
    const auto row = embeddings.row_or_unk(vocab.word(static_cast<WordId>(id)));
    if (row < 0) continue;
    const auto v = embeddings.input(static_cast<std::size_t>(row));
    double norm = 0.0;
    for (const double x : v) norm += x * x;
    norm = std::sqrt(norm);
    if (norm == 0.0) continue;
    double* out = units_.data() + id * dim_;
    for (std::size_t k = 0; k < dim_; ++k) out[k] = v[k] / norm;
    sq_norms_[id] = 1.0;
  }
}

double SimilarityProvider::similarity(WordId a, WordId b) const {
  if (a == b) return 1.0;
  const auto ua = unit(a);
  const auto ub = unit(b);
  double dot = 0.0;
  for (std::size_t k = 0; k < dim_; ++k) dot += ua[k] * ub[k];
  return std::clamp(dot, -1.0, 1.0);
}

std::vector<double> global_type_probabilities(const Corpus& corpus) {
  std::vector<double> probs(corpus.vocabulary().size(), 0.0);
  double total = 0.0;
  for (std::size_t i = 0; i < corpus.size(); ++i) {
    for (const WordId id : corpus.ids(i)) probs[static_cast<std::size_t>(id)] += 1.0;
    total += static_cast<double>(corpus.ids(i).size());
  }
  if (total > 0.0) {
    for (double& p : probs) p /= total;
  }
  return probs;
}

std::array<double, 5> diversity_features(std::span<const WordId> ids, std::span<const double> global_probs,
                                         const SimilarityProvider& sim) {
  std::array<double, 5> out{};
  if (ids.empty()) return out;
  std::vector<WordId> types(ids.begin(), ids.end());
  std::sort(types.begin(), types.end());

  const double n = static_cast<double>(ids.size());
  double entropy = 0.0;
  double simpson = 0.0;
  std::size_t num_types = 0;
  for (std::size_t i = 0; i < types.size();) {
    std::size_t j = i;
    while (j < types.size() && types[j] == types[i]) ++j;
    const double p = static_cast<double>(j - i) / n;
    entropy -= p * std::log(p);
    simpson += p * p;
    types[num_types++] = types[i];
    i = j;
  }
  types.resize(num_types);

  // Σ_ij d_ij p_i p_j = ‖Σ p_i u_i‖² − Σ p_i² ‖u_i‖² + Σ p_i²  (d_ii = 1)
  double quadratic = 0.0;
  if (sim.size() > 0) {
    std::vector<double> acc(sim.dim(), 0.0);
    double diag_fix = 0.0;
    for (const WordId t : types) {
      const double p = global_probs[static_cast<std::size_t>(t)];
      const auto u = sim.unit(t);
      for (std::size_t k = 0; k < acc.size(); ++k) acc[k] += p * u[k];
      diag_fix += p * p * (1.0 - sim.squared_norm(t));
    }
    for (const double a : acc) quadratic += a * a;
    quadratic += diag_fix;
  }

  out[0] = static_cast<double>(num_types);
  out[1] = static_cast<double>(num_types) / n;
  out[2] = entropy;
  out[3] = simpson;
  out[4] = quadratic;
  return out;
}

LanguageModels train_language_models(const Corpus& corpus) {
  return {train_ngram_lm(corpus, kWordLmOrder, kLmSmoothing), train_char_lm(corpus, kCharLmOrder, kLmSmoothing)};
}

std::array<double, 9> simplicity_features(const Paragraph& p, std::span<const WordId> ids,
                                          const LanguageModels& lms,
                                          const std::vector<SentenceRecord>* sentences) {
  std::array<double, 9> out{};
  if (lms.word.order() > 0) out[0] = lms.word.mean_log_probability(ids);
  if (lms.chars.order() > 0) out[1] = lms.chars.mean_log_probability(char_symbols(p.tokens));
  const double tokens = static_cast<double>(p.tokens.size());
  if (sentences == nullptr || sentences->empty()) {
    out[2] = tokens;
    return out;
  }
  const double n_sent = static_cast<double>(sentences->size());
  out[2] = tokens / n_sent;
  double verbs = 0.0;
  double nouns = 0.0;
  double depth = 0.0;
  for (const auto& s : *sentences) {
    for (const auto& tag : s.pos) {
      if (!tag.empty() && tag[0] == 'V') verbs += 1.0;
      if (!tag.empty() && tag[0] == 'N') nouns += 1.0;
    }
    depth += s.depth;
    out[6] += s.noun_phrases;
    out[7] += s.verb_phrases;
    out[8] += s.prep_phrases;
  }
  if (tokens > 0.0) {
    out[3] = verbs / tokens;
    out[4] = nouns / tokens;
  }
  out[5] = depth / n_sent;
  return out;
}

namespace {

template <typename Table>
double token_mean(const std::vector<std::string>& tokens, const Table& table) {
  if (tokens.empty()) return 0.0;
  double sum = 0.0;
  for (const auto& t : tokens) sum += table(t);
  return sum / static_cast<double>(tokens.size());
}

}  // namespace

std::array<double, 7> prototypicality_features(const Paragraph& p, std::span<const WordId> /*ids*/,
                                               const Vocabulary& /*vocab*/, const ResourceBundle& res) {
  const auto& tokens = p.tokens;
  std::array<double, 7> out{};
  out[0] = res.aoa ? token_mean(tokens, [&](const std::string& w) { return res.aoa->lookup(w); })
                   : kDefaultAgeOfAcquisition;
  out[1] = res.concreteness
               ? token_mean(tokens, [&](const std::string& w) { return res.concreteness->lookup(w); })
               : kDefaultConcreteness;
  out[2] = res.imageability
               ? token_mean(tokens, [&](const std::string& w) { return res.imageability->lookup(w); })
               : 0.5;
  if (res.titles && !tokens.empty()) {
    out[3] = static_cast<double>(res.titles->count_matches(tokens)) / static_cast<double>(tokens.size());
  }
  out[4] = res.syllables ? token_mean(tokens, [&](const std::string& w) { return res.syllables->lookup(w); })
                         : kDefaultSyllables;
  if (res.supersenses) {
    out[5] = token_mean(tokens, [&](const std::string& w) { return res.supersenses->word_value(w); });
  }
  if (res.synsets) {
    out[6] = token_mean(tokens, [&](const std::string& w) { return res.synsets->word_value(w); });
  }
  return out;
}

namespace {

const char* missing_dependency(std::string_view feature, const FeatureInputs& in) {
  const ResourceBundle* r = in.resources;
  if (feature == "quadratic_entropy") return in.similarity == nullptr ? "bootstrap embeddings" : nullptr;
  if (feature == "word_lm_score" || feature == "char_lm_score") {
    return in.lms == nullptr ? "language models" : nullptr;
  }
  if (is_parse_feature(feature)) return (r == nullptr || !r->annotations) ? "parse annotations" : nullptr;
  if (feature == "age_of_acquisition") return (r == nullptr || !r->aoa) ? "age-of-acquisition table" : nullptr;
  if (feature == "concreteness") return (r == nullptr || !r->concreteness) ? "concreteness table" : nullptr;
  if (feature == "imageability") return (r == nullptr || !r->imageability) ? "imageability model" : nullptr;
  if (feature == "conventionalization") return (r == nullptr || !r->titles) ? "title list" : nullptr;
  if (feature == "num_syllables") return (r == nullptr || !r->syllables) ? "syllable table" : nullptr;
  if (feature == "supersense_rel_freq") return (r == nullptr || !r->supersenses) ? "supersense map" : nullptr;
  if (feature == "synset_rel_freq") return (r == nullptr || !r->synsets) ? "synset map" : nullptr;
  return nullptr;
}

// Row in the concatenated 21-value kernel output for each spec position.
struct Layout {
  std::vector<std::size_t> source;
  bool diversity = false;
  bool simplicity = false;
  bool prototypicality = false;
};

Layout make_layout(const FeatureSpec& spec) {
  Layout l;
  const auto& all = all_feature_names();
  for (const auto& name : spec.names()) {
    const auto it = std::find(all.begin(), all.end(), name);
    l.source.push_back(static_cast<std::size_t>(it - all.begin()));
    switch (feature_group(name)) {
      case FeatureGroup::kDiversity: l.diversity = true; break;
      case FeatureGroup::kSimplicity: l.simplicity = true; break;
      case FeatureGroup::kPrototypicality: l.prototypicality = true; break;
    }
  }
  return l;
}

struct Kernel {
  const Corpus& corpus;
  const FeatureInputs& in;
  const Layout& layout;
  const std::vector<double>& global_probs;
  const SimilarityProvider empty_similarity{};
  const LanguageModels empty_lms{};
  const ResourceBundle empty_resources{};

  void operator()(std::size_t i, FeatureMatrix& m) const {
    const Paragraph& p = corpus[i];
    const auto& ids = corpus.ids(i);
    std::array<double, 21> v{};
    if (layout.diversity) {
      const auto d = diversity_features(ids, global_probs, in.similarity ? *in.similarity : empty_similarity);
      std::copy(d.begin(), d.end(), v.begin());
    }
    const ResourceBundle& res = in.resources ? *in.resources : empty_resources;
    if (layout.simplicity) {
      const std::vector<SentenceRecord>* sentences = res.annotations ? &res.annotations->paragraphs[i] : nullptr;
      const auto s = simplicity_features(p, ids, in.lms ? *in.lms : empty_lms, sentences);
      std::copy(s.begin(), s.end(), v.begin() + 5);
    }
    if (layout.prototypicality) {
      const auto q = prototypicality_features(p, ids, corpus.vocabulary(), res);
      std::copy(q.begin(), q.end(), v.begin() + 14);
    }
    for (std::size_t r = 0; r < layout.source.size(); ++r) m.at(r, i) = v[layout.source[r]];
  }
};

FeatureMatrix extract_impl(const Corpus& corpus, const FeatureSpec& spec, const FeatureInputs& inputs,
                           bool parallel) {
  if (!corpus.has_vocabulary()) throw std::invalid_argument("feature extraction requires a vocabulary");
  check_feature_dependencies(spec, inputs);
  const Layout layout = make_layout(spec);
  if (layout.simplicity && inputs.resources != nullptr && inputs.resources->annotations) {
    inputs.resources->annotations->check_alignment(corpus);
  }
  const std::vector<double> probs = layout.diversity ? global_type_probabilities(corpus) : std::vector<double>{};
  const Kernel kernel{corpus, inputs, layout, probs};
  FeatureMatrix m(spec, corpus.size());
  const auto n = static_cast<std::ptrdiff_t>(corpus.size());
  if (parallel) {
#pragma omp parallel for schedule(dynamic, 64)
    for (std::ptrdiff_t i = 0; i < n; ++i) kernel(static_cast<std::size_t>(i), m);
  } else {
    for (std::ptrdiff_t i = 0; i < n; ++i) kernel(static_cast<std::size_t>(i), m);
  }
  if (!m.all_finite()) throw Error("feature extraction produced a non-finite value");
  return m;
}

}  // namespace

void check_feature_dependencies(const FeatureSpec& spec, const FeatureInputs& inputs) {
  for (const auto& name : spec.names()) {
    if (const char* dep = missing_dependency(name, inputs)) {
      throw ValidationError("feature '" + name + "' requires " + dep + ", which is not available");
    }
  }
}

FeatureMatrix extract_features(const Corpus& corpus, const FeatureSpec& spec, const FeatureInputs& inputs) {
  return extract_impl(corpus, spec, inputs, true);
}

FeatureMatrix extract_features_serial(const Corpus& corpus, const FeatureSpec& spec,
                                      const FeatureInputs& inputs) {
  return extract_impl(corpus, spec, inputs, false);
}

}  // namespace curricula
