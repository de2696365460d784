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


#include "curricula/synthetic.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <set>
#include <string>
#include <vector>

#include <json.hpp>

#include "curricula/common.hpp"
#include "curricula/evaluation.hpp"
#include "curricula/resources.hpp"

namespace curricula {

namespace {

constexpr const char* kConsonants = "bdfgklmnprstvz";
constexpr const char* kVowels = "aeiou";

struct Lexicon {
  std::vector<std::string> function;         // closed-class words
  std::vector<std::string> clean_nouns;      // short, early-acquired, concrete
  std::vector<std::string> pos_context;      // co-occur with positive words in clean text
  std::vector<std::string> neg_context;
  std::vector<std::string> pos_train, pos_eval;
  std::vector<std::string> neg_train, neg_eval;
  std::vector<std::string> rare;             // long, late-acquired, abstract
};

class WordMaker {
 public:
  explicit WordMaker(Rng& rng) : rng_(rng) {}
  std::string make(int syllables) {
    for (;;) {
      std::string w;
      for (int s = 0; s < syllables; ++s) {
        w += kConsonants[uniform_index(rng_, 14)];
        w += kVowels[uniform_index(rng_, 5)];
      }
      if (used_.insert(w).second) return w;
    }
  }
  std::vector<std::string> make_many(std::size_t n, int min_syl, int max_syl) {
    std::vector<std::string> out;
    for (std::size_t i = 0; i < n; ++i) {
      out.push_back(make(min_syl + static_cast<int>(uniform_index(rng_, static_cast<std::uint64_t>(max_syl - min_syl + 1)))));
    }
    return out;
  }

 private:
  Rng& rng_;
  std::set<std::string> used_;
};

int syllables_of(const std::string& w) {
  int n = 0;
  for (const char c : w) n += std::string_view(kVowels).find(c) != std::string_view::npos ? 1 : 0;
  return std::max(n, 1);
}

template <typename T>
const T& pick(Rng& rng, const std::vector<T>& v) {
  return v[uniform_index(rng, v.size())];
}

// Zipf-like draw over `v`, favouring low indices.
const std::string& pick_zipf(Rng& rng, const std::vector<std::string>& v) {
  const double u = uniform01(rng);
  const auto i = static_cast<std::size_t>(std::pow(static_cast<double>(v.size()), u)) - 1;
  return v[std::min(i, v.size() - 1)];
}

struct Sentence {
  std::vector<std::string> tokens;
  std::vector<std::string> tags;
  SentenceRecord record() const {
    SentenceRecord r;
    r.pos = tags;
    const int n = static_cast<int>(tokens.size());
    r.depth = 2 + n / 4;
    r.noun_phrases = static_cast<int>(std::count(tags.begin(), tags.end(), "NN"));
    r.verb_phrases = static_cast<int>(std::count(tags.begin(), tags.end(), "VB"));
    r.prep_phrases = static_cast<int>(std::count(tags.begin(), tags.end(), "IN"));
    return r;
  }
  void add(const std::string& w, const char* tag) {
    tokens.push_back(w);
    tags.emplace_back(tag);
  }
};

Sentence clean_sentence(Rng& rng, const Lexicon& lx, const std::vector<std::vector<std::string>>& titles) {
  Sentence s;
  const bool positive = uniform01(rng) < 0.5;
  const auto& sentiment = positive ? (uniform01(rng) < 0.5 ? lx.pos_train : lx.pos_eval)
                                   : (uniform01(rng) < 0.5 ? lx.neg_train : lx.neg_eval);
  const auto& context = positive ? lx.pos_context : lx.neg_context;
  s.add(pick(rng, lx.function), "DT");
  s.add(pick(rng, lx.clean_nouns), "NN");
  s.add(pick(rng, context), "VB");
  s.add(pick(rng, sentiment), "JJ");
  s.add(pick(rng, context), "VB");
  if (uniform01(rng) < 0.5) s.add(pick(rng, context), "RB");
  if (uniform01(rng) < 0.3) {
    for (const auto& t : pick(rng, titles)) s.add(t, "NN");
  } else {
    s.add(pick(rng, lx.function), "IN");
    s.add(pick(rng, lx.clean_nouns), "NN");
  }
  return s;
}

Sentence noisy_sentence(Rng& rng, const Lexicon& lx) {
  Sentence s;
  const std::size_t n = 12 + uniform_index(rng, 14);
  for (std::size_t i = 0; i < n; ++i) {
    const double u = uniform01(rng);
    if (u < 0.25) {
      s.add(pick(rng, lx.function), i % 3 == 0 ? "IN" : "DT");
    } else if (u < 0.33) {
      const auto& ctx = uniform01(rng) < 0.5 ? lx.pos_context : lx.neg_context;
      s.add(pick(rng, ctx), "VB");
    } else if (u < 0.39) {
      const double v = uniform01(rng);
      const auto& sent = v < 0.25 ? lx.pos_train : v < 0.5 ? lx.pos_eval : v < 0.75 ? lx.neg_train : lx.neg_eval;
      s.add(pick(rng, sent), "JJ");
    } else if (u < 0.45) {
      s.add(pick(rng, lx.clean_nouns), "NN");
    } else {
      s.add(pick_zipf(rng, lx.rare), uniform01(rng) < 0.6 ? "NN" : "VB");
    }
  }
  return s;
}

std::string join(const std::vector<std::string>& tokens) {
  std::string out;
  for (const auto& t : tokens) out += (out.empty() ? "" : " ") + t;
  return out;
}

void write_lines(const std::filesystem::path& path, const std::vector<std::string>& lines) {
  std::ofstream out(path);
  if (!out) throw Error("cannot write " + path.string());
  for (const auto& l : lines) out << l << '\n';
  if (!out) throw Error("failed writing " + path.string());
}

}  // namespace

void write_synthetic_suite(const std::filesystem::path& dir, const SyntheticConfig& cfg) {
  if (cfg.target_tokens < 1000) throw std::invalid_argument("synthetic corpus needs at least 1000 tokens");
  if (!(cfg.clean_fraction > 0.0 && cfg.clean_fraction < 1.0)) {
    throw std::invalid_argument("clean_fraction must lie in (0, 1)");
  }
  if (cfg.dataset_size < 50) throw std::invalid_argument("dataset_size must be >= 50");
  std::filesystem::create_directories(dir);
  Rng rng(mix_seed(cfg.seed, 0));
  WordMaker maker(rng);

  Lexicon lx;
  lx.function = maker.make_many(10, 1, 1);
  lx.clean_nouns = maker.make_many(60, 1, 2);
  lx.pos_context = maker.make_many(16, 2, 2);
  lx.neg_context = maker.make_many(16, 2, 2);
  lx.pos_train = maker.make_many(8, 2, 2);
  lx.pos_eval = maker.make_many(8, 2, 2);
  lx.neg_train = maker.make_many(8, 2, 2);
  lx.neg_eval = maker.make_many(8, 2, 2);
  lx.rare = maker.make_many(900, 3, 5);

  std::vector<std::vector<std::string>> titles;
  for (std::size_t i = 0; i < 20; ++i) titles.push_back({pick(rng, lx.clean_nouns), pick(rng, lx.clean_nouns)});

  // Corpus and aligned annotations.
  std::vector<std::string> corpus_lines;
  ParseAnnotations ann;
  std::size_t tokens = 0;
  while (tokens < cfg.target_tokens) {
    std::vector<Sentence> sentences;
    if (uniform01(rng) < cfg.clean_fraction) {
      const std::size_t k = 2 + uniform_index(rng, 3);
      for (std::size_t s = 0; s < k; ++s) sentences.push_back(clean_sentence(rng, lx, titles));
    } else {
      const std::size_t k = 3 + uniform_index(rng, 4);
      for (std::size_t s = 0; s < k; ++s) sentences.push_back(noisy_sentence(rng, lx));
    }
    std::vector<std::string> para;
    std::vector<SentenceRecord> records;
    for (const auto& s : sentences) {
      para.insert(para.end(), s.tokens.begin(), s.tokens.end());
      records.push_back(s.record());
    }
    tokens += para.size();
    corpus_lines.push_back(join(para));
    ann.paragraphs.push_back(std::move(records));
  }
  write_lines(dir / "corpus.txt", corpus_lines);
  ann.save(dir / "annotations.txt");

  // Lexical tables: clean words are early, concrete and imageable.
  std::vector<std::string> clean_words = lx.clean_nouns;
  for (const auto* group : {&lx.pos_context, &lx.neg_context, &lx.pos_train, &lx.pos_eval, &lx.neg_train,
                            &lx.neg_eval}) {
    clean_words.insert(clean_words.end(), group->begin(), group->end());
  }
  std::vector<std::string> aoa, conc, syl, seeds;
  for (const auto& w : clean_words) {
    aoa.push_back(w + "\t" + format_g9(std::round(uniform(rng, 2.5, 6.0) * 100) / 100));
    conc.push_back(w + "\t" + format_g9(std::round(uniform(rng, 3.8, 5.0) * 100) / 100));
  }
  for (const auto& w : lx.rare) {
    if (uniform01(rng) < 0.6) aoa.push_back(w + "\t" + format_g9(std::round(uniform(rng, 9.0, 17.0) * 100) / 100));
    if (uniform01(rng) < 0.6) conc.push_back(w + "\t" + format_g9(std::round(uniform(rng, 1.0, 2.6) * 100) / 100));
  }
  for (const auto* group : {&clean_words, &lx.rare, &lx.function}) {
    for (const auto& w : *group) syl.push_back(w + "\t" + std::to_string(syllables_of(w)));
  }
  for (std::size_t i = 0; i < 30; ++i) {
    seeds.push_back(lx.clean_nouns[i] + "\t" + format_g9(std::round(uniform(rng, 5.0, 7.0) * 100) / 100));
    seeds.push_back(lx.rare[i] + "\t" + format_g9(std::round(uniform(rng, 1.0, 3.0) * 100) / 100));
  }
  write_lines(dir / "aoa.tsv", aoa);
  write_lines(dir / "concreteness.tsv", conc);
  write_lines(dir / "syllables.tsv", syl);
  write_lines(dir / "imageability_seeds.tsv", seeds);
  std::vector<std::string> title_lines;
  for (const auto& t : titles) title_lines.push_back(join(t));
  write_lines(dir / "titles.txt", title_lines);

  // Small categories for clean nouns, one sprawling category for rare words.
  std::vector<std::string> supersenses, synsets;
  static const char* kSupersenses[] = {"noun.animal", "noun.food", "noun.artifact", "noun.person"};
  for (std::size_t i = 0; i < lx.clean_nouns.size(); ++i) {
    supersenses.push_back(lx.clean_nouns[i] + "\t" + kSupersenses[i % 4]);
    synsets.push_back(lx.clean_nouns[i] + "\tsyn." + std::to_string(i / 2));
  }
  for (std::size_t i = 0; i < lx.rare.size(); ++i) {
    supersenses.push_back(lx.rare[i] + "\tnoun.cognition");
    if (i % 3 == 0) synsets.push_back(lx.rare[i] + "\tsyn.r" + std::to_string(i / 30));
  }
  write_lines(dir / "supersenses.tsv", supersenses);
  write_lines(dir / "synsets.tsv", synsets);

  // Sentiment dataset; dev/test sentiment words are unseen in train.
  const auto make_split = [&](std::size_t n, bool eval_words, std::set<std::string>& seen) {
    std::vector<LabeledExample> out;
    while (out.size() < n) {
      LabeledExample e;
      e.label = uniform01(rng) < 0.5 ? 1 : 0;
      const auto& sent = e.label == 1 ? (eval_words ? lx.pos_eval : lx.pos_train)
                                      : (eval_words ? lx.neg_eval : lx.neg_train);
      const std::size_t len = 6 + uniform_index(rng, 5);
      const std::size_t at = uniform_index(rng, len);
      for (std::size_t i = 0; i < len; ++i) {
        if (i == at) {
          e.tokens.push_back(pick(rng, sent));
        } else {
          const double u = uniform01(rng);
          e.tokens.push_back(u < 0.3 ? pick(rng, lx.function) : u < 0.65 ? pick(rng, lx.clean_nouns)
                                                                          : pick_zipf(rng, lx.rare));
        }
      }
      if (seen.insert(join(e.tokens)).second) out.push_back(std::move(e));
    }
    return out;
  };
  std::set<std::string> seen;
  const std::size_t n_train = cfg.dataset_size * 3 / 5;
  const std::size_t n_dev = (cfg.dataset_size - n_train) / 2;
  save_labeled_split(make_split(n_train, false, seen), dir / "senti_train.tsv");
  save_labeled_split(make_split(n_dev, true, seen), dir / "senti_dev.tsv");
  save_labeled_split(make_split(cfg.dataset_size - n_train - n_dev, true, seen), dir / "senti_test.tsv");

  // Word pairs: same polarity scores high, opposite polarity low.
  const auto make_pairs = [&](const std::vector<std::string>& pos, const std::vector<std::string>& neg) {
    std::vector<std::string> lines;
    for (std::size_t i = 0; i < pos.size(); ++i) {
      for (std::size_t j = i + 1; j < pos.size(); ++j) {
        lines.push_back(pos[i] + "\t" + pos[j] + "\t" + format_g9(std::round(uniform(rng, 7.0, 10.0) * 10) / 10));
        lines.push_back(neg[i] + "\t" + neg[j] + "\t" + format_g9(std::round(uniform(rng, 7.0, 10.0) * 10) / 10));
      }
      lines.push_back(pos[i] + "\t" + neg[i] + "\t" + format_g9(std::round(uniform(rng, 0.0, 3.0) * 10) / 10));
    }
    return lines;
  };
  write_lines(dir / "pairs_dev.tsv", make_pairs(lx.pos_train, lx.neg_train));
  write_lines(dir / "pairs_test.tsv", make_pairs(lx.pos_eval, lx.neg_eval));

  nlohmann::ordered_json config;
  config["corpus"] = "corpus.txt";
  config["min_count"] = 5;
  config["seed"] = 1;
  config["output"] = "run";
  config["features"] = {{"groups", {"diversity", "simplicity", "prototypicality"}}};
  config["resources"] = {{"aoa", "aoa.tsv"},
                         {"concreteness", "concreteness.tsv"},
                         {"syllables", "syllables.tsv"},
                         {"imageability_seeds", "imageability_seeds.tsv"},
                         {"titles", "titles.txt"},
                         {"supersenses", "supersenses.tsv"},
                         {"synsets", "synsets.tsv"},
                         {"annotations", "annotations.txt"}};
  config["cbow"] = {{"dim", 32}, {"window", 5}, {"negative", 5}, {"epochs", 1}, {"initial_lr", 0.25}};
  config["optimizer"] = {{"trials", 10}};
  config["evaluator"] = {{"name", "avg_classifier"},
                         {"train", "senti_train.tsv"},
                         {"dev", "senti_dev.tsv"},
                         {"test", "senti_test.tsv"}};
  std::ofstream out(dir / "config.json");
  out << config.dump(2) << '\n';
  if (!out) throw Error("failed writing " + (dir / "config.json").string());
}

}  // namespace curricula
