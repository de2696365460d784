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

#include <algorithm>
#include <cmath>
#include <map>
#include <random>

#include "curricula/common.hpp"
#include "curricula/curriculum.hpp"
#include "curricula/features.hpp"
#include "oracles.hpp"
#include "test_util.hpp"

namespace curricula {
namespace {

using testing::random_embeddings;

TEST(Diversity, SingleTypeParagraph) {
  const Corpus c = testing::make_corpus({"a a a a"});
  const auto d = diversity_features(c.ids(0), global_type_probabilities(c), SimilarityProvider());
  EXPECT_EQ(d[0], 1.0);
  EXPECT_DOUBLE_EQ(d[1], 0.25);
  EXPECT_DOUBLE_EQ(d[2], 0.0);
  EXPECT_DOUBLE_EQ(d[3], 1.0);
}

TEST(Diversity, FourEquiprobableTypes) {
  const Corpus c = testing::make_corpus({"a b c d"});
  const auto d = diversity_features(c.ids(0), global_type_probabilities(c), SimilarityProvider());
  EXPECT_NEAR(d[2], std::log(4.0), 1e-12);
  EXPECT_NEAR(d[2], 1.386294, 1e-6);
  EXPECT_DOUBLE_EQ(d[3], 0.25);
}

TEST(Diversity, QuadraticEntropyWithUnitSimilarity) {
  // Identical embeddings make every d_ij = 1, so the sum is (Σ p_i)².
  const Corpus c = testing::make_corpus({"a b a", "c b d d"});
  EmbeddingMatrix emb(c.vocabulary().words(), 3);
  for (std::size_t i = 0; i < emb.size(); ++i) {
    emb.input(i)[0] = 1.0;
    emb.input(i)[1] = 2.0;
  }
  const SimilarityProvider sim(c.vocabulary(), emb);
  const auto g = global_type_probabilities(c);
  for (std::size_t p = 0; p < c.size(); ++p) {
    std::vector<WordId> types = c.ids(p);
    std::sort(types.begin(), types.end());
    types.erase(std::unique(types.begin(), types.end()), types.end());
    double mass = 0;
    for (const WordId t : types) mass += g[static_cast<std::size_t>(t)];
    EXPECT_NEAR(diversity_features(c.ids(p), g, sim)[4], mass * mass, 1e-12);
  }
}

TEST(Diversity, MatchesBruteForceOracle) {
  std::mt19937_64 rng(2024);
  const Corpus c = testing::random_corpus(rng, 200, 20, 30);
  const auto emb = random_embeddings(c.vocabulary(), 8, 99);
  const SimilarityProvider sim(c.vocabulary(), emb);
  const auto g = global_type_probabilities(c);
  for (std::size_t p = 0; p < c.size(); ++p) {
    const auto d = diversity_features(c.ids(p), g, sim);
    const auto b = testing::brute_force_diversity(c.ids(p), g, emb, c.vocabulary());
    EXPECT_NEAR(d[0], b.types, 1e-10);
    EXPECT_NEAR(d[1], b.ttr, 1e-10);
    EXPECT_NEAR(d[2], b.entropy, 1e-10);
    EXPECT_NEAR(d[3], b.simpson, 1e-10);
    EXPECT_NEAR(d[4], b.quadratic, 1e-10);
  }
}

TEST(Diversity, RangeInvariants) {
  std::mt19937_64 rng(7);
  const Corpus c = testing::random_corpus(rng, 100, 15, 10);
  const auto g = global_type_probabilities(c);
  for (std::size_t p = 0; p < c.size(); ++p) {
    const auto d = diversity_features(c.ids(p), g, SimilarityProvider());
    EXPECT_GE(d[2], 0.0);
    EXPECT_GT(d[3], 0.0);
    EXPECT_LE(d[3], 1.0 + 1e-15);
    EXPECT_GT(d[1], 0.0);
    EXPECT_LE(d[1], 1.0);
    const bool one = d[0] == 1.0;
    EXPECT_EQ(one, d[2] == 0.0);
    EXPECT_EQ(one, std::abs(d[3] - 1.0) < 1e-15);
  }
}

TEST(Similarity, ProviderInvariants) {
  std::mt19937_64 rng(1);
  const Corpus c = testing::random_corpus(rng, 50, 10, 12);
  const auto emb = random_embeddings(c.vocabulary(), 5, 3);
  const SimilarityProvider sim(c.vocabulary(), emb);
  const auto n = static_cast<WordId>(c.vocabulary().size());
  for (WordId a = 0; a < n; ++a) {
    EXPECT_EQ(sim.similarity(a, a), 1.0);
    for (WordId b = 0; b < n; ++b) {
      EXPECT_EQ(sim.similarity(a, b), sim.similarity(b, a));
      EXPECT_GE(sim.similarity(a, b), -1.0);
      EXPECT_LE(sim.similarity(a, b), 1.0);
    }
  }
}

TEST(NgramLm, UnigramClosedForm) {
  const Corpus c = testing::make_corpus({"a a b"});
  const double k = 0.5;
  const NgramLm lm = train_ngram_lm(c, 1, k);
  const auto a = c.vocabulary().id("a");
  // Vocabulary {a, b, UNK}: V = 3.
  EXPECT_NEAR(lm.probability({}, a), (2 + k) / (3 + 3 * k), 1e-15);
  // Against a two-symbol vocabulary the textbook form (2+k)/(3+2k) holds.
  const NgramLm two = NgramLm::train({{0, 0, 1}}, 2, 1, k);
  EXPECT_NEAR(two.probability({}, 0), (2 + k) / (3 + 2 * k), 1e-15);
}

TEST(NgramLm, ConditionalsSumToOne) {
  std::mt19937_64 rng(5);
  const Corpus c = testing::random_corpus(rng, 40, 12, 9);
  const NgramLm lm = train_ngram_lm(c, 3, 0.01);
  const auto v = static_cast<std::int32_t>(c.vocabulary().size());
  for (int trial = 0; trial < 30; ++trial) {
    const std::vector<std::int32_t> h = {static_cast<std::int32_t>(rng() % (v + 1)),
                                         static_cast<std::int32_t>(rng() % v)};
    double total = 0;
    for (std::int32_t w = 0; w < v; ++w) total += lm.probability(h, w);
    EXPECT_NEAR(total, 1.0, 1e-6);
  }
  const NgramLm chars = train_char_lm(c, 5, 0.01);
  const std::vector<std::int32_t> h = {'w', '1', ' ', 'w'};
  double total = 0;
  for (std::int32_t ch = 0; ch < 256; ++ch) total += chars.probability(h, ch);
  EXPECT_NEAR(total, 1.0, 1e-6);
}

TEST(NgramLm, UnseenTrigramHasPositiveProbability) {
  const Corpus c = testing::make_corpus({"a b c", "c b a"});
  const NgramLm lm = train_ngram_lm(c, 3, 0.01);
  const auto& v = c.vocabulary();
  EXPECT_GT(lm.probability(std::vector<std::int32_t>{v.id("c"), v.id("c")}, v.id("c")), 0.0);
}

TEST(NgramLm, OrderAndSmoothingGuards) {
  const Corpus c = testing::make_corpus({"a b"});
  EXPECT_THROW(train_ngram_lm(c, 6, 0.01), std::invalid_argument);
  EXPECT_THROW(train_ngram_lm(c, 0, 0.01), std::invalid_argument);
  EXPECT_THROW(train_ngram_lm(c, 2, 0.0), std::invalid_argument);
}

TEST(Simplicity, SeenSentenceOutscoresPermutations) {
  std::mt19937_64 rng(17);
  const Corpus c = testing::random_corpus(rng, 300, 15, 40);
  const LanguageModels lms = train_language_models(c);
  const Paragraph& p = c[0];
  const auto seen = simplicity_features(p, c.ids(0), lms, nullptr);
  double word = 0;
  for (int i = 0; i < 20; ++i) {
    std::vector<std::size_t> perm(p.tokens.size());
    for (std::size_t k = 0; k < perm.size(); ++k) perm[k] = k;
    std::shuffle(perm.begin(), perm.end(), rng);
    Paragraph q = p;
    std::vector<WordId> ids;
    for (std::size_t k = 0; k < perm.size(); ++k) {
      q.tokens[k] = p.tokens[perm[k]];
      ids.push_back(c.ids(0)[perm[k]]);
    }
    const auto s = simplicity_features(q, ids, lms, nullptr);
    word += s[0] / 20;
  }
  EXPECT_GE(seen[0], word);
}

TEST(Simplicity, CharModelPrefersSeenSpelling) {
  const Corpus c = testing::make_corpus({"the cat sat on the mat", "the dog sat on the log",
                                         "a cat and a dog met on the mat"});
  const LanguageModels lms = train_language_models(c);
  const Corpus other = testing::make_corpus({"the cat sat on the mat", "zqx vjk qzx jvk zzq xjv"});
  const auto seen = simplicity_features(other[0], other.ids(0), lms, nullptr);
  const auto odd = simplicity_features(other[1], other.ids(1), lms, nullptr);
  EXPECT_GT(seen[1], odd[1]);
}

TEST(Simplicity, SentenceLengthAndParseFeatures) {
  const Corpus c = testing::make_corpus({"a b c d e f g h i j"});
  const LanguageModels lms;
  EXPECT_DOUBLE_EQ(simplicity_features(c[0], c.ids(0), lms, nullptr)[2], 10.0);
  const std::vector<SentenceRecord> one = {
      parse_sentence_record("depth=4 np=2 vp=1 pp=1 pos=DT,NN,JJ,NN,IN,DT,NN,RB,JJ,NN")};
  const auto s = simplicity_features(c[0], c.ids(0), lms, &one);
  EXPECT_DOUBLE_EQ(s[2], 10.0);
  EXPECT_DOUBLE_EQ(s[3], 0.0);  // no V-prefixed tags
  EXPECT_DOUBLE_EQ(s[4], 0.4);
  const std::vector<SentenceRecord> two = {parse_sentence_record("depth=3 np=1 vp=1 pp=0 pos=NN,VB,VBD,NN,NN"),
                                           parse_sentence_record("depth=5 np=2 vp=0 pp=3 pos=DT,NN,IN,DT,NN")};
  const auto t = simplicity_features(c[0], c.ids(0), lms, &two);
  EXPECT_DOUBLE_EQ(t[2], 5.0);
  EXPECT_DOUBLE_EQ(t[3], 0.2);
  EXPECT_DOUBLE_EQ(t[4], 0.5);
  EXPECT_DOUBLE_EQ(t[5], 4.0);
  EXPECT_DOUBLE_EQ(t[6], 3.0);
  EXPECT_DOUBLE_EQ(t[7], 1.0);
  EXPECT_DOUBLE_EQ(t[8], 3.0);
}

ResourceBundle tiny_resources() {
  ResourceBundle r;
  r.aoa = ScalarTable(kDefaultAgeOfAcquisition);
  r.aoa->set("run", 4.47);
  r.concreteness = ScalarTable(kDefaultConcreteness);
  r.concreteness->set("run", 4.0);
  r.syllables = ScalarTable(kDefaultSyllables);
  r.syllables->set("run", 1);
  r.titles = TitleSet();
  r.titles->add({"a", "b"});
  r.imageability = ImageabilityModel();
  r.imageability->set("run", 0.9);
  return r;
}

TEST(Prototypicality, PaperExamples) {
  const Corpus c = testing::make_corpus({"run", "qq zz", "a b"});
  const auto res = tiny_resources();
  EXPECT_DOUBLE_EQ(prototypicality_features(c[0], c.ids(0), c.vocabulary(), res)[0], 4.47);
  const auto absent = prototypicality_features(c[1], c.ids(1), c.vocabulary(), res);
  EXPECT_DOUBLE_EQ(absent[0], 25.0);
  EXPECT_DOUBLE_EQ(absent[4], 5.0);
  EXPECT_DOUBLE_EQ(absent[1], 3.0);
  EXPECT_DOUBLE_EQ(prototypicality_features(c[2], c.ids(2), c.vocabulary(), res)[3], 0.5);
}

TEST(Prototypicality, CategoryAbsentWordsContributeZero) {
  const Corpus c = testing::make_corpus({"a a a b", "a q"});
  ResourceBundle r;
  r.supersenses = build_category_map(c, {{"a", {"cat"}}, {"b", {"cat"}}});
  const auto f = prototypicality_features(c[1], c.ids(1), c.vocabulary(), r);
  EXPECT_DOUBLE_EQ(f[5], 0.8 / 2);
}

FeatureInputs full_inputs(const ResourceBundle& r, const LanguageModels& lms, const SimilarityProvider& sim) {
  return {&r, &lms, &sim};
}

struct Fixture {
  Corpus corpus;
  ResourceBundle res;
  LanguageModels lms;
  EmbeddingMatrix emb;
  SimilarityProvider sim;
};

Fixture make_fixture(std::size_t paragraphs, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  Fixture f;
  f.corpus = testing::random_corpus(rng, paragraphs, 12, 25);
  f.res = tiny_resources();
  ParseAnnotations ann;
  for (std::size_t i = 0; i < f.corpus.size(); ++i) {
    SentenceRecord s;
    s.depth = static_cast<int>(1 + i % 5);
    s.noun_phrases = static_cast<int>(i % 3);
    for (std::size_t t = 0; t < f.corpus[i].tokens.size(); ++t) s.pos.push_back(t % 2 ? "NN" : "VB");
    ann.paragraphs.push_back({s});
  }
  f.res.annotations = ann;
  f.res.supersenses = build_category_map(f.corpus, {{"w1", {"x"}}, {"w2", {"x"}}});
  f.res.synsets = build_category_map(f.corpus, {{"w3", {"s"}}});
  f.lms = train_language_models(f.corpus);
  f.emb = random_embeddings(f.corpus.vocabulary(), 6, seed + 1);
  f.sim = SimilarityProvider(f.corpus.vocabulary(), f.emb);
  return f;
}

TEST(Extract, ShapeAndGroupRemoval) {
  const Fixture f = make_fixture(3, 11);
  const auto in = full_inputs(f.res, f.lms, f.sim);
  const auto div = extract_features(f.corpus, FeatureSpec::for_groups({FeatureGroup::kDiversity}), in);
  EXPECT_EQ(div.rows(), 5u);
  EXPECT_EQ(div.cols(), 3u);
  EXPECT_FALSE(div.normalized());
  const auto all = extract_features(f.corpus, FeatureSpec::all(), in);
  EXPECT_EQ(all.rows(), 21u);
  const auto without = extract_features(
      f.corpus, FeatureSpec::for_groups({FeatureGroup::kDiversity, FeatureGroup::kPrototypicality}), in);
  EXPECT_EQ(without.rows(), 12u);
  EXPECT_EQ(without, all.select(without.spec()));
}

TEST(Extract, DeterministicAndParallelMatchesSerial) {
  const Fixture f = make_fixture(500, 3);
  const auto in = full_inputs(f.res, f.lms, f.sim);
  const auto a = extract_features(f.corpus, FeatureSpec::all(), in);
  const auto b = extract_features(f.corpus, FeatureSpec::all(), in);
  const auto s = extract_features_serial(f.corpus, FeatureSpec::all(), in);
  EXPECT_EQ(a, b);
  EXPECT_EQ(a, s);
  EXPECT_TRUE(a.all_finite());
}

TEST(Extract, PermutingCorpusPermutesColumns) {
  const Fixture f = make_fixture(60, 9);
  const auto spec = FeatureSpec::for_groups({FeatureGroup::kDiversity, FeatureGroup::kPrototypicality});
  const auto in = full_inputs(f.res, f.lms, f.sim);
  const auto m = extract_features(f.corpus, spec, in);
  const Curriculum shuffled = baseline_shuffled(f.corpus.size(), 77);
  const Corpus permuted = apply_curriculum(f.corpus, shuffled);
  const auto pm = extract_features(permuted, spec, in);
  EXPECT_EQ(pm, m.permute_columns(shuffled.order));
}

TEST(Extract, MissingDependencyNamesFeature) {
  const Fixture f = make_fixture(5, 1);
  ResourceBundle no_aoa = f.res;
  no_aoa.aoa.reset();
  try {
    extract_features(f.corpus, FeatureSpec::all(), full_inputs(no_aoa, f.lms, f.sim));
    FAIL();
  } catch (const ValidationError& e) {
    EXPECT_NE(std::string(e.what()).find("age_of_acquisition"), std::string::npos);
  }
  ResourceBundle no_parse = f.res;
  no_parse.annotations.reset();
  try {
    extract_features(f.corpus, FeatureSpec::all(), full_inputs(no_parse, f.lms, f.sim));
    FAIL();
  } catch (const ValidationError& e) {
    EXPECT_NE(std::string(e.what()).find("verb_token_ratio"), std::string::npos);
  }
  const FeatureInputs no_sim{&f.res, &f.lms, nullptr};
  EXPECT_THROW(extract_features(f.corpus, FeatureSpec::all(), no_sim), ValidationError);
  EXPECT_NO_THROW(extract_features(f.corpus, FeatureSpec::all().without_parse_features(),
                                   full_inputs(no_parse, f.lms, f.sim)));
}

TEST(Extract, PrototypicalityWithinTableRanges) {
  const Fixture f = make_fixture(80, 21);
  const auto m = extract_features(f.corpus, FeatureSpec::for_groups({FeatureGroup::kPrototypicality}),
                                  full_inputs(f.res, f.lms, f.sim));
  for (std::size_t j = 0; j < m.cols(); ++j) {
    EXPECT_GT(m.at(0, j), 0.0);
    EXPECT_LE(m.at(0, j), 25.0);
    EXPECT_GE(m.at(1, j), 1.0);
    EXPECT_LE(m.at(1, j), 5.0);
    EXPECT_GE(m.at(2, j), 0.0);
    EXPECT_LE(m.at(2, j), 1.0);
    EXPECT_GE(m.at(4, j), 1.0);
  }
}

}  // namespace
}  // namespace curricula
