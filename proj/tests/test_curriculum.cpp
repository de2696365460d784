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

#include <cmath>
#include <numeric>
#include <random>

#include "curricula/common.hpp"
#include "curricula/curriculum.hpp"
#include "test_util.hpp"

namespace curricula {
namespace {

FeatureMatrix matrix_from_rows(const std::vector<std::string>& names, const std::vector<std::vector<double>>& rows) {
  FeatureMatrix m(FeatureSpec(names), rows.at(0).size());
  for (std::size_t r = 0; r < rows.size(); ++r) {
    for (std::size_t j = 0; j < rows[r].size(); ++j) m.at(r, j) = rows[r][j];
  }
  return m;
}

FeatureMatrix random_matrix(std::size_t rows, std::size_t cols, std::uint64_t seed) {
  std::vector<std::string> names(all_feature_names().begin(), all_feature_names().begin() + rows);
  FeatureMatrix m(FeatureSpec(names), cols);
  Rng rng(seed);
  for (std::size_t r = 0; r < rows; ++r) {
    for (std::size_t j = 0; j < cols; ++j) m.at(r, j) = 3.0 + 2.0 * standard_normal(rng);
  }
  return m;
}

TEST(ZNormalize, ThreeValueExample) {
  const auto z = znormalize(matrix_from_rows({"num_types"}, {{1, 2, 3}}));
  EXPECT_NEAR(z.at(0, 0), -1.224745, 1e-6);
  EXPECT_NEAR(z.at(0, 1), 0.0, 1e-15);
  EXPECT_NEAR(z.at(0, 2), 1.224745, 1e-6);
  EXPECT_TRUE(z.normalized());
}

TEST(ZNormalize, ConstantRowBecomesZero) {
  const auto z = znormalize(matrix_from_rows({"num_types", "entropy"}, {{5, 5, 5, 5}, {1, 2, 3, 4}}));
  for (std::size_t j = 0; j < 4; ++j) EXPECT_EQ(z.at(0, j), 0.0);
}

TEST(ZNormalize, MomentsAndIdempotence) {
  const auto m = random_matrix(6, 200, 3);
  const auto z = znormalize(m);
  for (std::size_t r = 0; r < z.rows(); ++r) {
    double mean = 0, var = 0;
    for (const double v : z.row(r)) mean += v / 200;
    for (const double v : z.row(r)) var += (v - mean) * (v - mean) / 200;
    EXPECT_NEAR(mean, 0.0, 1e-12);
    EXPECT_NEAR(var, 1.0, 1e-12);
  }
  const auto zz = znormalize(z);
  for (std::size_t i = 0; i < z.values().size(); ++i) EXPECT_NEAR(zz.values()[i], z.values()[i], 1e-12);
}

TEST(ZNormalize, RejectsSingleParagraph) {
  EXPECT_THROW(znormalize(matrix_from_rows({"num_types"}, {{1}})), std::invalid_argument);
}

TEST(Score, WorkedExamples) {
  FeatureMatrix m = matrix_from_rows({"num_types", "entropy"}, {{1, -1, 0}, {0, 1, -1}});
  m.set_normalized(true);
  const auto s = score_paragraphs(WeightVector({1.0, 0.0}), m);
  EXPECT_EQ(s, (std::vector<double>{1, -1, 0}));
  const auto t = score_paragraphs(WeightVector({0.5, 2.0}), m);
  EXPECT_EQ(t, (std::vector<double>{0.5, 1.5, -2}));
  EXPECT_EQ(score_paragraphs(WeightVector::zeros(2), m), (std::vector<double>{0, 0, 0}));
}

TEST(Score, Preconditions) {
  FeatureMatrix m = matrix_from_rows({"num_types", "entropy"}, {{1, -1}, {0, 1}});
  EXPECT_THROW(score_paragraphs(WeightVector({1.0, 0.0}), m), std::invalid_argument);
  m.set_normalized(true);
  EXPECT_THROW(score_paragraphs(WeightVector({1.0}), m), std::invalid_argument);
  EXPECT_THROW(WeightVector({std::nan("")}), std::invalid_argument);
}

TEST(Sort, DescendingWithStableTies) {
  EXPECT_EQ(sort_curriculum({0.1, 0.9, 0.5}).order, (std::vector<std::size_t>{1, 2, 0}));
  EXPECT_EQ(sort_curriculum({1, 1, 1}).order, (std::vector<std::size_t>{0, 1, 2}));
  EXPECT_EQ(sort_curriculum({2, 5, 2, 5}).order, (std::vector<std::size_t>{1, 3, 0, 2}));
  EXPECT_THROW(sort_curriculum({1, std::nan("")}), std::invalid_argument);
}

TEST(Sort, ZeroWeightsGiveCoherentOrder) {
  const auto z = znormalize(random_matrix(4, 50, 8));
  const auto c = curriculum_from_weights(WeightVector::zeros(4), z);
  EXPECT_EQ(c.order, baseline_coherent(50).order);
}

TEST(Sort, PositiveScalingInvariant) {
  const auto z = znormalize(random_matrix(5, 300, 12));
  Rng rng(4);
  for (int t = 0; t < 10; ++t) {
    std::vector<double> w(5);
    for (auto& x : w) x = uniform(rng, -1, 1);
    const WeightVector wv(w);
    const auto base = curriculum_from_weights(wv, z).order;
    for (const double c : {0.1, 3.0, 1e3}) EXPECT_EQ(curriculum_from_weights(wv.scaled(c), z).order, base);
  }
}

TEST(Sort, StoredScoresAreZScored) {
  const auto z = znormalize(random_matrix(3, 40, 2));
  const auto c = curriculum_from_weights(WeightVector({0.3, -0.7, 0.1}), z);
  double mean = 0;
  for (const double s : c.scores) mean += s / 40;
  EXPECT_NEAR(mean, 0.0, 1e-12);
  for (std::size_t r = 1; r < c.size(); ++r) EXPECT_GE(c.scores[c.order[r - 1]], c.scores[c.order[r]]);
}

TEST(Baselines, ShuffledIsSeededPermutation) {
  const auto a = baseline_shuffled(100, 5);
  EXPECT_TRUE(a.is_permutation());
  EXPECT_EQ(a, baseline_shuffled(100, 5));
  EXPECT_NE(a.order, baseline_shuffled(100, 6).order);
  EXPECT_EQ(a.provenance, Provenance::kShuffled);
  // The stored scores reproduce the order.
  EXPECT_EQ(sort_curriculum(a.scores).order, a.order);
}

TEST(Baselines, ShuffledIsRoughlyUniform) {
  // Position of paragraph 0 over many seeds: each of 4 slots about 1/4.
  std::vector<int> hits(4, 0);
  for (std::uint64_t s = 0; s < 4000; ++s) ++hits[baseline_shuffled(4, s).ranks()[0]];
  for (const int h : hits) EXPECT_NEAR(h / 4000.0, 0.25, 0.03);
}

TEST(Baselines, LengthSortedBothDirections) {
  const Corpus c = testing::make_corpus({"a b", "a b c d", "a", "a b c d", "a b c"});
  EXPECT_EQ(baseline_length_sorted(c, LengthDirection::kLongToShort).order,
            (std::vector<std::size_t>{1, 3, 4, 0, 2}));
  EXPECT_EQ(baseline_length_sorted(c, LengthDirection::kShortToLong).order,
            (std::vector<std::size_t>{2, 0, 4, 1, 3}));
}

TEST(Baselines, CoherentIsIdentity) {
  const auto c = baseline_coherent(7);
  EXPECT_EQ(c.order, (std::vector<std::size_t>{0, 1, 2, 3, 4, 5, 6}));
  EXPECT_EQ(c.provenance, Provenance::kCoherent);
}

TEST(CurriculumFile, RoundTrip) {
  testing::TempDir dir;
  Curriculum c = sort_curriculum({0.5, -1.25, 2.0, 0.0}, Provenance::kLengthSorted, "direction=long_to_short");
  c.save(dir / "c.tsv");
  EXPECT_EQ(Curriculum::load(dir / "c.tsv"), c);
  const auto s = baseline_shuffled(30, 9);
  s.save(dir / "s.tsv");
  const auto back = Curriculum::load(dir / "s.tsv");
  EXPECT_EQ(back.order, s.order);
  EXPECT_EQ(back.provenance, Provenance::kShuffled);
  for (std::size_t i = 0; i < 30; ++i) EXPECT_NEAR(back.scores[i], s.scores[i], 1e-8);
}

TEST(CurriculumFile, RejectsMalformed) {
  testing::TempDir dir;
  testing::write_file(dir / "a.tsv", "0\t0\t1\n");
  EXPECT_THROW(Curriculum::load(dir / "a.tsv"), Error);
  testing::write_file(dir / "b.tsv", "#provenance=optimized\n0\t0\t1\n1\t0\t1\n");
  EXPECT_THROW(Curriculum::load(dir / "b.tsv"), Error);
  testing::write_file(dir / "c.tsv", "#provenance=weird\n0\t0\t1\n");
  EXPECT_THROW(Curriculum::load(dir / "c.tsv"), Error);
  testing::write_file(dir / "d.tsv", "#provenance=optimized\n0\t0\tx\n");
  EXPECT_THROW(Curriculum::load(dir / "d.tsv"), Error);
}

TEST(Apply, ReordersParagraphs) {
  const Corpus c = testing::make_corpus({"a", "b b", "c c c"});
  const Corpus r = apply_curriculum(c, sort_curriculum({0, 2, 1}));
  EXPECT_EQ(r[0].tokens.size(), 2u);
  EXPECT_EQ(r[1].tokens.size(), 3u);
  EXPECT_EQ(r[2].tokens.size(), 1u);
  EXPECT_TRUE(r.has_vocabulary());
  EXPECT_EQ(r.ids(0), c.ids(1));
  EXPECT_THROW(apply_curriculum(c, baseline_coherent(2)), std::invalid_argument);
}

}  // namespace
}  // namespace curricula
