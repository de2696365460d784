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

#include "curricula/analysis.hpp"
#include "curricula/curriculum.hpp"
#include "test_util.hpp"

namespace curricula {
namespace {

Curriculum from_order(std::vector<std::size_t> order) {
  Curriculum c;
  c.scores.assign(order.size(), 0.0);
  c.order = std::move(order);
  return c;
}

const std::vector<std::string> kFive = {"p zero", "p one", "p two", "p three", "p four"};

TEST(Spearman, IdenticalAndReversed) {
  const Corpus c = testing::make_corpus(kFive);
  const auto a = from_order({0, 1, 2, 3, 4});
  EXPECT_DOUBLE_EQ(spearman(a, a, c), 1.0);
  EXPECT_DOUBLE_EQ(spearman(a, from_order({4, 3, 2, 1, 0}), c), -1.0);
}

TEST(Spearman, WorkedExample) {
  // Ranks [1,2,3,4] vs [1,3,2,4].
  const Corpus c = testing::make_corpus({"p zero", "p one", "p two", "p three"});
  EXPECT_NEAR(spearman(from_order({0, 1, 2, 3}), from_order({0, 2, 1, 3}), c), 0.8, 1e-12);
}

TEST(Spearman, DuplicatesAreDroppedBeforeRanking) {
  // Paragraph 3 repeats paragraph 0 and only the first copy counts.
  const Corpus c = testing::make_corpus({"a x", "b x", "c x", "a x"});
  EXPECT_EQ(deduplicated_indices(c), (std::vector<std::size_t>{0, 1, 2}));
  const auto a = from_order({3, 0, 1, 2});
  const auto b = from_order({0, 1, 2, 3});
  EXPECT_DOUBLE_EQ(spearman(a, b, c), 1.0);
  EXPECT_EQ(rank_series(from_order({2, 3, 1, 0}), {0, 1, 2}), (std::vector<double>{2, 1, 0}));
}

TEST(Spearman, Preconditions) {
  const Corpus two = testing::make_corpus({"a", "b", "a"});
  EXPECT_THROW(spearman(from_order({0, 1, 2}), from_order({0, 1, 2}), two), std::invalid_argument);
  const Corpus c = testing::make_corpus(kFive);
  EXPECT_THROW(spearman(from_order({0, 1, 2}), from_order({0, 1, 2, 3, 4}), c), std::invalid_argument);
}

TEST(Select, BudgetCrossingRule) {
  // Lengths 5, 3, 4, 8 → 20 tokens.
  const Corpus c = testing::make_corpus({"a a a a a", "b b b", "c c c c", "d d d d d d d d"});
  const auto coherent = baseline_coherent(4);
  EXPECT_EQ(select_top_tokens(coherent, c, 0.25).size(), 1u);  // 5 >= 5
  const auto two = select_top_tokens(coherent, c, 0.3);       // budget 6: 5, then 8
  ASSERT_EQ(two.size(), 2u);
  EXPECT_EQ(two.token_count(), 8);
  EXPECT_EQ(select_top_tokens(coherent, c, 1.0).token_count(), 20);
  const auto rev = select_top_tokens(from_order({3, 2, 1, 0}), c, 0.3);
  ASSERT_EQ(rev.size(), 1u);
  EXPECT_EQ(rev[0].tokens.front(), "d");
  EXPECT_TRUE(rev.has_vocabulary());
}

TEST(Select, FractionBounds) {
  const Corpus c = testing::make_corpus(kFive);
  EXPECT_THROW(select_top_tokens(baseline_coherent(5), c, 0.0), std::invalid_argument);
  EXPECT_THROW(select_top_tokens(baseline_coherent(5), c, 1.5), std::invalid_argument);
  EXPECT_EQ(select_top_tokens(baseline_coherent(5), c, 1e-9).size(), 1u);
}

TEST(Report, SymmetricWithUnitDiagonal) {
  std::mt19937_64 rng(4);
  const Corpus c = testing::random_corpus(rng, 60, 10, 30);
  const std::vector<std::pair<std::string, Curriculum>> cs = {
      {"coherent", baseline_coherent(c.size())},
      {"shuffled", baseline_shuffled(c.size(), 1)},
      {"long", baseline_length_sorted(c, LengthDirection::kLongToShort)},
      {"short", baseline_length_sorted(c, LengthDirection::kShortToLong)}};
  const auto r = correlation_report(cs, c);
  ASSERT_EQ(r.names.size(), 4u);
  for (std::size_t i = 0; i < 4; ++i) {
    EXPECT_EQ(r.rho[i][i], 1.0);
    for (std::size_t j = 0; j < 4; ++j) {
      EXPECT_EQ(r.rho[i][j], r.rho[j][i]);
      EXPECT_LE(std::abs(r.rho[i][j]), 1.0 + 1e-12);
    }
  }
  EXPECT_NEAR(r.rho[2][3], -1.0, 0.05);
  testing::TempDir dir;
  r.save_tsv(dir / "c.tsv");
  const auto text = testing::read_file(dir / "c.tsv");
  EXPECT_EQ(text.substr(0, text.find('\n')), "curriculum\tcoherent\tshuffled\tlong\tshort");
  EXPECT_THROW(correlation_report({cs[0]}, c), std::invalid_argument);
}

}  // namespace
}  // namespace curricula
