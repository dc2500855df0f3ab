#include <gtest/gtest.h>

#include "matchbandit/errors.hpp"
#include "matchbandit/pair_elim_mono.hpp"
#include "oracles.hpp"

namespace mb = matchbandit;
using mb::PairMask;
using mb::Rank1Instance;

TEST(PairMask, FillCountAndIntersect) {
  PairMask a(4);
  EXPECT_EQ(a.count(), 12u);
  EXPECT_FALSE(a(2, 2));
  PairMask b(4);
  for (mb::Item i = 0; i < 4; ++i)
    for (mb::Item j = 0; j < 4; ++j) b.set(i, j, false);
  EXPECT_TRUE(b.empty());
  b.set(1, 2, true);
  EXPECT_EQ((a & b).count(), 1u);
}

TEST(RemovalRules, NoDominatorsKeepsEverything) {
  PairMask s(4);
  s.fill();
  const PairMask before = s;
  mb::apply_row_rules(s, mb::Dominators(4));
  mb::apply_col_rules(s, mb::Dominators(4));
  EXPECT_EQ(s, before);
}

TEST(RemovalRules, TwoRowDominatorsDropItem) {
  PairMask s(4);
  s.fill();
  mb::Dominators d(4);
  d[3] = {0, 1};
  mb::apply_row_rules(s, d);
  for (mb::Item k = 0; k < 3; ++k) {
    EXPECT_FALSE(s(3, k));
    EXPECT_FALSE(s(k, 3));
  }
  EXPECT_EQ(s.count(), 6u);
}

TEST(RemovalRules, OneRowDominatorKeepsPairWithIt) {
  PairMask s(4);
  s.fill();
  mb::Dominators d(4);
  d[2] = {0};
  mb::apply_row_rules(s, d);
  EXPECT_TRUE(s(2, 0));
  EXPECT_TRUE(s(0, 2));
  EXPECT_FALSE(s(2, 1));
  EXPECT_FALSE(s(3, 2));
}

TEST(RemovalRules, ColumnRulesTouchOnlyColumn) {
  PairMask s(4);
  s.fill();
  mb::Dominators d(4);
  d[2] = {0};
  d[3] = {0, 1};
  mb::apply_col_rules(s, d);
  EXPECT_TRUE(s(0, 2));
  EXPECT_FALSE(s(1, 2));
  for (mb::Item k = 0; k < 3; ++k) EXPECT_FALSE(s(k, 3));
  EXPECT_TRUE(s(3, 0));
}

TEST(MonoRegret, SinglePairOnly) {
  const auto run = mb::mono_regret(Rank1Instance::monopartite({0.4, 0.7}), 500, 1);
  EXPECT_EQ(run.cum_regret, 0.0);
  EXPECT_EQ(run.steps, 500u);
}

TEST(MonoRegret, RefusesBipartite) {
  EXPECT_THROW(mb::mono_regret(Rank1Instance::bipartite({0.4}, {0.7}), 10, 1), mb::ShapeError);
}

TEST(MonoExplore, NoiselessFindsTopPair) {
  const auto inst = oracle::noiseless(Rank1Instance::monopartite({0.3, 0.9, 0.2, 0.8}));
  const auto run = mb::mono_explore(inst, 0.05, 2);
  ASSERT_TRUE(run.answer);
  const auto p = run.answer->pairs.front();
  EXPECT_EQ(std::min(p.a, p.b), 1u);
  EXPECT_EQ(std::max(p.a, p.b), 3u);
}

TEST(MonoExplore, NoiselessDropsBottomItem) {
  const auto inst = oracle::noiseless(Rank1Instance::monopartite({0.9, 0.8, 0.5, 0.1}));
  mb::PairElimMono algo(4, {0, 0.05});
  mb::Environment env(inst, mb::ActionMode::pair, 1);
  while (!algo.recommend()) algo.step(env);
  for (mb::Item k = 0; k < 3; ++k) {
    EXPECT_FALSE(algo.active()(3, k));
    EXPECT_FALSE(algo.active()(k, 3));
  }
}

TEST(MonoExplore, RefusesTiedSecondAndThird) {
  EXPECT_THROW(mb::mono_explore(Rank1Instance::monopartite({0.9, 0.5, 0.5, 0.1}), 0.1, 1), mb::RefusalError);
}

TEST(PairSelect, NoiselessReturnsAdjacentPairing) {
  const auto inst = oracle::noiseless(Rank1Instance::monopartite({0.2, 0.9, 0.5, 0.7, 0.35, 0.8}));
  const auto run = mb::pair_select(inst, 0.05, 4);
  ASSERT_TRUE(run.run.answer);
  EXPECT_TRUE(oracle::same_pairs(*run.run.answer, mb::Matching{{{1, 5}, {3, 2}, {4, 0}}}));
  EXPECT_EQ(run.phase2_samples[1], 0u);
  EXPECT_GT(run.phase2_samples[0], 0u);
  EXPECT_EQ(run.run.tau, run.phase1_samples + run.phase2_samples[0] + run.phase2_samples[2] +
                             run.phase2_samples[3] + run.phase2_samples[4]);
}

TEST(PairSelect, TwoItems) {
  const auto run = mb::pair_select(oracle::noiseless(Rank1Instance::monopartite({0.2, 0.9})), 0.05, 4);
  ASSERT_TRUE(run.run.answer);
  EXPECT_EQ(run.run.answer->pairs.size(), 1u);
}

TEST(PairSelect, RefusesNonUniqueOptimum) {
  EXPECT_THROW(mb::pair_select(Rank1Instance::monopartite({0.9, 0.8, 0.5, 0.5, 0.5, 0.5}), 0.1, 1), mb::RefusalError);
}
