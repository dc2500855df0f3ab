#include <gtest/gtest.h>

#include "matchbandit/ranking.hpp"

namespace mb = matchbandit;
using mb::Interval;
using mb::RankSlots;

TEST(SettleRanks, DisjointIntervalsAllSettle) {
  const std::vector<Interval> b{{0.1, 0.2}, {0.7, 0.8}, {0.4, 0.5}, {0.9, 1.0}};
  RankSlots r(4);
  EXPECT_EQ(mb::settle_ranks(b, r), 4u);
  EXPECT_EQ(r, (RankSlots{3, 1, 2, 0}));
}

TEST(SettleRanks, OverlapInsideOptimalPairSettles) {
  // Ranks 3 and 4 of 6 (0-based 2, 3) are matched together either way.
  const std::vector<Interval> b{{0.9, 1.0}, {0.8, 0.85}, {0.5, 0.6}, {0.55, 0.65}, {0.3, 0.35}, {0.1, 0.2}};
  RankSlots r(6);
  EXPECT_EQ(mb::settle_ranks(b, r), 6u);
  EXPECT_TRUE(r[2] && r[3]);
  EXPECT_EQ(*r[2] + *r[3], 5u);
}

TEST(SettleRanks, OverlapAcrossPairsStays) {
  const std::vector<Interval> b{{0.9, 1.0}, {0.5, 0.6}, {0.55, 0.65}, {0.1, 0.2}};
  RankSlots r(4);
  EXPECT_EQ(mb::settle_ranks(b, r), 2u);
  EXPECT_FALSE(r[1]);
  EXPECT_FALSE(r[2]);
}

TEST(SettleRanks, ThreeWayOverlapStays) {
  const std::vector<Interval> b{{0.5, 0.6}, {0.55, 0.65}, {0.58, 0.7}, {0.1, 0.2}};
  RankSlots r(4);
  EXPECT_EQ(mb::settle_ranks(b, r), 1u);
  EXPECT_EQ(r[3], 3u);
}

TEST(SettleRanks, RankedIntervalsDoNotBlock) {
  // Item 0 was ranked first with a wide interval that now overlaps item 1.
  const std::vector<Interval> b{{0.4, 0.6}, {0.5, 0.52}, {0.2, 0.3}, {0.9, 1.0}};
  RankSlots r{1, std::nullopt, std::nullopt, 0};
  EXPECT_EQ(mb::settle_ranks(b, r), 2u);
  EXPECT_EQ(r, (RankSlots{1, 2, 3, 0}));
}

TEST(CandidateBest, SentinelsKeepEverything) {
  const std::vector<Interval> b(4);
  EXPECT_EQ(mb::candidate_best(b, RankSlots(4), 4), std::vector<bool>(4, true));
  EXPECT_EQ(mb::candidate_best(b, RankSlots(4), 1), std::vector<bool>(4, true));
}

TEST(CandidateBest, TotalOrderGivesTopSlots) {
  const std::vector<Interval> b{{0.1, 0.2}, {0.7, 0.8}, {0.4, 0.5}, {0.9, 1.0}};
  EXPECT_EQ(mb::candidate_best(b, RankSlots(4), 2), (std::vector<bool>{false, true, false, true}));
}

TEST(CandidateBest, TwoUnrankedAmongSix) {
  // Items 4 and 5 unranked and overlapping; the rest already ranked 0..3.
  const std::vector<Interval> b{{0.9, 1.0}, {0.8, 0.85}, {0.6, 0.7}, {0.5, 0.55}, {0.3, 0.4}, {0.35, 0.45}};
  const RankSlots r{0, 1, 2, 3, std::nullopt, std::nullopt};
  const auto c = mb::candidate_best(b, r, 2);
  EXPECT_EQ(c, (std::vector<bool>{true, true, false, false, false, false}));
  EXPECT_EQ(mb::free_ranks(r), (std::vector<std::size_t>{4, 5}));
  EXPECT_EQ(mb::best_possible_rank(b, r, 5), 4u);
}
