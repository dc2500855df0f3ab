#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "matchbandit/confbound.hpp"
#include "matchbandit/errors.hpp"

namespace mb = matchbandit;
using mb::BetaPolicy;

TEST(BetaPolicy, ScheduleValues) {
  EXPECT_DOUBLE_EQ(BetaPolicy::horizon(1e6).beta(3), 1e6);
  EXPECT_NEAR(BetaPolicy::pair_explore(2, 3, 20.0).beta(0), 28.099258924162907, 1e-12);
  EXPECT_NEAR(BetaPolicy::pair_explore(2, 3, 20.0).beta(3), 3 * 28.099258924162907, 1e-11);
  EXPECT_NEAR(BetaPolicy::mono_explore(4, 10.0).beta(1), 28.099258924162907, 1e-12);
  EXPECT_NEAR(BetaPolicy::matching_id(6, 0.1).beta(2), 2 * 14.04962946208145, 1e-11);
  EXPECT_DOUBLE_EQ(BetaPolicy::horizon(2.0).beta(0), std::numbers::e);
  EXPECT_DOUBLE_EQ(BetaPolicy::horizon(2.0).log_beta(0), 1.0);
}

TEST(BetaPolicy, RejectsBaseAtMostOne) {
  EXPECT_THROW(BetaPolicy::horizon(1.0), mb::PolicyError);
  EXPECT_THROW(BetaPolicy::horizon(0.5), mb::PolicyError);
  EXPECT_THROW(BetaPolicy::matching_id(4, 0.0), mb::PolicyError);
}

TEST(LevelThreshold, Values) {
  EXPECT_EQ(mb::level_threshold(0, BetaPolicy::horizon(1e6)), 56u);
  EXPECT_EQ(mb::level_threshold(1, BetaPolicy::horizon(std::numbers::e)), 16u);
  EXPECT_EQ(mb::level_threshold(2, BetaPolicy::horizon(1e6)), 885u);
  EXPECT_EQ(mb::level_threshold(40, BetaPolicy::horizon(1e6)), mb::kSaturated);
}

TEST(Tracker, SentinelsBeforeFirstRefresh) {
  mb::EliminationTracker t;
  EXPECT_EQ(t.level(), -1);
  EXPECT_TRUE(std::isinf(t.upper()) && t.upper() > 0);
  EXPECT_TRUE(std::isinf(t.lower()) && t.lower() < 0);
  EXPECT_EQ(mb::separated(t, t), mb::Separation::undecided);
}

TEST(Tracker, RefreshesExactlyAtThresholds) {
  const auto p = BetaPolicy::horizon(std::numbers::e);
  mb::EliminationTracker t;
  for (int k = 1; k < 4; ++k) EXPECT_FALSE(t.ingest(0.0, p));
  EXPECT_TRUE(t.ingest(0.0, p));
  EXPECT_EQ(t.level(), 0);
  EXPECT_DOUBLE_EQ(t.upper(), 0.5);
  EXPECT_DOUBLE_EQ(t.lower(), -0.5);
  for (int k = 5; k < 16; ++k) EXPECT_FALSE(t.ingest(1.0, p));
  EXPECT_TRUE(t.ingest(1.0, p));
  EXPECT_EQ(t.level(), 1);
  EXPECT_DOUBLE_EQ(t.midpoint(), 12.0 / 16.0);
  EXPECT_DOUBLE_EQ(t.upper() - t.lower(), 2.0 * 0.25);
}

TEST(Tracker, BulkIngestMatchesSingleIngest) {
  const auto p = BetaPolicy::horizon(50.0);
  mb::EliminationTracker a, b;
  for (int k = 0; k < 300; ++k) a.ingest(0.25, p);
  b.ingest_total(75.0, 300, p);
  EXPECT_EQ(a.level(), b.level());
  EXPECT_DOUBLE_EQ(a.lower(), b.lower());
  b.reset();
  EXPECT_EQ(b.count(), 0u);
  EXPECT_EQ(b.level(), -1);
}

TEST(Separation, Cases) {
  EXPECT_EQ(mb::separated(mb::Interval{0.6, 0.8}, mb::Interval{0.1, 0.3}), mb::Separation::a_above_b);
  EXPECT_EQ(mb::separated(mb::Interval{0.1, 0.3}, mb::Interval{0.6, 0.8}), mb::Separation::b_above_a);
  EXPECT_EQ(mb::separated(mb::Interval{0.1, 0.3}, mb::Interval{0.1, 0.3}), mb::Separation::undecided);
}
