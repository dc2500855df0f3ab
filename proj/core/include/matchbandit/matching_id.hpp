#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "matchbandit/confbound.hpp"
#include "matchbandit/env.hpp"
#include "matchbandit/instance.hpp"
#include "matchbandit/ranking.hpp"
#include "matchbandit/runs.hpp"

namespace matchbandit {

struct MatchingIdRun {
  ExploreRun run;
  std::uint64_t iterations = 0;
  // Iterations where |B| > 2|S|, and item-iterations where the counted share
  // of an unranked item fell below 4/9.
  std::uint64_t candidate_violations = 0;
  std::uint64_t share_violations = 0;
  std::size_t max_candidates = 0;
};

// Lowest-label adjacent pairing of the items outside `a`.
Matching filler_matching(const std::vector<bool>& in_a);

class MatchingId {
 public:
  MatchingId(std::size_t n_items, double delta);

  // One pass of the tournament on A = B u S; returns matchings played.
  std::uint64_t iteration(Environment& env);
  bool done() const { return remaining_ == 0; }
  // Needs done().
  Matching answer() const;
  const RankSlots& ranks() const { return ranks_; }

  const std::vector<bool>& unranked() const { return unranked_; }
  const std::vector<bool>& candidates() const { return candidates_; }
  const EliminationTracker& tracker(Item i) const { return trackers_[i]; }
  std::vector<Interval> bounds() const;

  std::uint64_t candidate_violations() const { return candidate_violations_; }
  std::uint64_t share_violations() const { return share_violations_; }
  std::size_t max_candidates() const { return max_candidates_; }

 private:
  std::size_t n_;
  BetaPolicy policy_;
  std::vector<EliminationTracker> trackers_;
  RankSlots ranks_;
  std::vector<bool> unranked_;
  std::vector<bool> candidates_;
  std::size_t remaining_;
  // Matchings played while the item was unranked.
  std::vector<std::uint64_t> exposure_;
  std::uint64_t candidate_violations_ = 0;
  std::uint64_t share_violations_ = 0;
  std::size_t max_candidates_ = 0;
};

MatchingIdRun matching_id(Environment& env, double delta, ExploreLimits limits = {});
MatchingIdRun matching_id(const Rank1Instance& instance, double delta, std::uint64_t seed, ExploreLimits limits = {});

}  // namespace matchbandit
