#include "matchbandit/matching_id.hpp"

#include <algorithm>

#include "matchbandit/combinatorics.hpp"
#include "matchbandit/errors.hpp"
#include "matchbandit/gaps.hpp"
#include "matchbandit/ranking.hpp"

namespace matchbandit {

Matching filler_matching(const std::vector<bool>& in_a) {
  Matching d;
  std::optional<Item> open;
  for (Item i = 0; i < in_a.size(); ++i) {
    if (in_a[i]) continue;
    if (open) {
      d.pairs.push_back({*open, i});
      open.reset();
    } else {
      open = i;
    }
  }
  if (open) throw InvariantViolation("odd number of items outside the tournament");
  return d;
}

MatchingId::MatchingId(std::size_t n_items, double delta)
    : n_(n_items),
      policy_(BetaPolicy::matching_id(n_items, delta)),
      trackers_(n_items),
      ranks_(n_items),
      unranked_(n_items, true),
      candidates_(n_items, true),
      remaining_(n_items),
      exposure_(n_items, 0) {
  if (n_ < 2 || n_ % 2 != 0) throw ShapeError("matching identification needs an even number of items");
  if (!(delta > 0.0 && delta < 1.0)) throw ParameterError("delta must lie in (0,1)");
}

std::vector<Interval> MatchingId::bounds() const {
  std::vector<Interval> b(n_);
  for (std::size_t i = 0; i < n_; ++i) b[i] = interval_of(trackers_[i]);
  return b;
}

std::uint64_t MatchingId::iteration(Environment& env) {
  if (done()) return 0;
  const auto b = bounds();
  candidates_ = candidate_best(b, ranks_, remaining_);
  const auto n_candidates = static_cast<std::size_t>(std::count(candidates_.begin(), candidates_.end(), true));
  max_candidates_ = std::max(max_candidates_, n_candidates);
  if (n_candidates > 2 * remaining_) ++candidate_violations_;

  std::vector<bool> in_a(n_);
  std::vector<Item> a;
  for (Item i = 0; i < n_; ++i) {
    in_a[i] = candidates_[i] || unranked_[i];
    if (in_a[i]) a.push_back(i);
  }
  if (a.size() % 2 == 1) {
    std::vector<Item> outside;
    for (Item i = 0; i < n_; ++i)
      if (!in_a[i]) outside.push_back(i);
    // Everything outside A is ranked; take the best of them.
    const Item k = *std::min_element(outside.begin(), outside.end(),
                                     [&](Item x, Item y) { return *ranks_[x] < *ranks_[y]; });
    in_a[k] = true;
    a.insert(std::upper_bound(a.begin(), a.end(), k), k);
  }
  const Matching d = filler_matching(in_a);
  const auto rounds = round_robin_schedule(a);

  const double scale = env.observation_scale();
  std::vector<std::uint64_t> counted(n_, 0);
  std::uint64_t played = 0;
  for (const Round& round : rounds) {
    if (env.exhausted()) break;
    Matching m = d;
    m.pairs.insert(m.pairs.end(), round.pairs.begin(), round.pairs.end());
    const Feedback fb = env.play(m);
    ++played;
    for (const Observation& o : fb.observations) {
      const Item i = o.pair.a, j = o.pair.b;
      if (unranked_[i] && candidates_[j]) {
        trackers_[i].ingest(scale * o.x, policy_);
        ++counted[i];
      }
      if (unranked_[j] && candidates_[i]) {
        trackers_[j].ingest(scale * o.x, policy_);
        ++counted[j];
      }
    }
  }

  for (Item i = 0; i < n_; ++i) {
    if (!unranked_[i]) continue;
    exposure_[i] += played;
    // Cumulative counted share, 4/9 as a ratio of integers.
    if (9 * trackers_[i].count() < 4 * exposure_[i]) ++share_violations_;
  }

  remaining_ -= settle_ranks(bounds(), ranks_);
  for (Item i = 0; i < n_; ++i) unranked_[i] = !ranks_[i];
  return played;
}

Matching MatchingId::answer() const {
  std::vector<Item> ranked(n_);
  for (Item i = 0; i < n_; ++i) ranked[*ranks_[i]] = i;
  return adjacent_pairing(ranked);
}

MatchingIdRun matching_id(Environment& env, double delta, ExploreLimits limits) {
  if (env.kind() != InstanceKind::monopartite) throw ShapeError("needs a monopartite instance");
  MatchingId algo(env.n_items(), delta);
  MatchingIdRun out;
  const std::uint64_t start = env.steps();
  while (!algo.done()) {
    if (env.steps() - start >= limits.max_samples) {
      out.run.budget_exhausted = true;
      break;
    }
    algo.iteration(env);
    ++out.iterations;
  }
  out.run.tau = env.steps() - start;
  if (algo.done()) out.run.answer = algo.answer();
  out.candidate_violations = algo.candidate_violations();
  out.share_violations = algo.share_violations();
  out.max_candidates = algo.max_candidates();
  return out;
}

MatchingIdRun matching_id(const Rank1Instance& instance, double delta, std::uint64_t seed, ExploreLimits limits) {
  if (instance.kind() != InstanceKind::monopartite) throw ShapeError("needs a monopartite instance");
  if (!(compute_gaps(instance).delta_min > 0.0)) throw RefusalError("optimal matching is not unique");
  Environment env(instance, ActionMode::matching, seed);
  return matching_id(env, delta, limits);
}

}  // namespace matchbandit
