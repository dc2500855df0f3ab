#include "matchbandit/pair_elim_mono.hpp"

#include <algorithm>
#include <cmath>

#include "matchbandit/errors.hpp"
#include "matchbandit/gaps.hpp"
#include "matchbandit/pair_elim.hpp"
#include "matchbandit/ranking.hpp"

namespace matchbandit {

PairMask::PairMask(std::size_t n) : n_(n), bits_(n * n, 0) { fill(); }

void PairMask::fill() {
  for (std::size_t i = 0; i < n_; ++i)
    for (std::size_t j = 0; j < n_; ++j) bits_[i * n_ + j] = i != j ? 1 : 0;
}

std::size_t PairMask::count() const { return static_cast<std::size_t>(std::count(bits_.begin(), bits_.end(), 1)); }

PairMask PairMask::operator&(const PairMask& other) const {
  PairMask out = *this;
  for (std::size_t k = 0; k < bits_.size(); ++k) out.bits_[k] = bits_[k] & other.bits_[k];
  return out;
}

void apply_row_rules(PairMask& s, const Dominators& rows) {
  const auto n = static_cast<Item>(s.size());
  for (Item i = 0; i < n; ++i) {
    if (rows[i].empty()) continue;
    const bool keep_one = rows[i].size() == 1;
    for (Item l = 0; l < n; ++l) {
      if (keep_one && l == rows[i][0]) continue;
      s.set(i, l, false);
      s.set(l, i, false);
    }
  }
}

void apply_col_rules(PairMask& s, const Dominators& cols) {
  const auto n = static_cast<Item>(s.size());
  for (Item i = 0; i < n; ++i) {
    if (cols[i].empty()) continue;
    const bool keep_one = cols[i].size() == 1;
    for (Item l = 0; l < n; ++l)
      if (!(keep_one && l == cols[i][0])) s.set(l, i, false);
  }
}

namespace {

BetaPolicy window_policy(std::uint32_t w) { return BetaPolicy::horizon(std::pow(2.0, std::pow(2.0, w))); }

}  // namespace

PairElimMono::PairElimMono(std::size_t n_items, MonoOptions options)
    : n_(n_items),
      options_(options),
      row_policy_(options.delta ? BetaPolicy::mono_explore(n_items, 1.0 / *options.delta)
                                : BetaPolicy::horizon(std::max<double>(static_cast<double>(options.horizon), 3.0))),
      col_policy_(window_policy(0)),
      row_entry_(n_items * n_items),
      row_agg_(n_items * n_items),
      col_entry_(n_items * n_items),
      col_agg_(n_items * n_items),
      s_row_(n_items),
      s_col_(n_items),
      active_(n_items) {
  if (n_ < 2) throw ShapeError("need at least two items");
  if (options_.delta && !(*options_.delta > 0.0 && *options_.delta < 1.0))
    throw ParameterError("delta must lie in (0,1)");
}

Dominators PairElimMono::dominators(const std::vector<EliminationTracker>& entry,
                                    const std::vector<EliminationTracker>& agg) const {
  Dominators d(n_);
  for (std::size_t i = 0; i < n_; ++i)
    for (std::size_t j = 0; j < n_; ++j) {
      if (i == j) continue;
      bool below = agg[i * n_ + j].upper() < agg[j * n_ + i].lower();
      for (std::size_t k = 0; k < n_ && !below; ++k)
        if (k != i && k != j) below = entry[i * n_ + k].upper() < entry[j * n_ + k].lower();
      if (below) d[i].push_back(static_cast<Item>(j));
    }
  return d;
}

void PairElimMono::refresh() {
  if (!rows_dirty_ && !cols_dirty_) return;
  if (rows_dirty_) {
    d_row_ = dominators(row_entry_, row_agg_);
    apply_row_rules(s_row_, d_row_);
  }
  if (cols_dirty_) {
    d_col_ = dominators(col_entry_, col_agg_);
    apply_col_rules(s_col_, d_col_);
  }
  rows_dirty_ = cols_dirty_ = false;
  PairMask next = s_row_ & s_col_;
  if (next.empty()) next = s_row_;
  if (!next.empty()) active_ = next;
}

void PairElimMono::reset_columns() {
  for (auto& t : col_entry_) t.reset();
  for (auto& t : col_agg_) t.reset();
  s_col_.fill();
  cols_dirty_ = true;
  s_ = 0;
}

bool PairElimMono::observe(std::vector<EliminationTracker>& entry, std::vector<EliminationTracker>& agg, Item i,
                           Item k, double x, const BetaPolicy& policy) {
  bool refreshed = entry[i * n_ + k].ingest(x, policy);
  // Aggregate of i excluding j only takes partners k that j is also playing,
  // so both sides of an aggregate comparison average the same partners.
  for (Item j = 0; j < n_; ++j)
    if (j != i && j != k && active_(j, k)) refreshed |= agg[i * n_ + j].ingest(x, policy);
  return refreshed;
}

std::optional<Pair> PairElimMono::top_pair() const {
  std::vector<Item> top;
  for (Item i = 0; i < n_; ++i)
    if (d_row_[i].size() <= 1) top.push_back(i);
  if (top.size() != 2) return std::nullopt;
  return Pair{top[0], top[1]};
}

std::uint64_t PairElimMono::step(Environment& env) {
  if (recommendation_) return 0;
  refresh();
  if (options_.delta) {
    recommendation_ = top_pair();
    if (recommendation_) return 0;
  }
  const double scale = env.observation_scale();
  const PairMask sweep = active_;
  std::uint64_t plays = 0;
  for (Item i = 0; i < n_; ++i)
    for (Item j = 0; j < n_; ++j) {
      if (!sweep(i, j)) continue;
      if (env.exhausted()) return plays;
      rows_dirty_ |= observe(row_entry_, row_agg_, i, j, scale * env.play(Pair{i, j}), row_policy_);
      ++plays;
      if (env.exhausted()) return plays;
      cols_dirty_ |= observe(col_entry_, col_agg_, j, i, scale * env.play(Pair{i, j}), col_policy_);
      ++plays;
      s_ += 2;
    }
  if (s_ > window_length(w_)) {
    ++w_;
    col_policy_ = window_policy(w_);
    reset_columns();
  }
  return plays;
}

namespace {

void require_mono(const Rank1Instance& instance) {
  if (instance.kind() != InstanceKind::monopartite) throw ShapeError("needs a monopartite instance");
}

void require_mono(const Environment& env) {
  if (env.kind() != InstanceKind::monopartite) throw ShapeError("needs a monopartite instance");
}

// Items ranked 2 and 3 must differ for the best pair to be unique.
void require_unique_top_pair(const Rank1Instance& instance) {
  const auto order = rank_order(instance.u());
  if (order.size() > 2 && !(instance.u()[order[1]] > instance.u()[order[2]]))
    throw RefusalError("best pair is not unique");
}

}  // namespace

RegretRun mono_regret(Environment& env, std::uint64_t) {
  require_mono(env);
  PairElimMono algo(env.n_items(), {env.horizon(), std::nullopt});
  require_horizon(env);
  while (!env.exhausted()) algo.step(env);
  return regret_run_from(env);
}

RegretRun mono_regret(const Rank1Instance& instance, std::uint64_t horizon, std::uint64_t seed,
                      CheckpointOptions checkpoints) {
  require_mono(instance);
  Environment env(instance, ActionMode::pair, seed, horizon, checkpoints);
  return mono_regret(env, seed);
}

ExploreRun mono_explore(Environment& env, double delta, std::uint64_t, ExploreLimits limits) {
  require_mono(env);
  PairElimMono algo(env.n_items(), {0, delta});
  const std::uint64_t start = env.steps();
  ExploreRun run;
  while (!algo.recommend()) {
    if (env.steps() - start >= limits.max_samples) {
      run.budget_exhausted = true;
      break;
    }
    algo.step(env);
  }
  run.tau = env.steps() - start;
  if (algo.recommend()) run.answer = Matching{{*algo.recommend()}};
  return run;
}

ExploreRun mono_explore(const Rank1Instance& instance, double delta, std::uint64_t seed, ExploreLimits limits) {
  require_mono(instance);
  require_unique_top_pair(instance);
  Environment env(instance, ActionMode::pair, seed);
  return mono_explore(env, delta, seed, limits);
}

PairSelectRun pair_select(Environment& env, double delta, std::uint64_t seed, ExploreLimits limits) {
  require_mono(env);
  if (!(delta > 0.0 && delta < 1.0)) throw ParameterError("delta must lie in (0,1)");
  const std::size_t n = env.n_items();
  PairSelectRun out;
  out.phase2_samples.assign(n, 0);

  const ExploreRun first = mono_explore(env, delta / 2.0, seed, limits);
  out.phase1_samples = first.tau;
  out.run.tau = first.tau;
  if (!first.answer) {
    out.run.budget_exhausted = first.budget_exhausted;
    return out;
  }
  const Pair top = first.answer->pairs.front();

  std::vector<Item> rest;
  for (Item i = 0; i < n; ++i)
    if (i != top.a && i != top.b) rest.push_back(i);

  const BetaPolicy policy = BetaPolicy::mono_explore(n, 2.0 / delta);
  const double scale = env.observation_scale();
  std::vector<EliminationTracker> trackers(n);
  RankSlots ranks(n);
  ranks[std::min(top.a, top.b)] = 0;
  ranks[std::max(top.a, top.b)] = 1;
  std::size_t remaining = rest.size();
  std::vector<Interval> bounds(n);

  while (remaining > 0) {
    if (out.run.tau >= limits.max_samples) {
      out.run.budget_exhausted = true;
      return out;
    }
    bool refreshed = false;
    for (const Item i : rest) {
      if (ranks[i]) continue;
      refreshed |= trackers[i].ingest(scale * env.play(Pair{top.a, i}), policy);
      refreshed |= trackers[i].ingest(scale * env.play(Pair{top.b, i}), policy);
      out.phase2_samples[i] += 2;
      out.run.tau += 2;
    }
    if (!refreshed) continue;
    for (const Item i : rest) bounds[i] = interval_of(trackers[i]);
    remaining -= settle_ranks(bounds, ranks);
  }

  std::vector<Item> ranked(n);
  for (Item i = 0; i < n; ++i) ranked[*ranks[i]] = i;
  out.run.answer = adjacent_pairing(ranked);
  return out;
}

PairSelectRun pair_select(const Rank1Instance& instance, double delta, std::uint64_t seed, ExploreLimits limits) {
  require_mono(instance);
  if (!(compute_gaps(instance).delta_min > 0.0)) throw RefusalError("optimal matching is not unique");
  Environment env(instance, ActionMode::pair, seed);
  return pair_select(env, delta, seed, limits);
}

}  // namespace matchbandit
