#include "matchbandit/pair_elim.hpp"

#include <algorithm>
#include <cmath>

#include "matchbandit/errors.hpp"

namespace matchbandit {

std::vector<Item> domination_map(const std::vector<EliminationTracker>& trackers, std::size_t n_items,
                                 std::size_t coords) {
  std::vector<Item> h(n_items);
  for (std::size_t i = 0; i < n_items; ++i) {
    h[i] = static_cast<Item>(i);
    for (std::size_t j = n_items; j-- > 0;) {
      if (j == i) continue;
      bool beaten = false;
      for (std::size_t k = 0; k < coords && !beaten; ++k)
        beaten = trackers[i * coords + k].upper() < trackers[j * coords + k].lower();
      if (beaten) {
        h[i] = static_cast<Item>(j);
        break;
      }
    }
  }
  return h;
}

std::vector<Item> resolve_representatives(const std::vector<Item>& h) {
  std::vector<Item> reps(h.size());
  std::vector<std::size_t> seen(h.size(), 0);
  for (std::size_t i = 0; i < h.size(); ++i) {
    Item x = static_cast<Item>(i);
    // Stamp with i+1 to detect cycles without clearing.
    while (h[x] != x && seen[x] != i + 1) {
      seen[x] = i + 1;
      x = h[x];
    }
    reps[i] = x;
  }
  return reps;
}

std::vector<Item> representative_set(const std::vector<Item>& reps) {
  std::vector<Item> out = reps;
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

std::uint64_t window_length(std::uint32_t w) {
  if (w >= 6) return kSaturated;
  return std::uint64_t{1} << (std::uint64_t{1} << w);
}

namespace {

BetaPolicy row_policy_for(std::size_t n, std::size_t m, const PairElimOptions& o) {
  if (o.delta) return BetaPolicy::pair_explore(n, m, 1.0 / *o.delta);
  return BetaPolicy::horizon(std::max<double>(static_cast<double>(o.horizon), 3.0));
}

BetaPolicy window_policy(std::uint32_t w, const PairElimOptions& o) {
  if (o.timescale == Timescale::single) return BetaPolicy::horizon(std::max<double>(static_cast<double>(o.horizon), 3.0));
  return BetaPolicy::horizon(std::pow(2.0, std::pow(2.0, w)));
}

}  // namespace

PairElim::PairElim(std::size_t n_rows, std::size_t n_cols, PairElimOptions options, std::uint64_t seed)
    : n_(n_rows),
      m_(n_cols),
      options_(options),
      rng_(seed, streams::policy),
      row_policy_(row_policy_for(n_rows, n_cols, options)),
      col_policy_(window_policy(0, options)),
      row_trackers_(n_rows * (n_cols + 1)),
      col_trackers_(n_cols * (n_rows + 1)) {
  if (n_ == 0 || m_ == 0) throw ShapeError("pair elimination needs rows and columns");
  if (options_.delta && !(*options_.delta > 0.0 && *options_.delta < 1.0))
    throw ParameterError("delta must lie in (0,1)");
}

void PairElim::refresh_rows() {
  if (!rows_dirty_) return;
  h_u_ = domination_map(row_trackers_, n_, m_ + 1);
  rep_u_ = resolve_representatives(h_u_);
  active_u_ = representative_set(rep_u_);
  rows_dirty_ = false;
}

void PairElim::refresh_cols() {
  if (!cols_dirty_) return;
  h_v_ = domination_map(col_trackers_, m_, n_ + 1);
  rep_v_ = resolve_representatives(h_v_);
  active_v_ = representative_set(rep_v_);
  cols_dirty_ = false;
}

const std::vector<Item>& PairElim::row_map() {
  refresh_rows();
  return h_u_;
}
const std::vector<Item>& PairElim::col_map() {
  refresh_cols();
  return h_v_;
}
const std::vector<Item>& PairElim::active_rows() {
  refresh_rows();
  return active_u_;
}
const std::vector<Item>& PairElim::active_cols() {
  refresh_cols();
  return active_v_;
}

void PairElim::reset_columns() {
  for (auto& t : col_trackers_) t.reset();
  cols_dirty_ = true;
  s_ = 0;
}

void PairElim::observe_row(Item i, Item j, double x) {
  EliminationTracker* row = &row_trackers_[i * (m_ + 1)];
  rows_dirty_ |= row[0].ingest(x, row_policy_);
  rows_dirty_ |= row[1 + j].ingest(x, row_policy_);
}

void PairElim::observe_col(Item i, Item j, double x) {
  EliminationTracker* col = &col_trackers_[j * (n_ + 1)];
  cols_dirty_ |= col[0].ingest(x, col_policy_);
  cols_dirty_ |= col[1 + i].ingest(x, col_policy_);
}

std::uint64_t PairElim::step(Environment& env) {
  if (recommendation_) return 0;
  refresh_rows();
  refresh_cols();
  if (options_.delta) {
    if (!column_phase_ && active_u_.size() == 1) {
      column_phase_ = true;
      col_policy_ = row_policy_;
      reset_columns();
      refresh_cols();
    }
    if (column_phase_ && active_v_.size() == 1) {
      recommendation_ = Pair{active_u_[0], active_v_[0]};
      return 0;
    }
  }

  const double scale = env.observation_scale();
  std::uint64_t plays = 0;
  const Item j = rep_v_[rng_.index(m_)];
  for (Item i : active_u_) {
    if (env.exhausted()) return plays;
    observe_row(i, j, scale * env.play(Pair{i, j}));
    ++s_;
    ++plays;
  }
  const Item i = rep_u_[rng_.index(n_)];
  for (Item jj : active_v_) {
    if (env.exhausted()) return plays;
    observe_col(i, jj, scale * env.play(Pair{i, jj}));
    ++s_;
    ++plays;
  }
  if (!column_phase_ && options_.timescale == Timescale::windowed && s_ > window_length(w_)) {
    ++w_;
    col_policy_ = window_policy(w_, options_);
    reset_columns();
  }
  return plays;
}

RegretRun pair_elim_regret(Environment& env, Timescale timescale, std::uint64_t seed) {
  if (env.kind() != InstanceKind::bipartite) throw ShapeError("pair elimination needs a bipartite instance");
  PairElim algo(env.n_rows(), env.n_cols(), {timescale, env.horizon(), std::nullopt}, seed);
  require_horizon(env);
  while (!env.exhausted()) algo.step(env);
  return regret_run_from(env);
}

RegretRun pair_elim_regret(const Rank1Instance& instance, std::uint64_t horizon, std::uint64_t seed,
                           CheckpointOptions checkpoints) {
  if (instance.kind() != InstanceKind::bipartite) throw ShapeError("pair elimination needs a bipartite instance");
  Environment env(instance, ActionMode::pair, seed, horizon, checkpoints);
  return pair_elim_regret(env, Timescale::windowed, seed);
}

ExploreRun pair_elim_explore(Environment& env, double delta, std::uint64_t seed, ExploreLimits limits) {
  if (env.kind() != InstanceKind::bipartite) throw ShapeError("pair elimination needs a bipartite instance");
  PairElim algo(env.n_rows(), env.n_cols(), {Timescale::windowed, 0, delta}, seed);
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

namespace {

bool unique_top(const std::vector<double>& values) {
  const auto order = rank_order(values);
  return order.size() == 1 || values[order[0]] > values[order[1]];
}

}  // namespace

ExploreRun pair_elim_explore(const Rank1Instance& instance, double delta, std::uint64_t seed, ExploreLimits limits) {
  if (instance.kind() != InstanceKind::bipartite) throw ShapeError("pair elimination needs a bipartite instance");
  if (!unique_top(instance.u()) || !unique_top(instance.v()))
    throw RefusalError("best pair is not unique");
  Environment env(instance, ActionMode::pair, seed);
  return pair_elim_explore(env, delta, seed, limits);
}

}  // namespace matchbandit
