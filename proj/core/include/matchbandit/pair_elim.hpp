#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

#include "matchbandit/confbound.hpp"
#include "matchbandit/env.hpp"
#include "matchbandit/instance.hpp"
#include "matchbandit/runs.hpp"

namespace matchbandit {

// h(i) = i unless some item provably beats i on a shared coordinate, in which
// case the largest such label. Trackers are laid out [item * coords + coord].
std::vector<Item> domination_map(const std::vector<EliminationTracker>& trackers, std::size_t n_items,
                                 std::size_t coords);

// Follows h until a fixed point (or a cycle) is reached.
std::vector<Item> resolve_representatives(const std::vector<Item>& h);

// Sorted distinct representatives.
std::vector<Item> representative_set(const std::vector<Item>& reps);

// Window w lasts 2^(2^w) plays; saturates.
std::uint64_t window_length(std::uint32_t w);

enum class Timescale {
  windowed,  // columns restart on doubly exponential windows
  single,    // one window spanning the horizon
};

struct PairElimOptions {
  Timescale timescale = Timescale::windowed;
  // Regret mode needs the horizon; exploration mode needs delta.
  std::uint64_t horizon = 0;
  std::optional<double> delta;
};

class PairElim {
 public:
  PairElim(std::size_t n_rows, std::size_t n_cols, PairElimOptions options, std::uint64_t seed);

  // One sweep of row plays then column plays; returns the number of plays.
  std::uint64_t step(Environment& env);
  std::optional<Pair> recommend() const { return recommendation_; }

  const std::vector<Item>& row_map();
  const std::vector<Item>& col_map();
  const std::vector<Item>& active_rows();
  const std::vector<Item>& active_cols();

  std::uint32_t window() const { return w_; }
  std::uint64_t window_samples() const { return s_; }
  bool column_phase() const { return column_phase_; }

  // coord 0 is the aggregate, coord k+1 the statistic against column k.
  const EliminationTracker& row_tracker(Item row, std::size_t coord) const {
    return row_trackers_[row * (m_ + 1) + coord];
  }
  const EliminationTracker& col_tracker(Item col, std::size_t coord) const {
    return col_trackers_[col * (n_ + 1) + coord];
  }

 private:
  void refresh_rows();
  void refresh_cols();
  void reset_columns();
  void observe_row(Item i, Item j, double x);
  void observe_col(Item i, Item j, double x);

  std::size_t n_;
  std::size_t m_;
  PairElimOptions options_;
  SeededRng rng_;
  BetaPolicy row_policy_;
  BetaPolicy col_policy_;

  std::vector<EliminationTracker> row_trackers_;
  std::vector<EliminationTracker> col_trackers_;
  bool rows_dirty_ = true;
  bool cols_dirty_ = true;
  std::vector<Item> h_u_, h_v_, rep_u_, rep_v_, active_u_, active_v_;

  std::uint32_t w_ = 0;
  std::uint64_t s_ = 0;
  bool column_phase_ = false;
  std::optional<Pair> recommendation_;
};

RegretRun pair_elim_regret(Environment& env, Timescale timescale, std::uint64_t seed);
RegretRun pair_elim_regret(const Rank1Instance& instance, std::uint64_t horizon, std::uint64_t seed,
                           CheckpointOptions checkpoints = {});
ExploreRun pair_elim_explore(Environment& env, double delta, std::uint64_t seed, ExploreLimits limits = {});
ExploreRun pair_elim_explore(const Rank1Instance& instance, double delta, std::uint64_t seed,
                             ExploreLimits limits = {});

}  // namespace matchbandit
