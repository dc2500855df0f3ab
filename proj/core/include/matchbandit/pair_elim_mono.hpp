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

struct MonoOptions {
  std::uint64_t horizon = 0;
  std::optional<double> delta;
};

// Active set of ordered pairs (i, j), i != j, as a dense n x n mask.
class PairMask {
 public:
  explicit PairMask(std::size_t n = 0);

  bool operator()(Item i, Item j) const { return bits_[i * n_ + j] != 0; }
  void set(Item i, Item j, bool on) { bits_[i * n_ + j] = on ? 1 : 0; }
  std::size_t size() const { return n_; }
  std::size_t count() const;
  bool empty() const { return count() == 0; }
  void fill();
  PairMask operator&(const PairMask& other) const;

  friend bool operator==(const PairMask&, const PairMask&) = default;

 private:
  std::size_t n_;
  std::vector<char> bits_;
};

// Dominators of each item: j is in d[i] when some shared coordinate proves
// item i below item j.
using Dominators = std::vector<std::vector<Item>>;

// Removal rules: two row dominators drop every pair touching i; one row
// dominator j keeps only (i,j),(j,i) among them. Column rules only touch (.,i).
void apply_row_rules(PairMask& s, const Dominators& rows);
void apply_col_rules(PairMask& s, const Dominators& cols);

class PairElimMono {
 public:
  PairElimMono(std::size_t n_items, MonoOptions options);

  std::uint64_t step(Environment& env);
  std::optional<Pair> recommend() const { return recommendation_; }

  const PairMask& active() const { return active_; }
  const Dominators& row_dominators() const { return d_row_; }
  const Dominators& col_dominators() const { return d_col_; }
  std::uint32_t window() const { return w_; }

  // Row statistic of item i against partner k.
  const EliminationTracker& row_entry(Item i, Item k) const { return row_entry_[i * n_ + k]; }
  // Row aggregate of item i over partners other than j.
  const EliminationTracker& row_aggregate(Item i, Item j) const { return row_agg_[i * n_ + j]; }

 private:
  void refresh();
  void reset_columns();
  Dominators dominators(const std::vector<EliminationTracker>& entry,
                        const std::vector<EliminationTracker>& agg) const;
  bool observe(std::vector<EliminationTracker>& entry, std::vector<EliminationTracker>& agg, Item i, Item k,
               double x, const BetaPolicy& policy);
  std::optional<Pair> top_pair() const;

  std::size_t n_;
  MonoOptions options_;
  BetaPolicy row_policy_;
  BetaPolicy col_policy_;

  std::vector<EliminationTracker> row_entry_, row_agg_, col_entry_, col_agg_;
  bool rows_dirty_ = true;
  bool cols_dirty_ = true;
  Dominators d_row_, d_col_;
  PairMask s_row_, s_col_, active_;

  std::uint32_t w_ = 0;
  std::uint64_t s_ = 0;
  std::optional<Pair> recommendation_;
};

RegretRun mono_regret(Environment& env, std::uint64_t seed);
RegretRun mono_regret(const Rank1Instance& instance, std::uint64_t horizon, std::uint64_t seed,
                      CheckpointOptions checkpoints = {});
ExploreRun mono_explore(Environment& env, double delta, std::uint64_t seed, ExploreLimits limits = {});
ExploreRun mono_explore(const Rank1Instance& instance, double delta, std::uint64_t seed, ExploreLimits limits = {});

struct PairSelectRun {
  ExploreRun run;
  std::uint64_t phase1_samples = 0;
  // Phase-2 plays per item label; zero for the top pair.
  std::vector<std::uint64_t> phase2_samples;
};

PairSelectRun pair_select(Environment& env, double delta, std::uint64_t seed, ExploreLimits limits = {});
PairSelectRun pair_select(const Rank1Instance& instance, double delta, std::uint64_t seed,
                          ExploreLimits limits = {});

}  // namespace matchbandit
