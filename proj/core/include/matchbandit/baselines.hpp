#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <vector>

#include "matchbandit/env.hpp"
#include "matchbandit/instance.hpp"
#include "matchbandit/runs.hpp"

namespace matchbandit {

// Pair elimination with a single window spanning the horizon.
RegretRun rank1elim_regret(const Rank1Instance& instance, std::uint64_t horizon, std::uint64_t seed,
                           CheckpointOptions checkpoints = {});

// Exploration schedule f(t) of the ESCB bonus.
using EscbSchedule = std::function<double(std::uint64_t t, std::size_t n_pairs)>;

// ln t + 4N ln ln max(t, 3), with N pairs per matching.
double escb_default_schedule(std::uint64_t t, std::size_t n_pairs);

class Escb {
 public:
  explicit Escb(std::size_t n_items, EscbSchedule schedule = escb_default_schedule);

  // Index of matching k at step t (1-based).
  double index(std::size_t k, std::uint64_t t) const;
  // First enumerated matching with the largest index.
  std::size_t select(std::uint64_t t) const;
  void observe(const Feedback& fb);

  const std::vector<Matching>& matchings() const { return matchings_; }
  std::uint64_t count(Item i, Item j) const { return counts_[i * n_ + j]; }
  double sum(Item i, Item j) const { return sums_[i * n_ + j]; }

 private:
  std::size_t n_;
  EscbSchedule schedule_;
  std::vector<Matching> matchings_;
  std::vector<std::uint64_t> counts_;
  std::vector<double> sums_;
};

RegretRun escb_regret(Environment& env, EscbSchedule schedule = escb_default_schedule);
RegretRun escb_regret(const Rank1Instance& instance, std::uint64_t horizon, std::uint64_t seed,
                      CheckpointOptions checkpoints = {});

// Uniformly random pair (pair mode) or perfect matching (matching mode).
RegretRun uniform_regret(Environment& env, std::uint64_t seed);
RegretRun uniform_regret(const Rank1Instance& instance, std::uint64_t horizon, ActionMode mode, std::uint64_t seed,
                         CheckpointOptions checkpoints = {});

}  // namespace matchbandit
