#pragma once

#include <cstddef>
#include <cstdint>
#include <random>
#include <vector>

#include "matchbandit/instance.hpp"

namespace matchbandit {

class SeededRng {
 public:
  SeededRng(std::uint64_t seed, std::uint64_t stream);

  double uniform() { return unit_(engine_); }
  bool bernoulli(double p) { return unit_(engine_) < p; }
  double normal(double mean, double sd) { return mean + sd * gauss_(engine_); }
  std::size_t index(std::size_t n) { return std::uniform_int_distribution<std::size_t>(0, n - 1)(engine_); }
  std::mt19937_64& engine() { return engine_; }

 private:
  std::mt19937_64 engine_;
  std::uniform_real_distribution<double> unit_{0.0, 1.0};
  std::normal_distribution<double> gauss_{0.0, 1.0};
};

// Stream ids used by the drivers for one run.
namespace streams {
inline constexpr std::uint64_t noise = 0;
inline constexpr std::uint64_t policy = 1;
inline constexpr std::uint64_t labels = 2;
inline constexpr std::uint64_t instance_rows = 3;
inline constexpr std::uint64_t instance_cols = 4;
}  // namespace streams

struct Observation {
  Pair pair;
  double x = 0.0;
};

struct Feedback {
  std::vector<Observation> observations;
};

double sample_pair(const Rank1Instance& instance, Pair p, SeededRng& rng);
Feedback sample_feedback(const Rank1Instance& instance, const Matching& matching, SeededRng& rng);

struct Checkpoint {
  std::uint64_t t = 0;
  double cum_regret = 0.0;

  friend bool operator==(const Checkpoint&, const Checkpoint&) = default;
};

struct CheckpointOptions {
  std::uint64_t linear_until = 100;
  // Geometric growth after the linear part: t_next = ceil(t * (1 + percent/100)).
  std::uint64_t growth_percent = 5;
};

std::vector<std::uint64_t> checkpoint_grid(std::uint64_t horizon, const CheckpointOptions& options = {});

class RegretLedger {
 public:
  // horizon 0 keeps the running total without checkpoints.
  explicit RegretLedger(std::uint64_t horizon = 0, CheckpointOptions options = {});

  void record(double step_regret) {
    ++t_;
    cum_regret_ += step_regret;
    if (next_ < grid_.size() && grid_[next_] == t_) {
      checkpoints_.push_back({t_, cum_regret_});
      ++next_;
    }
  }

  std::uint64_t t() const { return t_; }
  double cum_regret() const { return cum_regret_; }
  const std::vector<Checkpoint>& checkpoints() const { return checkpoints_; }

 private:
  std::uint64_t t_ = 0;
  double cum_regret_ = 0.0;
  std::vector<std::uint64_t> grid_;
  std::size_t next_ = 0;
  std::vector<Checkpoint> checkpoints_;
};

void record_step(RegretLedger& ledger, const Rank1Instance& instance, const Matching& matching, MatchingMode mode);

enum class ActionMode { pair, matching };

// One run's view of the world: noisy feedback plus regret bookkeeping.
// Algorithms should only use the observation side.
class Environment {
 public:
  Environment(Rank1Instance instance, ActionMode mode, std::uint64_t seed, std::uint64_t horizon = 0,
              CheckpointOptions checkpoints = {});

  double play(Pair p);
  Feedback play(const Matching& m);

  InstanceKind kind() const { return instance_.kind(); }
  ActionMode mode() const { return mode_; }
  std::size_t n_rows() const { return instance_.n_rows(); }
  std::size_t n_cols() const { return instance_.n_cols(); }
  std::size_t n_items() const { return instance_.n_items(); }
  // Factor bringing observations to the 1/2-sub-Gaussian scale the confidence radius assumes.
  double observation_scale() const { return scale_; }

  std::uint64_t steps() const { return ledger_.t(); }
  std::uint64_t horizon() const { return horizon_; }
  bool exhausted() const { return horizon_ != 0 && ledger_.t() >= horizon_; }

  const RegretLedger& ledger() const { return ledger_; }
  const Rank1Instance& instance() const { return instance_; }

  // Per-pair play counts, indexed a * n_cols + b; off unless enabled.
  void track_pair_counts();
  const std::vector<std::uint64_t>& pair_counts() const { return pair_counts_; }

 private:
  Rank1Instance instance_;
  ActionMode mode_;
  SeededRng rng_;
  std::uint64_t horizon_;
  RegretLedger ledger_;
  double best_ = 0.0;
  double scale_ = 1.0;
  std::vector<std::uint64_t> pair_counts_;
};

}  // namespace matchbandit
