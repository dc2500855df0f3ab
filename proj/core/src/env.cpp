#include "matchbandit/env.hpp"

#include <algorithm>

#include "matchbandit/errors.hpp"

namespace matchbandit {

SeededRng::SeededRng(std::uint64_t seed, std::uint64_t stream) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(stream), static_cast<std::uint32_t>(stream >> 32),
                    0x6d617463u};
  engine_.seed(seq);
}

double sample_pair(const Rank1Instance& instance, Pair p, SeededRng& rng) {
  const double mean = instance.mean(p);
  if (instance.dist().kind == Distribution::Kind::bernoulli) return rng.bernoulli(mean) ? 1.0 : 0.0;
  return instance.dist().sigma == 0.0 ? mean : rng.normal(mean, instance.dist().sigma);
}

Feedback sample_feedback(const Rank1Instance& instance, const Matching& matching, SeededRng& rng) {
  Feedback fb;
  fb.observations.reserve(matching.pairs.size());
  for (const Pair& p : matching.pairs) fb.observations.push_back({p, sample_pair(instance, p, rng)});
  return fb;
}

std::vector<std::uint64_t> checkpoint_grid(std::uint64_t horizon, const CheckpointOptions& options) {
  std::vector<std::uint64_t> grid;
  std::uint64_t t = 1;
  while (t <= horizon) {
    grid.push_back(t);
    if (t < options.linear_until || options.growth_percent == 0)
      t += 1;
    else
      t += std::max<std::uint64_t>(1, (t * options.growth_percent + 99) / 100);
  }
  if (horizon > 0 && grid.back() != horizon) grid.push_back(horizon);
  return grid;
}

RegretLedger::RegretLedger(std::uint64_t horizon, CheckpointOptions options)
    : grid_(checkpoint_grid(horizon, options)) {
  checkpoints_.reserve(grid_.size());
}

void record_step(RegretLedger& ledger, const Rank1Instance& instance, const Matching& matching, MatchingMode mode) {
  const double best = expected_reward(instance, optimal_matching(instance, mode));
  ledger.record(best - expected_reward(instance, matching));
}

Environment::Environment(Rank1Instance instance, ActionMode mode, std::uint64_t seed, std::uint64_t horizon,
                         CheckpointOptions checkpoints)
    : instance_(std::move(instance)),
      mode_(mode),
      rng_(seed, streams::noise),
      horizon_(horizon),
      ledger_(horizon, checkpoints) {
  if (mode_ == ActionMode::matching) {
    if (instance_.kind() != InstanceKind::monopartite)
      throw ShapeError("matching actions need a monopartite instance");
    best_ = expected_reward(instance_, optimal_matching(instance_, MatchingMode::maximal));
  } else {
    if (instance_.kind() == InstanceKind::monopartite && instance_.n_items() < 2)
      throw ShapeError("pair actions need at least two items");
    best_ = expected_reward(instance_, optimal_matching(instance_, MatchingMode::minimal));
  }
  const auto& d = instance_.dist();
  if (d.kind == Distribution::Kind::gaussian && d.sigma > 0.5) scale_ = 1.0 / (2.0 * d.sigma);
}

void Environment::track_pair_counts() { pair_counts_.assign(instance_.n_rows() * instance_.n_cols(), 0); }

double Environment::play(Pair p) {
  if (mode_ != ActionMode::pair) throw InvariantViolation("pair played in matching mode");
  if (!instance_.valid_pair(p)) throw std::out_of_range("pair outside the instance");
  if (exhausted()) throw InvariantViolation("play past the horizon");
  if (!pair_counts_.empty()) ++pair_counts_[p.a * instance_.n_cols() + p.b];
  const double x = sample_pair(instance_, p, rng_);
  ledger_.record(best_ - instance_.mean(p));
  return x;
}

Feedback Environment::play(const Matching& m) {
  if (mode_ != ActionMode::matching) throw InvariantViolation("matching played in pair mode");
  if (!is_perfect_matching(m, instance_.n_items())) throw InvariantViolation("action is not a perfect matching");
  if (exhausted()) throw InvariantViolation("play past the horizon");
  Feedback fb;
  fb.observations.reserve(m.pairs.size());
  double reward = 0.0;
  for (const Pair& p : m.pairs) {
    if (!pair_counts_.empty()) ++pair_counts_[p.a * instance_.n_cols() + p.b];
    fb.observations.push_back({p, sample_pair(instance_, p, rng_)});
    reward += instance_.mean(p);
  }
  ledger_.record(std::max(0.0, best_ - reward));
  return fb;
}

}  // namespace matchbandit
