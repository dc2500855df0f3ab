#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "matchbandit/env.hpp"
#include "matchbandit/errors.hpp"
#include "matchbandit/instance.hpp"

namespace matchbandit {

struct RegretRun {
  std::vector<Checkpoint> checkpoints;
  double cum_regret = 0.0;
  std::uint64_t steps = 0;
};

struct ExploreRun {
  std::optional<Matching> answer;
  // Pair plays in pair-selection mode, matchings in matching-selection mode.
  std::uint64_t tau = 0;
  bool budget_exhausted = false;
};

struct ExploreLimits {
  std::uint64_t max_samples = 500'000'000;
};

// Regret runs loop until the horizon, so an unbounded environment is refused.
inline void require_horizon(const Environment& env) {
  if (env.horizon() == 0) throw ParameterError("regret runs need a horizon of at least 1");
}

inline RegretRun regret_run_from(const Environment& env) {
  return {env.ledger().checkpoints(), env.ledger().cum_regret(), env.ledger().t()};
}

}  // namespace matchbandit
