#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "matchbandit/instance.hpp"

namespace matchbandit {

// Closed-form bound terms without the unknown leading constants.
struct BoundReport {
  std::string name;
  double value = 0.0;
  std::vector<std::pair<std::string, double>> components;

  std::optional<double> component(const std::string& key) const;
  void add(std::string key, double v) { components.emplace_back(std::move(key), v); }
};

// Row/column gap sums for pair selection on a bipartite instance; value is
// the regret term A(u,v) ln T.
BoundReport pair_bounds(const Rank1Instance& instance, double horizon, double delta);

// Pair selection on a monopartite instance; value is the regret term.
BoundReport mono_bounds(const Rank1Instance& instance, double horizon, double delta);

// Matching identification; value is ln(1/delta) / gamma_min^2.
BoundReport matching_id_bounds(const Rank1Instance& instance, double delta);

// Adaptive matching against exploration first, once the top two items are
// known. m is a 1-based rank in [3, 2N-1]; defaults to the largest adjacent gap.
BoundReport exploration_first_ratio(const Rank1Instance& instance, std::optional<std::size_t> m = std::nullopt);

// Regret of a round robin within a sorted block, for 1-based pair indices i < j.
double pair_interaction_regret(const std::vector<double>& sorted, std::size_t i, std::size_t j);

std::string to_json(const BoundReport& report);

}  // namespace matchbandit
