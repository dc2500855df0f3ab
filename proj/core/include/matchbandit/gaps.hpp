#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "matchbandit/instance.hpp"

namespace matchbandit {

// Gap quantities. Per-item vectors are indexed by label; per-boundary vectors
// are indexed by k-1 for k = 1..N-1 (boundary between ranks 2k and 2k+1).
struct GapSummary {
  std::vector<double> delta_row;
  std::vector<double> delta_col;

  std::vector<Item> ranking;
  std::vector<double> delta_2i;
  std::vector<double> delta_pairsel;
  std::vector<double> adjacent_gap;
  std::vector<double> mu_excl;
  double delta_min = 0.0;
  bool delta_min_approximate = false;
  double gamma_min = 0.0;
  // 1-based boundary indices.
  std::optional<std::size_t> s_index;
  std::optional<std::size_t> h_index;
};

GapSummary compute_gaps(const Rank1Instance& instance);

// Rewards closer than this are treated as tied.
inline constexpr double kRewardTieTolerance = 1e-12;

}  // namespace matchbandit
