#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "matchbandit/instance.hpp"

namespace matchbandit {

struct Round {
  std::vector<Pair> pairs;
  std::optional<Item> bye;
};

// Circle-method tournament. Even size n: n-1 rounds; odd size: n rounds with one bye each.
std::vector<Round> round_robin_schedule(const std::vector<Item>& items);

// All perfect matchings of {0..n-1}; refuses odd n or n > 12.
std::vector<Matching> enumerate_perfect_matchings(std::size_t n_items);

inline constexpr std::size_t kMaxEnumeratedItems = 12;

}  // namespace matchbandit
