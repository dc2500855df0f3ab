#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "matchbandit/confbound.hpp"
#include "matchbandit/instance.hpp"

namespace matchbandit {

// Global 0-based ranks; nullopt while unknown.
using RankSlots = std::vector<std::optional<std::size_t>>;

// Ranks not yet taken, in increasing order.
std::vector<std::size_t> free_ranks(const RankSlots& ranks);

// Fixes the rank of unranked items whose place among the free ranks is
// certain: disjoint from every other unranked interval, or overlapping exactly
// one other item j (and j only i) such that the two fill ranks {2k, 2k+1}.
// Intervals of ranked items are ignored. Returns the number of items ranked.
std::size_t settle_ranks(std::span<const Interval> bounds, RankSlots& ranks);

// Best rank item i can still take: its own rank once fixed, else the free
// rank left after the unranked items separated above it.
std::size_t best_possible_rank(std::span<const Interval> bounds, const RankSlots& ranks, std::size_t i);

// Items whose best possible rank is below `slots`.
std::vector<bool> candidate_best(std::span<const Interval> bounds, const RankSlots& ranks, std::size_t slots);

}  // namespace matchbandit
