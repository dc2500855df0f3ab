#include "matchbandit/ranking.hpp"

namespace matchbandit {

namespace {

bool overlap(const Interval& a, const Interval& b) { return separated(a, b) == Separation::undecided; }

}  // namespace

std::vector<std::size_t> free_ranks(const RankSlots& ranks) {
  std::vector<bool> taken(ranks.size(), false);
  for (const auto& r : ranks)
    if (r) taken[*r] = true;
  std::vector<std::size_t> out;
  for (std::size_t k = 0; k < ranks.size(); ++k)
    if (!taken[k]) out.push_back(k);
  return out;
}

namespace {

// Unranked items separated above i.
std::size_t unranked_above(std::span<const Interval> bounds, const RankSlots& ranks, std::size_t i) {
  std::size_t above = 0;
  for (std::size_t j = 0; j < bounds.size(); ++j)
    if (j != i && !ranks[j] && separated(bounds[j], bounds[i]) == Separation::a_above_b) ++above;
  return above;
}

}  // namespace

std::size_t best_possible_rank(std::span<const Interval> bounds, const RankSlots& ranks, std::size_t i) {
  if (ranks[i]) return *ranks[i];
  return free_ranks(ranks)[unranked_above(bounds, ranks, i)];
}

std::vector<bool> candidate_best(std::span<const Interval> bounds, const RankSlots& ranks, std::size_t slots) {
  std::vector<bool> out(bounds.size());
  for (std::size_t i = 0; i < bounds.size(); ++i) out[i] = best_possible_rank(bounds, ranks, i) < slots;
  return out;
}

std::size_t settle_ranks(std::span<const Interval> bounds, RankSlots& ranks) {
  const std::size_t n = bounds.size();
  const auto slots = free_ranks(ranks);
  std::vector<std::vector<std::size_t>> partners(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      if (!ranks[i] && !ranks[j] && overlap(bounds[i], bounds[j])) {
        partners[i].push_back(j);
        partners[j].push_back(i);
      }
  RankSlots next = ranks;
  std::size_t settled = 0;
  for (std::size_t i = 0; i < n; ++i) {
    if (ranks[i]) continue;
    const std::size_t pos = unranked_above(bounds, ranks, i);
    if (partners[i].empty()) {
      next[i] = slots[pos];
      ++settled;
      continue;
    }
    if (partners[i].size() != 1) continue;
    const std::size_t j = partners[i][0];
    if (partners[j].size() != 1 || pos + 1 >= slots.size()) continue;
    const std::size_t lo = slots[pos], hi = slots[pos + 1];
    if (lo % 2 != 0 || hi != lo + 1) continue;
    next[i] = i < j ? lo : hi;
    ++settled;
  }
  ranks = std::move(next);
  return settled;
}

}  // namespace matchbandit
