#include "matchbandit/combinatorics.hpp"

#include <algorithm>

#include "matchbandit/errors.hpp"

namespace matchbandit {

std::vector<Round> round_robin_schedule(const std::vector<Item>& items) {
  const std::size_t n = items.size();
  if (n < 2) return {};
  const bool odd = n % 2 == 1;
  const std::size_t slots = odd ? n + 1 : n;
  // Slot value n marks the bye.
  std::vector<std::size_t> circle(slots);
  for (std::size_t k = 0; k < slots; ++k) circle[k] = k;

  std::vector<Round> rounds;
  rounds.reserve(slots - 1);
  for (std::size_t r = 0; r + 1 < slots; ++r) {
    Round round;
    for (std::size_t k = 0; k < slots / 2; ++k) {
      const std::size_t x = circle[k];
      const std::size_t y = circle[slots - 1 - k];
      if (x == n || y == n) {
        round.bye = items[x == n ? y : x];
        continue;
      }
      round.pairs.push_back({items[x], items[y]});
    }
    rounds.push_back(std::move(round));
    std::rotate(circle.begin() + 1, circle.end() - 1, circle.end());
  }
  return rounds;
}

namespace {

void extend(std::vector<bool>& used, std::vector<Pair>& current, std::vector<Matching>& out) {
  const auto first = std::find(used.begin(), used.end(), false);
  if (first == used.end()) {
    out.push_back(Matching{current});
    return;
  }
  const auto i = static_cast<Item>(first - used.begin());
  used[i] = true;
  for (Item j = i + 1; j < used.size(); ++j) {
    if (used[j]) continue;
    used[j] = true;
    current.push_back({i, j});
    extend(used, current, out);
    current.pop_back();
    used[j] = false;
  }
  used[i] = false;
}

}  // namespace

std::vector<Matching> enumerate_perfect_matchings(std::size_t n_items) {
  if (n_items % 2 != 0) throw RefusalError("perfect matchings need an even number of items");
  if (n_items > kMaxEnumeratedItems) throw RefusalError("refusing to enumerate matchings on more than 12 items");
  std::vector<Matching> out;
  std::vector<bool> used(n_items, false);
  std::vector<Pair> current;
  extend(used, current, out);
  return out;
}

}  // namespace matchbandit
