#include "matchbandit/gaps.hpp"

#include <algorithm>
#include <limits>
#include <numeric>

#include "matchbandit/combinatorics.hpp"

namespace matchbandit {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

std::vector<double> gaps_to_max(const std::vector<double>& values) {
  const double top = *std::max_element(values.begin(), values.end());
  std::vector<double> out(values.size());
  for (std::size_t i = 0; i < values.size(); ++i) out[i] = top - values[i];
  return out;
}

double clamp_tie(double gap) { return gap <= kRewardTieTolerance ? 0.0 : gap; }

double delta_min_exact(const Rank1Instance& inst, const Matching& best, double best_reward) {
  double out = kInf;
  for (const Matching& m : enumerate_perfect_matchings(inst.n_items())) {
    if (same_matching(m, best, InstanceKind::monopartite)) continue;
    out = std::min(out, clamp_tie(best_reward - expected_reward(inst, m)));
  }
  return out;
}

// Re-pair two consecutive optimal pairs in both alternative ways.
double delta_min_adjacent(const Rank1Instance& inst, const std::vector<Item>& ranked) {
  const auto& u = inst.u();
  double out = kInf;
  for (std::size_t k = 0; k + 3 < ranked.size(); k += 2) {
    const double a = u[ranked[k]], b = u[ranked[k + 1]], c = u[ranked[k + 2]], d = u[ranked[k + 3]];
    const double base = a * b + c * d;
    out = std::min({out, clamp_tie(base - (a * c + b * d)), clamp_tie(base - (a * d + b * c))});
  }
  return out;
}

}  // namespace

GapSummary compute_gaps(const Rank1Instance& instance) {
  GapSummary g;
  if (instance.kind() == InstanceKind::bipartite) {
    g.delta_row = gaps_to_max(instance.u());
    g.delta_col = gaps_to_max(instance.v());
    return g;
  }

  const auto& u = instance.u();
  const std::size_t n = u.size();
  const std::size_t pairs = n / 2;
  g.ranking = rank_order(u);
  // r(k): value at 1-based rank k.
  auto r = [&](std::size_t k) { return u[g.ranking[k - 1]]; };

  g.delta_row = gaps_to_max(u);
  g.delta_2i.assign(n, 0.0);
  g.delta_pairsel.assign(n, 0.0);
  for (std::size_t rank = 1; rank <= n; ++rank) {
    const Item item = g.ranking[rank - 1];
    if (rank >= 3) g.delta_2i[item] = r(2) - r(rank);
    double d = 0.0;
    if (rank == 1) {
      d = n >= 3 ? r(1) - r(3) : 0.0;
    } else if (rank == n) {
      d = n >= 4 ? r(n - 2) - r(n) : 0.0;
    } else if (rank % 2 == 0) {
      d = r(rank) - r(rank + 1);
    } else {
      d = r(rank - 1) - r(rank);
    }
    g.delta_pairsel[item] = d;
  }

  const double total = std::accumulate(u.begin(), u.end(), 0.0);
  g.gamma_min = kInf;
  for (std::size_t k = 1; k < pairs; ++k) {
    const double gap = r(2 * k) - r(2 * k + 1);
    const double mu = (total - r(2 * k) - r(2 * k + 1)) / static_cast<double>(n);
    g.adjacent_gap.push_back(gap);
    g.mu_excl.push_back(mu);
    g.gamma_min = std::min(g.gamma_min, mu * gap);
  }

  for (std::size_t k = 2; k < pairs; ++k)
    if (!g.s_index || g.adjacent_gap[k - 1] < g.adjacent_gap[*g.s_index - 1]) g.s_index = k;
  for (std::size_t k = 1; k < pairs; ++k) {
    if (g.s_index && k == *g.s_index) continue;
    const double score = g.adjacent_gap[k - 1] * g.mu_excl[k - 1];
    if (!g.h_index || score < g.adjacent_gap[*g.h_index - 1] * g.mu_excl[*g.h_index - 1]) g.h_index = k;
  }

  const Matching best = adjacent_pairing(g.ranking);
  if (n <= kMaxEnumeratedItems) {
    g.delta_min = delta_min_exact(instance, best, expected_reward(instance, best));
  } else {
    g.delta_min = delta_min_adjacent(instance, g.ranking);
    g.delta_min_approximate = true;
  }
  return g;
}

}  // namespace matchbandit
