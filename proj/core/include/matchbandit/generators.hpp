#pragma once

#include <cstddef>
#include <cstdint>

#include "matchbandit/instance.hpp"

namespace matchbandit {

// u1 = v1 fixed; the other N-1 rows (and columns) are sorted uniform draws on
// [0, 2(u1 - delta)], so the mean parameter is u1 - (1 - 1/N) delta.
Rank1Instance generate_bipartite(std::size_t n, double u1, double delta, std::uint64_t seed,
                                 Distribution dist = Distribution::bernoulli());

// u_{2i-1} = u_{2i} = (N - i) dtilde.
Rank1Instance generate_mono_equalpairs(std::size_t n_pairs, double dtilde,
                                       Distribution dist = Distribution::bernoulli());

// u_{2i-1} = u_{2i} = mu + (N + 1 - 2i) dtilde / 2.
Rank1Instance generate_mono_centered(std::size_t n_pairs, double mu, double dtilde,
                                     Distribution dist = Distribution::bernoulli());

// Relabels items with a seeded permutation so sorted ground truth never
// reaches the algorithms in order.
Rank1Instance permute_labels(const Rank1Instance& instance, std::uint64_t seed);

}  // namespace matchbandit
