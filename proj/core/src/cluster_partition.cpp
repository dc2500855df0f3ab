#include "matchbandit/cluster_partition.hpp"

#include <limits>
#include <numeric>

#include "matchbandit/combinatorics.hpp"
#include "matchbandit/errors.hpp"

namespace matchbandit {

namespace {

constexpr Item kVirtual = std::numeric_limits<Item>::max();

std::vector<MatchingScheme> tournament(const std::vector<Item>& items, bool next, bool prev) {
  std::vector<Item> players = items;
  if (next || prev) players.push_back(kVirtual);
  std::vector<MatchingScheme> out;
  for (const Round& r : round_robin_schedule(players)) {
    if (r.bye) throw InvariantViolation("tournament with a bye cannot form a scheme");
    MatchingScheme s;
    for (const Pair& p : r.pairs) {
      if (p.a == kVirtual || p.b == kVirtual) {
        const Item real = p.a == kVirtual ? p.b : p.a;
        (next ? s.link_next : s.link_prev) = real;
      } else {
        s.internal.push_back(p);
      }
    }
    out.push_back(std::move(s));
  }
  return out;
}

}  // namespace

std::vector<MatchingScheme> build_scheme_list(const std::vector<Item>& cluster, ClusterRole role) {
  if (cluster.empty()) throw ShapeError("empty cluster");
  switch (role) {
    case ClusterRole::isolated:
      if (cluster.size() % 2 != 0) throw ShapeError("isolated clusters have even size");
      return tournament(cluster, false, false);
    case ClusterRole::chain_first:
    case ClusterRole::chain_last:
      if (cluster.size() % 2 != 1) throw ShapeError("chain ends have odd size");
      return tournament(cluster, role == ClusterRole::chain_first, role == ClusterRole::chain_last);
    case ClusterRole::chain_intermediate:
      break;
  }
  if (cluster.size() % 2 != 0) throw ShapeError("intermediate clusters have even size");
  std::vector<MatchingScheme> out;
  for (const MatchingScheme& base : tournament(cluster, false, false)) {
    for (std::size_t k = 0; k < base.internal.size(); ++k) {
      MatchingScheme s;
      for (std::size_t q = 0; q < base.internal.size(); ++q)
        if (q != k) s.internal.push_back(base.internal[q]);
      const Pair ab = base.internal[k];
      s.link_next = ab.a;
      s.link_prev = ab.b;
      out.push_back(s);
      s.link_next = ab.b;
      s.link_prev = ab.a;
      out.push_back(std::move(s));
    }
  }
  return out;
}

std::uint64_t sampling_rate(const std::vector<std::size_t>& chain_sizes, std::size_t position) {
  if (position == 0 || position > chain_sizes.size()) throw std::out_of_range("chain position");
  if (position % 2 == 1) return 1;
  const std::uint64_t before = chain_sizes[position - 2];
  const std::uint64_t after = position < chain_sizes.size() ? chain_sizes[position] : 1;
  return std::lcm(before, after);
}

ClusterPartition::ClusterPartition(std::vector<std::vector<Item>> clusters) {
  std::size_t n = 0;
  for (const auto& c : clusters) {
    if (c.empty()) throw ShapeError("empty cluster");
    n += c.size();
  }
  cluster_of_.assign(n, n);
  clusters_.resize(clusters.size());
  std::size_t above = 0;
  for (std::size_t k = 0; k < clusters.size(); ++k) {
    for (Item i : clusters[k]) {
      if (i >= n || cluster_of_[i] != n) throw ShapeError("clusters do not partition the items");
      cluster_of_[i] = k;
    }
    const bool link_prev = above % 2 == 1;
    above += clusters[k].size();
    const bool link_next = above % 2 == 1 && k + 1 < clusters.size();
    if (above % 2 == 1 && k + 1 == clusters.size()) throw ShapeError("odd number of items");
    Cluster& c = clusters_[k];
    c.items = std::move(clusters[k]);
    c.role = link_prev ? (link_next ? ClusterRole::chain_intermediate : ClusterRole::chain_last)
                       : (link_next ? ClusterRole::chain_first : ClusterRole::isolated);
    if (!link_prev) chains_.push_back({k, k});
    chains_.back().second = k;
    c.chain = chains_.size() - 1;
  }
  for (const auto& [first, last] : chains_) {
    std::vector<std::size_t> sizes;
    for (std::size_t k = first; k <= last; ++k) sizes.push_back(clusters_[k].items.size());
    for (std::size_t k = first; k <= last; ++k) {
      Cluster& c = clusters_[k];
      c.schemes = build_scheme_list(c.items, c.role);
      c.rate = first == last ? 1 : sampling_rate(sizes, k - first + 1);
    }
  }
  chain_start_.assign(chains_.size(), 0);
}

std::uint64_t ClusterPartition::chain_period(std::size_t chain) const {
  std::uint64_t p = 1;
  for (std::size_t k = chains_[chain].first; k <= chains_[chain].second; ++k) p = std::lcm(p, clusters_[k].period());
  return p;
}

const MatchingScheme& ClusterPartition::scheme_at(std::size_t k, std::uint64_t t) const {
  const Cluster& c = clusters_[k];
  const std::uint64_t start = chain_start_[c.chain];
  if (t < start) throw InvariantViolation("step precedes the chain start");
  return c.schemes[((t - start) / c.rate) % c.schemes.size()];
}

Matching ClusterPartition::sample(std::uint64_t t) const {
  Matching m;
  m.pairs.reserve(n_items() / 2);
  std::optional<Item> pending_next;
  for (std::size_t k = 0; k < clusters_.size(); ++k) {
    const MatchingScheme& s = scheme_at(k, t);
    m.pairs.insert(m.pairs.end(), s.internal.begin(), s.internal.end());
    if (s.link_prev.has_value() != pending_next.has_value()) throw InvariantViolation("dangling chain link");
    if (s.link_prev) m.pairs.push_back({*pending_next, *s.link_prev});
    pending_next = s.link_next;
  }
  if (pending_next) throw InvariantViolation("dangling chain link");
  if (!is_perfect_matching(m, n_items())) throw InvariantViolation("scheduled action is not a perfect matching");
  return m;
}

}  // namespace matchbandit
