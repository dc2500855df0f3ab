#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

#include "matchbandit/instance.hpp"

namespace matchbandit {

enum class ClusterRole { isolated, chain_first, chain_intermediate, chain_last };

struct MatchingScheme {
  std::vector<Pair> internal;
  std::optional<Item> link_next;
  std::optional<Item> link_prev;

  friend bool operator==(const MatchingScheme&, const MatchingScheme&) = default;
};

// Tournament for isolated clusters; one virtual partner for chain ends;
// every tournament pair expanded both ways for intermediates. Intermediate
// clusters must have even size.
std::vector<MatchingScheme> build_scheme_list(const std::vector<Item>& cluster, ClusterRole role);

// Rate of the cluster at 1-based `position` in a chain with the given sizes.
std::uint64_t sampling_rate(const std::vector<std::size_t>& chain_sizes, std::size_t position);

struct Cluster {
  std::vector<Item> items;
  ClusterRole role = ClusterRole::isolated;
  std::size_t chain = 0;
  std::vector<MatchingScheme> schemes;
  std::uint64_t rate = 1;

  // Steps after which every item of the cluster has met the same partners.
  std::uint64_t period() const { return rate * schemes.size(); }
};

// Ordered clusters, best first. Consecutive clusters are linked when the
// number of items above the boundary is odd; linked runs form chains.
class ClusterPartition {
 public:
  explicit ClusterPartition(std::vector<std::vector<Item>> clusters);

  std::size_t size() const { return clusters_.size(); }
  std::size_t n_items() const { return cluster_of_.size(); }
  const Cluster& operator[](std::size_t k) const { return clusters_[k]; }
  const std::vector<Cluster>& clusters() const { return clusters_; }
  std::size_t cluster_of(Item i) const { return cluster_of_[i]; }

  // Chains as [first, last] cluster index ranges.
  const std::vector<std::pair<std::size_t, std::size_t>>& chains() const { return chains_; }
  std::uint64_t chain_start(std::size_t chain) const { return chain_start_[chain]; }
  void set_chain_start(std::size_t chain, std::uint64_t t) { chain_start_[chain] = t; }
  // Least common multiple of the cluster periods along the chain.
  std::uint64_t chain_period(std::size_t chain) const;

  const MatchingScheme& scheme_at(std::size_t k, std::uint64_t t) const;
  // Perfect matching played at step t (0-based).
  Matching sample(std::uint64_t t) const;

 private:
  std::vector<Cluster> clusters_;
  std::vector<std::size_t> cluster_of_;
  std::vector<std::pair<std::size_t, std::size_t>> chains_;
  std::vector<std::uint64_t> chain_start_;
};

}  // namespace matchbandit
