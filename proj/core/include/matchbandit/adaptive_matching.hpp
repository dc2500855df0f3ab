#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

#include "matchbandit/cluster_partition.hpp"
#include "matchbandit/confbound.hpp"
#include "matchbandit/env.hpp"
#include "matchbandit/instance.hpp"
#include "matchbandit/runs.hpp"

namespace matchbandit {

enum class AmVariant { simple, full };

// Split points of one cluster: items sorted by upper bound (descending, ties
// by label) and cut wherever every item above has a lower bound exceeding
// every upper bound below. Returns the pieces best first.
std::vector<std::vector<Item>> split_cluster(const std::vector<Item>& items, const std::vector<Interval>& q);

struct AmStats {
  std::uint64_t splits = 0;
  std::uint64_t dropped_steps = 0;
  std::uint64_t max_chain_period = 0;
  bool odd_cluster_seen = false;
};

class AdaptiveMatching {
 public:
  AdaptiveMatching(std::size_t n_items, std::uint64_t horizon,
                   std::optional<std::vector<std::vector<Item>>> initial = std::nullopt);

  void step(Environment& env);

  const ClusterPartition& partition() const { return partition_; }
  Interval bound(Item i) const { return q_[i]; }
  const AmStats& stats() const { return stats_; }
  std::uint64_t steps() const { return t_; }
  // Persistent and pending counts for the ordered pair (i, j).
  std::uint64_t count(Item i, Item j) const { return c_[i * n_ + j]; }
  std::uint64_t pending_count(Item i, Item j) const { return ct_[i * n_ + j]; }

 private:
  void flush(const Cluster& c);
  void recompute(Item i);
  bool try_split();

  std::size_t n_;
  BetaPolicy policy_;
  ClusterPartition partition_;
  std::vector<double> x_, xt_;
  std::vector<std::uint64_t> c_, ct_;
  std::vector<Interval> q_;
  std::uint64_t t_ = 0;
  AmStats stats_;
};

struct AmRun {
  RegretRun run;
  AmStats stats;
  std::size_t final_clusters = 0;
};

AmRun adaptive_matching_regret(Environment& env, AmVariant variant);
AmRun adaptive_matching_regret(const Rank1Instance& instance, std::uint64_t horizon, AmVariant variant,
                               std::uint64_t seed, CheckpointOptions checkpoints = {});

}  // namespace matchbandit
