#include "matchbandit/adaptive_matching.hpp"

#include <algorithm>
#include <numeric>

#include "matchbandit/errors.hpp"

namespace matchbandit {

std::vector<std::vector<Item>> split_cluster(const std::vector<Item>& items, const std::vector<Interval>& q) {
  std::vector<Item> order = items;
  std::stable_sort(order.begin(), order.end(), [&](Item a, Item b) {
    return q[a].upper != q[b].upper ? q[a].upper > q[b].upper : a < b;
  });
  std::vector<std::vector<Item>> pieces(1);
  double floor_above = q[order[0]].lower;
  pieces.back().push_back(order[0]);
  for (std::size_t p = 1; p < order.size(); ++p) {
    if (floor_above > q[order[p]].upper) pieces.emplace_back();
    pieces.back().push_back(order[p]);
    floor_above = std::min(floor_above, q[order[p]].lower);
  }
  for (auto& piece : pieces) std::sort(piece.begin(), piece.end());
  return pieces;
}

namespace {

std::vector<std::vector<Item>> everything(std::size_t n) {
  std::vector<Item> all(n);
  std::iota(all.begin(), all.end(), Item{0});
  return {all};
}

}  // namespace

AdaptiveMatching::AdaptiveMatching(std::size_t n_items, std::uint64_t horizon,
                                   std::optional<std::vector<std::vector<Item>>> initial)
    : n_(n_items),
      policy_(BetaPolicy::horizon(std::max<double>(static_cast<double>(horizon), 3.0))),
      partition_(initial ? *initial : everything(n_items)),
      x_(n_items * n_items, 0.0),
      xt_(n_items * n_items, 0.0),
      c_(n_items * n_items, 0),
      ct_(n_items * n_items, 0),
      q_(n_items) {
  if (partition_.n_items() != n_) throw ShapeError("initial clusters do not cover the items");
  for (std::size_t k = 0; k < partition_.chains().size(); ++k)
    stats_.max_chain_period = std::max(stats_.max_chain_period, partition_.chain_period(k));
}

void AdaptiveMatching::flush(const Cluster& c) {
  for (Item i : c.items) {
    for (std::size_t j = 0; j < n_; ++j) {
      x_[i * n_ + j] += xt_[i * n_ + j];
      c_[i * n_ + j] += ct_[i * n_ + j];
      xt_[i * n_ + j] = 0.0;
      ct_[i * n_ + j] = 0;
    }
    recompute(i);
  }
}

// Total reward of i against its own cluster and the clusters ranked above it.
void AdaptiveMatching::recompute(Item i) {
  const std::size_t k = partition_.cluster_of(i);
  double total = 0.0;
  std::uint64_t count = 0;
  for (Item j = 0; j < n_; ++j)
    if (partition_.cluster_of(j) <= k) {
      total += x_[i * n_ + j];
      count += c_[i * n_ + j];
    }
  EliminationTracker tracker;
  tracker.ingest_total(total, count, policy_);
  q_[i] = interval_of(tracker);
}

bool AdaptiveMatching::try_split() {
  std::vector<std::vector<Item>> next;
  std::vector<bool> split(partition_.size(), false);
  for (std::size_t k = 0; k < partition_.size(); ++k) {
    auto pieces = split_cluster(partition_[k].items, q_);
    split[k] = pieces.size() > 1;
    for (auto& p : pieces) next.push_back(std::move(p));
  }
  if (next.size() == partition_.size()) return false;

  // Chains that contained a split lose their pending samples.
  const ClusterPartition old = partition_;
  std::vector<bool> touched(old.chains().size(), false);
  for (std::size_t k = 0; k < old.size(); ++k)
    if (split[k]) touched[old[k].chain] = true;
  for (std::size_t ch = 0; ch < touched.size(); ++ch) {
    if (!touched[ch]) continue;
    ++stats_.splits;
    std::uint64_t dropped = 0;
    for (std::size_t k = old.chains()[ch].first; k <= old.chains()[ch].second; ++k) {
      dropped = std::max(dropped, (t_ - old.chain_start(ch)) % old[k].period());
      for (Item i : old[k].items) {
        std::fill(xt_.begin() + i * n_, xt_.begin() + (i + 1) * n_, 0.0);
        std::fill(ct_.begin() + i * n_, ct_.begin() + (i + 1) * n_, 0);
      }
    }
    stats_.dropped_steps += dropped;
  }

  partition_ = ClusterPartition(std::move(next));
  for (std::size_t ch = 0; ch < partition_.chains().size(); ++ch) {
    const auto [first, last] = partition_.chains()[ch];
    // An untouched chain keeps its schedule phase.
    const std::size_t old_k = old.cluster_of(partition_[first].items.front());
    const std::size_t old_ch = old[old_k].chain;
    bool same = !touched[old_ch] && old.chains()[old_ch].second - old.chains()[old_ch].first == last - first;
    partition_.set_chain_start(ch, same ? old.chain_start(old_ch) : t_);
    stats_.max_chain_period = std::max(stats_.max_chain_period, partition_.chain_period(ch));
  }
  for (const Cluster& c : partition_.clusters())
    if (c.items.size() % 2 == 1) stats_.odd_cluster_seen = true;
  for (Item i = 0; i < n_; ++i) recompute(i);
  return true;
}

void AdaptiveMatching::step(Environment& env) {
  const Matching m = partition_.sample(t_);
  const Feedback fb = env.play(m);
  const double scale = env.observation_scale();
  for (const Observation& o : fb.observations) {
    const Item i = o.pair.a, j = o.pair.b;
    xt_[i * n_ + j] += scale * o.x;
    xt_[j * n_ + i] += scale * o.x;
    ++ct_[i * n_ + j];
    ++ct_[j * n_ + i];
  }
  ++t_;
  bool flushed = false;
  for (const Cluster& c : partition_.clusters())
    if ((t_ - partition_.chain_start(c.chain)) % c.period() == 0) {
      flush(c);
      flushed = true;
    }
  if (flushed)
    while (try_split()) {
    }
}

AmRun adaptive_matching_regret(Environment& env, AmVariant variant) {
  if (env.kind() != InstanceKind::monopartite) throw ShapeError("needs a monopartite instance");
  if (variant == AmVariant::simple && !has_equal_pairs(env.instance()))
    throw RefusalError("simple variant needs items in equal-valued pairs");
  AdaptiveMatching algo(env.n_items(), env.horizon());
  require_horizon(env);
  while (!env.exhausted()) algo.step(env);
  return {regret_run_from(env), algo.stats(), algo.partition().size()};
}

AmRun adaptive_matching_regret(const Rank1Instance& instance, std::uint64_t horizon, AmVariant variant,
                               std::uint64_t seed, CheckpointOptions checkpoints) {
  if (instance.kind() != InstanceKind::monopartite) throw ShapeError("needs a monopartite instance");
  Environment env(instance, ActionMode::matching, seed, horizon, checkpoints);
  return adaptive_matching_regret(env, variant);
}

}  // namespace matchbandit
