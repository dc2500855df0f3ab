#include "matchbandit/baselines.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "matchbandit/combinatorics.hpp"
#include "matchbandit/errors.hpp"
#include "matchbandit/pair_elim.hpp"

namespace matchbandit {

RegretRun rank1elim_regret(const Rank1Instance& instance, std::uint64_t horizon, std::uint64_t seed,
                           CheckpointOptions checkpoints) {
  if (instance.kind() != InstanceKind::bipartite) throw ShapeError("needs a bipartite instance");
  Environment env(instance, ActionMode::pair, seed, horizon, checkpoints);
  return pair_elim_regret(env, Timescale::single, seed);
}

double escb_default_schedule(std::uint64_t t, std::size_t n_pairs) {
  const double tt = static_cast<double>(std::max<std::uint64_t>(t, 1));
  return std::log(tt) + 4.0 * static_cast<double>(n_pairs) * std::log(std::log(std::max(tt, 3.0)));
}

Escb::Escb(std::size_t n_items, EscbSchedule schedule)
    : n_(n_items), schedule_(std::move(schedule)), counts_(n_items * n_items, 0), sums_(n_items * n_items, 0.0) {
  if (n_items > kMaxEnumeratedItems) throw RefusalError("too many items to enumerate matchings");
  matchings_ = enumerate_perfect_matchings(n_items);
}

double Escb::index(std::size_t k, std::uint64_t t) const {
  const Matching& m = matchings_[k];
  double mean = 0.0, inv = 0.0;
  for (const Pair& p : m.pairs) {
    const std::uint64_t c = counts_[p.a * n_ + p.b];
    if (c == 0) return std::numeric_limits<double>::infinity();
    mean += sums_[p.a * n_ + p.b] / static_cast<double>(c);
    inv += 1.0 / static_cast<double>(c);
  }
  const double f = std::max(0.0, schedule_(t, m.pairs.size()));
  return mean + std::sqrt(0.5 * f * inv);
}

std::size_t Escb::select(std::uint64_t t) const {
  std::size_t best = 0;
  double best_index = -std::numeric_limits<double>::infinity();
  for (std::size_t k = 0; k < matchings_.size(); ++k) {
    const double v = index(k, t);
    if (v > best_index) {
      best_index = v;
      best = k;
    }
  }
  return best;
}

void Escb::observe(const Feedback& fb) {
  for (const Observation& o : fb.observations) {
    const Item a = std::min(o.pair.a, o.pair.b), b = std::max(o.pair.a, o.pair.b);
    ++counts_[a * n_ + b];
    sums_[a * n_ + b] += o.x;
  }
}

RegretRun escb_regret(Environment& env, EscbSchedule schedule) {
  if (env.kind() != InstanceKind::monopartite) throw ShapeError("needs a monopartite instance");
  Escb algo(env.n_items(), std::move(schedule));
  require_horizon(env);
  while (!env.exhausted()) algo.observe(env.play(algo.matchings()[algo.select(env.steps() + 1)]));
  return regret_run_from(env);
}

RegretRun escb_regret(const Rank1Instance& instance, std::uint64_t horizon, std::uint64_t seed,
                      CheckpointOptions checkpoints) {
  if (instance.kind() != InstanceKind::monopartite) throw ShapeError("needs a monopartite instance");
  if (instance.n_items() > kMaxEnumeratedItems) throw RefusalError("too many items to enumerate matchings");
  Environment env(instance, ActionMode::matching, seed, horizon, checkpoints);
  return escb_regret(env);
}

RegretRun uniform_regret(Environment& env, std::uint64_t seed) {
  SeededRng rng(seed, streams::policy);
  const auto& inst = env.instance();
  const bool pairs = env.mode() == ActionMode::pair;
  std::vector<Item> items(env.n_items());
  std::iota(items.begin(), items.end(), Item{0});
  require_horizon(env);
  while (!env.exhausted()) {
    if (inst.kind() == InstanceKind::bipartite) {
      env.play(Pair{static_cast<Item>(rng.index(env.n_rows())), static_cast<Item>(rng.index(env.n_cols()))});
    } else if (pairs) {
      const auto a = static_cast<Item>(rng.index(env.n_items()));
      auto b = static_cast<Item>(rng.index(env.n_items() - 1));
      if (b >= a) ++b;
      env.play(Pair{a, b});
    } else {
      std::shuffle(items.begin(), items.end(), rng.engine());
      Matching m;
      for (std::size_t k = 0; k + 1 < items.size(); k += 2) m.pairs.push_back({items[k], items[k + 1]});
      env.play(m);
    }
  }
  return regret_run_from(env);
}

RegretRun uniform_regret(const Rank1Instance& instance, std::uint64_t horizon, ActionMode mode, std::uint64_t seed,
                         CheckpointOptions checkpoints) {
  Environment env(instance, mode, seed, horizon, checkpoints);
  return uniform_regret(env, seed);
}

}  // namespace matchbandit
