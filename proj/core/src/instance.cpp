#include "matchbandit/instance.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <string>

#include "matchbandit/errors.hpp"

namespace matchbandit {

namespace {

void check_entries(const std::vector<double>& values, const Distribution& dist, const char* name) {
  for (double x : values) {
    if (!std::isfinite(x)) throw ParameterError(std::string(name) + " contains a non-finite entry");
    if (dist.kind == Distribution::Kind::bernoulli && (x < 0.0 || x > 1.0))
      throw ParameterError(std::string(name) + " entries must lie in [0,1] for Bernoulli rewards");
  }
}

}  // namespace

Rank1Instance::Rank1Instance(InstanceKind kind, std::vector<double> u, std::vector<double> v,
                             Distribution dist)
    : kind_(kind), u_(std::move(u)), v_(std::move(v)), dist_(dist) {
  if (dist_.kind == Distribution::Kind::gaussian && !(dist_.sigma >= 0.0 && std::isfinite(dist_.sigma)))
    throw ParameterError("gaussian sigma must be finite and non-negative");
  if (dist_.kind == Distribution::Kind::bernoulli) dist_.sigma = 0.0;
  check_entries(u_, dist_, "u");
  check_entries(v_, dist_, "v");
}

Rank1Instance Rank1Instance::bipartite(std::vector<double> u, std::vector<double> v, Distribution dist) {
  if (u.empty() || v.empty()) throw ShapeError("bipartite instance needs at least one row and one column");
  return Rank1Instance(InstanceKind::bipartite, std::move(u), std::move(v), dist);
}

Rank1Instance Rank1Instance::monopartite(std::vector<double> u, Distribution dist) {
  if (u.empty() || u.size() % 2 != 0) throw ShapeError("monopartite instance needs an even, positive number of items");
  return Rank1Instance(InstanceKind::monopartite, std::move(u), {}, dist);
}

bool Rank1Instance::valid_pair(Pair p) const {
  if (kind_ == InstanceKind::bipartite) return p.a < u_.size() && p.b < v_.size();
  return p.a < u_.size() && p.b < u_.size() && p.a != p.b;
}

std::vector<Item> rank_order(const std::vector<double>& values) {
  std::vector<Item> order(values.size());
  std::iota(order.begin(), order.end(), Item{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](Item a, Item b) { return values[a] > values[b]; });
  return order;
}

Matching adjacent_pairing(const std::vector<Item>& ranked) {
  Matching m;
  for (std::size_t k = 0; k + 1 < ranked.size(); k += 2) m.pairs.push_back({ranked[k], ranked[k + 1]});
  return m;
}

Matching optimal_matching(const Rank1Instance& instance, MatchingMode mode) {
  const auto rows = rank_order(instance.u());
  if (instance.kind() == InstanceKind::bipartite) {
    const auto cols = rank_order(instance.v());
    if (mode == MatchingMode::minimal) return Matching{{{rows[0], cols[0]}}};
    if (rows.size() != cols.size())
      throw ShapeError("maximal matching on a bipartite instance needs as many rows as columns");
    Matching m;
    for (std::size_t k = 0; k < rows.size(); ++k) m.pairs.push_back({rows[k], cols[k]});
    return m;
  }
  if (mode == MatchingMode::minimal) return Matching{{{rows[0], rows[1]}}};
  return adjacent_pairing(rows);
}

double expected_reward(const Rank1Instance& instance, const Matching& matching) {
  double total = 0.0;
  for (const Pair& p : matching.pairs) {
    if (!instance.valid_pair(p)) throw std::out_of_range("pair outside the instance");
    total += instance.mean(p);
  }
  return total;
}

bool same_matching(const Matching& a, const Matching& b, InstanceKind kind) {
  if (a.pairs.size() != b.pairs.size()) return false;
  auto norm = [kind](std::vector<Pair> ps) {
    if (kind == InstanceKind::monopartite)
      for (Pair& p : ps)
        if (p.a > p.b) std::swap(p.a, p.b);
    std::sort(ps.begin(), ps.end(), [](Pair x, Pair y) { return x.a != y.a ? x.a < y.a : x.b < y.b; });
    return ps;
  };
  return norm(a.pairs) == norm(b.pairs);
}

bool is_perfect_matching(const Matching& m, std::size_t n_items) {
  if (m.pairs.size() * 2 != n_items) return false;
  std::vector<bool> seen(n_items, false);
  for (const Pair& p : m.pairs) {
    if (p.a >= n_items || p.b >= n_items || p.a == p.b || seen[p.a] || seen[p.b]) return false;
    seen[p.a] = seen[p.b] = true;
  }
  return true;
}

bool has_equal_pairs(const Rank1Instance& instance) {
  if (instance.kind() != InstanceKind::monopartite) return false;
  const auto order = rank_order(instance.u());
  for (std::size_t k = 0; k + 1 < order.size(); k += 2)
    if (instance.u()[order[k]] != instance.u()[order[k + 1]]) return false;
  return true;
}

}  // namespace matchbandit
