#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

namespace matchbandit {

// Items are 0-based labels. For bipartite instances a pair is (row, column);
// for monopartite instances it is an unordered pair of distinct items.
using Item = std::uint32_t;

struct Pair {
  Item a = 0;
  Item b = 0;

  friend bool operator==(const Pair&, const Pair&) = default;
};

enum class InstanceKind { bipartite, monopartite };

struct Distribution {
  enum class Kind { bernoulli, gaussian };
  Kind kind = Kind::bernoulli;
  double sigma = 1.0;

  static Distribution bernoulli() { return {Kind::bernoulli, 0.0}; }
  static Distribution gaussian(double sigma = 1.0) { return {Kind::gaussian, sigma}; }

  friend bool operator==(const Distribution&, const Distribution&) = default;
};

class Rank1Instance {
 public:
  static Rank1Instance bipartite(std::vector<double> u, std::vector<double> v,
                                 Distribution dist = Distribution::bernoulli());
  static Rank1Instance monopartite(std::vector<double> u,
                                   Distribution dist = Distribution::bernoulli());

  InstanceKind kind() const { return kind_; }
  const std::vector<double>& u() const { return u_; }
  const std::vector<double>& v() const { return v_; }
  const Distribution& dist() const { return dist_; }

  std::size_t n_rows() const { return u_.size(); }
  std::size_t n_cols() const { return kind_ == InstanceKind::bipartite ? v_.size() : u_.size(); }
  std::size_t n_items() const { return u_.size(); }

  bool valid_pair(Pair p) const;
  // Expected reward of a pair; no range check.
  double mean(Pair p) const {
    return kind_ == InstanceKind::bipartite ? u_[p.a] * v_[p.b] : u_[p.a] * u_[p.b];
  }

  friend bool operator==(const Rank1Instance&, const Rank1Instance&) = default;

 private:
  Rank1Instance(InstanceKind kind, std::vector<double> u, std::vector<double> v, Distribution dist);

  InstanceKind kind_ = InstanceKind::monopartite;
  std::vector<double> u_;
  std::vector<double> v_;
  Distribution dist_;
};

struct Matching {
  std::vector<Pair> pairs;

  friend bool operator==(const Matching&, const Matching&) = default;
};

enum class MatchingMode { minimal, maximal };

// Items ordered by decreasing parameter, ties by lowest label.
std::vector<Item> rank_order(const std::vector<double>& values);

Matching optimal_matching(const Rank1Instance& instance, MatchingMode mode);

// Throws std::out_of_range for pairs outside the instance.
double expected_reward(const Rank1Instance& instance, const Matching& matching);

// Order-insensitive comparison; monopartite pairs are compared unordered.
bool same_matching(const Matching& a, const Matching& b, InstanceKind kind);

// Sorted-adjacent pairing of a ranked list: (r0,r1), (r2,r3), ...
Matching adjacent_pairing(const std::vector<Item>& ranked);

bool is_perfect_matching(const Matching& m, std::size_t n_items);

// Assumption that items come in equal-valued pairs after sorting.
bool has_equal_pairs(const Rank1Instance& instance);

}  // namespace matchbandit
