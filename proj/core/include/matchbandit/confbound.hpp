#pragma once

#include <cstdint>
#include <limits>
#include <span>

namespace matchbandit {

// Confidence schedule beta_l. Exploration modes scale with max(l, 1); every
// mode is floored at e so that ln(beta_l) >= 1.
class BetaPolicy {
 public:
  static BetaPolicy horizon(double h);
  static BetaPolicy pair_explore(std::size_t n_rows, std::size_t n_cols, double inv_delta);
  static BetaPolicy mono_explore(std::size_t n_items, double inv_delta);
  static BetaPolicy matching_id(std::size_t n_items, double delta);

  double beta(std::uint32_t level) const;
  double log_beta(std::uint32_t level) const;
  bool grows_with_level() const { return per_level_; }

  friend bool operator==(const BetaPolicy&, const BetaPolicy&) = default;

 private:
  BetaPolicy(double base, bool per_level);

  double base_ = 0.0;
  bool per_level_ = false;
};

inline constexpr std::uint64_t kSaturated = std::numeric_limits<std::uint64_t>::max();

// k_l = ceil(4^(l+1) ln beta_l), saturating.
std::uint64_t level_threshold(std::uint32_t level, const BetaPolicy& policy);

// Running mean whose interval is refreshed only when the count reaches k_l.
class EliminationTracker {
 public:
  bool ingest(double x, const BetaPolicy& policy) {
    ++count_;
    sum_ += x;
    fresh_ = count_ >= next_threshold_ && advance(policy);
    return fresh_;
  }
  bool ingest(std::span<const double> xs, const BetaPolicy& policy);
  // Adds n observations with the given total.
  bool ingest_total(double total, std::uint64_t n, const BetaPolicy& policy);

  void reset();

  std::uint64_t count() const { return count_; }
  double sum() const { return sum_; }
  // -1 before the first refresh.
  int level() const { return level_; }
  double lower() const { return lower_; }
  double upper() const { return upper_; }
  double midpoint() const { return level_ < 0 ? 0.0 : 0.5 * (lower_ + upper_); }
  bool fresh() const { return fresh_; }
  bool refreshed() const { return level_ >= 0; }

 private:
  bool advance(const BetaPolicy& policy);

  std::uint64_t count_ = 0;
  double sum_ = 0.0;
  int level_ = -1;
  std::uint64_t next_threshold_ = 0;
  double lower_ = -std::numeric_limits<double>::infinity();
  double upper_ = std::numeric_limits<double>::infinity();
  bool fresh_ = false;
};

struct Interval {
  double lower = -std::numeric_limits<double>::infinity();
  double upper = std::numeric_limits<double>::infinity();

  friend bool operator==(const Interval&, const Interval&) = default;
};

inline Interval interval_of(const EliminationTracker& t) { return {t.lower(), t.upper()}; }

enum class Separation { a_above_b, b_above_a, undecided };

inline Separation separated(const Interval& a, const Interval& b) {
  if (b.upper < a.lower) return Separation::a_above_b;
  if (a.upper < b.lower) return Separation::b_above_a;
  return Separation::undecided;
}

inline Separation separated(const EliminationTracker& a, const EliminationTracker& b) {
  return separated(interval_of(a), interval_of(b));
}

}  // namespace matchbandit
