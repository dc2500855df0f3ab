#include "matchbandit/confbound.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "matchbandit/errors.hpp"

namespace matchbandit {

BetaPolicy::BetaPolicy(double base, bool per_level) : base_(base), per_level_(per_level) {
  if (!(base_ > 1.0) || std::isnan(base_)) throw PolicyError("beta policy must exceed 1");
}

BetaPolicy BetaPolicy::horizon(double h) { return BetaPolicy(h, false); }

BetaPolicy BetaPolicy::pair_explore(std::size_t n_rows, std::size_t n_cols, double inv_delta) {
  const double n = static_cast<double>(n_rows + 1) * static_cast<double>(n_cols + 1);
  return BetaPolicy(std::numbers::pi * std::sqrt(n * inv_delta / 3.0), true);
}

BetaPolicy BetaPolicy::mono_explore(std::size_t n_items, double inv_delta) {
  // 4N(2N-1) with n_items = 2N.
  const double n = 2.0 * static_cast<double>(n_items) * static_cast<double>(n_items - 1);
  return BetaPolicy(std::numbers::pi * std::sqrt(n * inv_delta / 3.0), true);
}

BetaPolicy BetaPolicy::matching_id(std::size_t n_items, double delta) {
  if (!(delta > 0.0)) throw PolicyError("delta must be positive");
  return BetaPolicy(std::numbers::pi * std::sqrt(static_cast<double>(n_items) / (3.0 * delta)), true);
}

double BetaPolicy::beta(std::uint32_t level) const {
  const double raw = per_level_ ? base_ * std::max<std::uint32_t>(level, 1) : base_;
  return std::max(raw, std::numbers::e);
}

double BetaPolicy::log_beta(std::uint32_t level) const { return std::log(beta(level)); }

std::uint64_t level_threshold(std::uint32_t level, const BetaPolicy& policy) {
  const double k = std::ceil(std::pow(4.0, static_cast<double>(level) + 1.0) * policy.log_beta(level));
  if (!(k < 1.8e19)) return kSaturated;
  return static_cast<std::uint64_t>(k);
}

bool EliminationTracker::advance(const BetaPolicy& policy) {
  auto l = static_cast<std::uint32_t>(level_ + 1);
  std::uint64_t k = level_threshold(l, policy);
  if (count_ < k) {
    next_threshold_ = k;
    return false;
  }
  for (;;) {
    const std::uint64_t next = level_threshold(l + 1, policy);
    if (next > count_) {
      const double radius = std::sqrt(policy.log_beta(l) / static_cast<double>(k));
      const double mean = sum_ / static_cast<double>(count_);
      level_ = static_cast<int>(l);
      lower_ = mean - radius;
      upper_ = mean + radius;
      next_threshold_ = next;
      return true;
    }
    ++l;
    k = next;
  }
}

bool EliminationTracker::ingest(std::span<const double> xs, const BetaPolicy& policy) {
  double total = 0.0;
  for (double x : xs) total += x;
  return ingest_total(total, xs.size(), policy);
}

bool EliminationTracker::ingest_total(double total, std::uint64_t n, const BetaPolicy& policy) {
  count_ += n;
  sum_ += total;
  fresh_ = n > 0 && count_ >= next_threshold_ && advance(policy);
  return fresh_;
}

void EliminationTracker::reset() { *this = EliminationTracker(); }

}  // namespace matchbandit
