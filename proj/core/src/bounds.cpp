#include "matchbandit/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "json.hpp"

#include "matchbandit/errors.hpp"
#include "matchbandit/gaps.hpp"

namespace matchbandit {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

std::vector<double> sorted_desc(std::vector<double> v) {
  std::sort(v.begin(), v.end(), std::greater<>());
  return v;
}

double log_inv(double delta) {
  if (!(delta > 0.0 && delta < 1.0)) throw ParameterError("delta must lie in (0,1)");
  return std::log(1.0 / delta);
}

double log_horizon(double horizon) {
  if (!(horizon >= 1.0)) throw ParameterError("horizon must be at least 1");
  return std::log(horizon);
}

void require_mono(const Rank1Instance& instance) {
  if (instance.kind() != InstanceKind::monopartite) throw ShapeError("needs a monopartite instance");
}

}  // namespace

std::optional<double> BoundReport::component(const std::string& key) const {
  for (const auto& [k, v] : components)
    if (k == key) return v;
  return std::nullopt;
}

BoundReport pair_bounds(const Rank1Instance& instance, double horizon, double delta) {
  if (instance.kind() != InstanceKind::bipartite) throw ShapeError("needs a bipartite instance");
  const double u1 = *std::max_element(instance.u().begin(), instance.u().end());
  const double v1 = *std::max_element(instance.v().begin(), instance.v().end());
  const auto g = compute_gaps(instance);
  double a_regret = 0.0, a_explore = 0.0;
  for (double d : g.delta_row)
    if (d > 0.0) {
      a_regret += 1.0 / (v1 * d);
      a_explore += 1.0 / ((v1 * d) * (v1 * d));
    }
  for (double d : g.delta_col)
    if (d > 0.0) {
      a_regret += 1.0 / (u1 * d);
      a_explore += 1.0 / ((u1 * d) * (u1 * d));
    }
  const double lt = log_horizon(horizon), ld = log_inv(delta);
  BoundReport r{"pair", a_regret * lt, {}};
  r.add("A_regret", a_regret);
  r.add("regret", a_regret * lt);
  r.add("A_explore", a_explore);
  r.add("explore", a_explore * ld);
  r.add("lower_gaussian", a_explore * (ld - 1.0));
  r.add("lower_bernoulli", std::min(u1 * v1, 1.0 - u1 * v1) / 4.0 * a_explore * (ld - 1.0));
  return r;
}

BoundReport mono_bounds(const Rank1Instance& instance, double horizon, double delta) {
  require_mono(instance);
  const auto g = compute_gaps(instance);
  const double u1 = instance.u()[g.ranking.front()];
  double a3 = 0.0, a4 = 0.0, a5 = 0.0;
  for (Item i = 0; i < instance.n_items(); ++i) {
    if (const double d = g.delta_2i[i]; d > 0.0) {
      a3 += 1.0 / (u1 * d);
      a4 += 1.0 / ((u1 * d) * (u1 * d));
    }
    if (const double d = g.delta_pairsel[i]; d > 0.0) a5 += 1.0 / ((u1 * d) * (u1 * d));
  }
  const double lt = log_horizon(horizon), ld = log_inv(delta);
  BoundReport r{"mono", a3 * lt, {}};
  r.add("A_regret", a3);
  r.add("regret", a3 * lt);
  r.add("A_explore", a4);
  r.add("explore", a4 * ld);
  r.add("A_pair_select", a5);
  r.add("pair_select", a5 * ld);
  return r;
}

BoundReport matching_id_bounds(const Rank1Instance& instance, double delta) {
  require_mono(instance);
  const auto g = compute_gaps(instance);
  const auto u = sorted_desc(instance.u());
  const double ld = log_inv(delta);
  BoundReport r{"matching_id", g.gamma_min > 0.0 ? ld / (g.gamma_min * g.gamma_min) : kInf, {}};
  r.add("gamma_min", g.gamma_min);
  r.add("gamma_bound", r.value);

  double sum_sq = 0.0;
  for (double x : u) sum_sq += x * x;
  double lb1 = 0.0;
  for (double d : g.delta_pairsel)
    if (d > 0.0) lb1 += 1.0 / (sum_sq * d * d);
  r.add("lower_sum", lb1 * ld);

  if (!g.s_index || !g.h_index) return r;
  const std::size_t s = *g.s_index, h = *g.h_index;
  const double ds = g.adjacent_gap[s - 1];
  const double denom = g.mu_excl[h - 1] * g.adjacent_gap[h - 1];
  const double top2 = u[0] * u[0] + u[1] * u[1];
  r.add("s", static_cast<double>(s));
  r.add("h", static_cast<double>(h));
  r.add("lower_smallest_gap", ld / (top2 * ds * ds));

  auto refined = [&](const std::string& tag, double alpha, double scale_sq) {
    r.add("alpha_" + tag, alpha);
    if (alpha < 1.0) r.add("refined_" + tag, ld / ((1.0 - alpha) * (1.0 - alpha) * scale_sq * ds * ds));
  };
  const double ratio = (u[0] + u[1]) * ds / denom;
  refined("appendix", std::min(std::pow(ratio / 4.0, 2.0), 1.0), top2);
  refined("main", std::min(ratio / 2.0, 1.0), top2);
  if (u.size() >= 4) {
    const double q = (u[0] + u[1] + u[2] + u[3]) / 4.0;
    refined("proof", std::min(std::pow(q * ds / denom, 2.0), 1.0), q * q);
  }

  std::vector<double> gaps = g.adjacent_gap;
  std::sort(gaps.begin(), gaps.end());
  r.add("one_small_gap", gaps.size() >= 2 && gaps[1] > 0.0 && gaps[0] / gaps[1] < 0.25 ? 1.0 : 0.0);
  return r;
}

double pair_interaction_regret(const std::vector<double>& u, std::size_t i, std::size_t j) {
  auto at = [&](std::size_t k) { return u[k - 1]; };
  return (at(2 * i) - at(2 * j - 1)) * (at(2 * i - 1) - at(2 * j)) +
         (at(2 * i - 1) - at(2 * j - 1)) * (at(2 * i) - at(2 * j));
}

BoundReport exploration_first_ratio(const Rank1Instance& instance, std::optional<std::size_t> m) {
  require_mono(instance);
  const auto u = sorted_desc(instance.u());
  const std::size_t n = u.size(), pairs = n / 2;
  if (pairs < 2) throw ShapeError("needs at least four items");
  auto at = [&](std::size_t k) { return u[k - 1]; };
  if (!m) {
    m = 3;
    for (std::size_t k = 4; k + 1 <= n; ++k)
      if (at(k) - at(k + 1) > at(*m) - at(*m + 1)) m = k;
  }
  if (*m < 3 || *m + 1 > n) throw ParameterError("m must lie in [3, 2N-1]");
  const double gap = at(*m) - at(*m + 1);

  double inner = 0.0, top = 0.0;
  for (std::size_t i = 2; i <= pairs; ++i)
    for (std::size_t j = i + 1; j <= pairs; ++j) inner += pair_interaction_regret(u, i, j);
  for (std::size_t j = 2; j <= pairs; ++j) top += pair_interaction_regret(u, 1, j);
  const double total = std::accumulate(u.begin(), u.end(), 0.0);
  const double rest_d = total - at(1) - at(2) - at(*m) - at(*m + 1);
  const double rest_i = total - at(*m) - at(*m + 1);

  auto safe = [](double num, double den) { return num == 0.0 ? 0.0 : num / den; };
  const double ud = safe((2.0 * pairs - 3.0) * inner, gap * gap * rest_d * rest_d);
  const double ui = safe((2.0 * pairs - 2.0) * (top + inner), gap * gap * rest_i * rest_i);
  const double ratio = ud == 0.0 ? 0.0 : ud / ui;
  BoundReport r{"exploration_first", ratio, {}};
  r.add("m", static_cast<double>(*m));
  r.add("U_D", ud);
  r.add("U_I", ui);
  r.add("ratio", ratio);
  return r;
}

std::string to_json(const BoundReport& report) {
  nlohmann::ordered_json j;
  j["name"] = report.name;
  j["value"] = report.value;
  nlohmann::ordered_json c = nlohmann::ordered_json::object();
  for (const auto& [k, v] : report.components) c[k] = v;
  j["components"] = c;
  return j.dump(2);
}

}  // namespace matchbandit
