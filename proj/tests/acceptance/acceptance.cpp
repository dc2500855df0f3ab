#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <map>
#include <numeric>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "bound_oracle.hpp"
#include "matchbandit/adaptive_matching.hpp"
#include "matchbandit/baselines.hpp"
#include "matchbandit/bounds.hpp"
#include "matchbandit/cluster_partition.hpp"
#include "matchbandit/confbound.hpp"
#include "matchbandit/gaps.hpp"
#include "matchbandit/generators.hpp"
#include "matchbandit/matching_id.hpp"
#include "matchbandit/pair_elim.hpp"
#include "matchbandit/pair_elim_mono.hpp"
#include "oracles.hpp"

namespace mb = matchbandit;
using mb::Item;
using mb::Matching;
using mb::Rank1Instance;

namespace {

struct Verdict {
  bool pass = true;
  std::string detail;
};

std::string fmt(const char* f, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, f, args...);
  return buf;
}

double elapsed(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

std::pair<Item, Item> top_two(const std::vector<double>& u) {
  std::vector<Item> idx(u.size());
  std::iota(idx.begin(), idx.end(), 0);
  std::sort(idx.begin(), idx.end(), [&](Item a, Item b) { return u[a] > u[b]; });
  return {std::min(idx[0], idx[1]), std::max(idx[0], idx[1])};
}

bool is_pair(const std::optional<Matching>& m, Item a, Item b) {
  if (!m || m->pairs.size() != 1) return false;
  const auto p = m->pairs.front();
  return std::min(p.a, p.b) == a && std::max(p.a, p.b) == b;
}

bool best_row_col(const std::optional<Matching>& m, const Rank1Instance& inst) {
  if (!m || m->pairs.size() != 1) return false;
  const auto& u = inst.u();
  const auto& v = inst.v();
  const auto p = m->pairs.front();
  return u[p.a] == *std::max_element(u.begin(), u.end()) && v[p.b] == *std::max_element(v.begin(), v.end());
}

bool optimal(const std::optional<Matching>& m, const Rank1Instance& inst) {
  if (!m) return false;
  const auto bf = oracle::maximal_matchings(inst);
  return bf.argmax.size() == 1 && oracle::same_pairs(*m, bf.argmax.front());
}

// Zero-noise runs on randomized instances must return the exact optimum.
Verdict zero_noise_suite() {
  const auto t0 = std::chrono::steady_clock::now();
  int wrong = 0, nondeterministic = 0;
  for (std::uint64_t s = 0; s < 50; ++s) {
    std::mt19937_64 rng(1000 + s);
    const auto bip = oracle::noiseless(oracle::random_bipartite(rng, 2 + s % 5, 2 + (s / 5) % 5));
    const auto mono = oracle::noiseless(oracle::random_mono(rng, 4 + 2 * (s % 5), 0.45, 0.05));
    const auto [a, b] = top_two(mono.u());

    const auto pe = mb::pair_elim_explore(bip, 0.1, s);
    const auto pm = mb::mono_explore(mono, 0.1, s);
    const auto ps = mb::pair_select(mono, 0.1, s);
    const auto mi = mb::matching_id(mono, 0.1, s);
    wrong += !best_row_col(pe.answer, bip);
    wrong += !is_pair(pm.answer, a, b);
    wrong += !optimal(ps.run.answer, mono);
    wrong += !optimal(mi.run.answer, mono);

    if (s % 10 == 0) {
      nondeterministic += mb::pair_elim_explore(bip, 0.1, s).tau != pe.tau;
      nondeterministic += mb::mono_explore(mono, 0.1, s).tau != pm.tau;
      nondeterministic += mb::pair_select(mono, 0.1, s).run.tau != ps.run.tau;
      nondeterministic += mb::matching_id(mono, 0.1, s).run.tau != mi.run.tau;
    }
  }
  const double secs = elapsed(t0);
  return {wrong == 0 && nondeterministic == 0 && secs < 10.0,
          fmt("200 runs, %d wrong, %d nondeterministic, %.2fs", wrong, nondeterministic, secs)};
}

double median_of(std::size_t runs, const std::function<double(std::uint64_t)>& f) {
  std::vector<double> v;
  for (std::uint64_t s = 0; s < runs; ++s) v.push_back(f(s));
  return oracle::median(v);
}

// Windowed elimination against the single-timescale baseline on sparse-top instances.
Verdict figure1() {
  constexpr std::uint64_t T = 2'000'000;
  const std::vector<double> deltas{0.5, 0.55, 0.6, 0.65, 0.7, 0.75, 0.8, 0.85};
  std::vector<double> ratio;
  double pe_at = 0, r1_at = 0;
  for (double d : deltas) {
    auto inst = [&](std::uint64_t s) { return mb::permute_labels(mb::generate_bipartite(8, 0.9, d, s), s); };
    const double pe = median_of(20, [&](std::uint64_t s) { return mb::pair_elim_regret(inst(s), T, s).cum_regret; });
    const double r1 = median_of(20, [&](std::uint64_t s) { return mb::rank1elim_regret(inst(s), T, s).cum_regret; });
    ratio.push_back(pe / r1);
    if (d == 0.75) pe_at = pe, r1_at = r1;
  }
  // Decreasing trend: negative least-squares slope and a lower last ratio.
  const double xm = std::accumulate(deltas.begin(), deltas.end(), 0.0) / deltas.size();
  const double ym = std::accumulate(ratio.begin(), ratio.end(), 0.0) / ratio.size();
  double sxy = 0.0, sxx = 0.0;
  for (std::size_t k = 0; k < ratio.size(); ++k) {
    sxy += (deltas[k] - xm) * (ratio[k] - ym);
    sxx += (deltas[k] - xm) * (deltas[k] - xm);
  }
  const double slope = sxy / sxx;
  bool strict = true;
  for (std::size_t k = 1; k < ratio.size(); ++k) strict &= ratio[k] < ratio[k - 1];
  std::string r;
  for (double x : ratio) r += fmt("%.3f ", x);
  return {pe_at < r1_at && slope < 0.0 && ratio.back() < ratio.front(),
          fmt("median at delta=0.75: pair_elim %.1f vs rank1elim %.1f; ratios over delta: %s(slope %.3f, %s)", pe_at,
              r1_at, r.c_str(), slope, strict ? "strictly decreasing" : "not strictly decreasing")};
}

// Normalized adaptive-matching regret stays flat in N.
Verdict figure2() {
  constexpr std::uint64_t T = 200'000;
  std::vector<double> norm;
  std::string detail;
  for (std::size_t N : {4, 6, 8, 12, 16}) {
    const auto base = mb::generate_mono_equalpairs(N, 0.1, mb::Distribution::gaussian(0.5));
    const double dmin = mb::compute_gaps(base).delta_min;
    const double med = median_of(20, [&](std::uint64_t s) {
      return mb::adaptive_matching_regret(mb::permute_labels(base, s), T, mb::AmVariant::simple, s).run.cum_regret;
    });
    norm.push_back(med * dmin / (static_cast<double>(N) * std::log(static_cast<double>(N))));
    detail += fmt("N=%zu:%.4g ", N, norm.back());
  }
  const auto [lo, hi] = std::minmax_element(norm.begin(), norm.end());
  return {*hi <= 2.0 * *lo, fmt("normalized regret %s(max/min %.3f)", detail.c_str(), *hi / *lo)};
}

// Adaptive matching against ESCB on centered instances.
Verdict figure3() {
  constexpr std::uint64_t T = 200'000;
  std::vector<double> ratio;
  double sam_at = 0, escb_at = 0;
  for (double mu : {0.3, 0.4, 0.5, 0.6, 0.7}) {
    const auto base = mb::generate_mono_centered(4, mu, 0.1);
    const double sam = median_of(20, [&](std::uint64_t s) {
      return mb::adaptive_matching_regret(mb::permute_labels(base, s), T, mb::AmVariant::simple, s).run.cum_regret;
    });
    const double escb =
        median_of(20, [&](std::uint64_t s) { return mb::escb_regret(mb::permute_labels(base, s), T, s).cum_regret; });
    ratio.push_back(sam / escb);
    if (mu == 0.5) sam_at = sam, escb_at = escb;
  }
  bool nonincreasing = true;
  for (std::size_t k = 1; k < ratio.size(); ++k) nonincreasing &= ratio[k] <= ratio[k - 1];
  std::string r;
  for (double x : ratio) r += fmt("%.3f ", x);
  return {sam_at < escb_at && nonincreasing,
          fmt("median at mu=0.5: sam %.1f vs escb %.1f; ratios over mu: %s", sam_at, escb_at, r.c_str())};
}

// Empirical error rates of the delta-PAC algorithms.
Verdict pac_suite() {
  constexpr int runs = 200;
  constexpr double delta = 0.1;
  const double limit = delta + 3.0 * std::sqrt(delta * (1 - delta) / runs);
  const auto bip = Rank1Instance::bipartite({0.9, 0.6, 0.4}, {0.8, 0.5, 0.3});
  const auto mono = Rank1Instance::monopartite({0.9, 0.7, 0.5, 0.3});
  const auto [a, b] = top_two(mono.u());
  int fail[4] = {0, 0, 0, 0};
  for (std::uint64_t s = 0; s < runs; ++s) {
    const auto pe = mb::pair_elim_explore(bip, delta, s);
    fail[0] += pe.budget_exhausted || !best_row_col(pe.answer, bip);
    const auto pm = mb::mono_explore(mono, delta, s);
    fail[1] += pm.budget_exhausted || !is_pair(pm.answer, a, b);
    const auto ps = mb::pair_select(mono, delta, s);
    fail[2] += ps.run.budget_exhausted || !optimal(ps.run.answer, mono);
    const auto mi = mb::matching_id(mono, delta, s);
    fail[3] += mi.run.budget_exhausted || !optimal(mi.run.answer, mono);
  }
  bool ok = true;
  for (int f : fail) ok &= f <= limit * runs;
  return {ok, fmt("failures/200: pair_elim %d, pair_elim_mono %d, pair_select %d, matching_id %d (limit %.3f)", fail[0],
                  fail[1], fail[2], fail[3], limit)};
}

// Sample counts grow like log(1/delta).
Verdict log_delta_scaling() {
  const auto inst = Rank1Instance::monopartite({0.9, 0.7, 0.5, 0.3});
  auto mono = [&](double d) {
    return median_of(20, [&](std::uint64_t s) { return static_cast<double>(mb::mono_explore(inst, d, s).tau); });
  };
  auto mid = [&](double d) {
    return median_of(20, [&](std::uint64_t s) { return static_cast<double>(mb::matching_id(inst, d, s).run.tau); });
  };
  const double rm = mono(1e-4) / mono(1e-2);
  const double ri = mid(1e-4) / mid(1e-2);
  auto in_band = [](double r) { return r >= 1.5 && r <= 3.0; };
  return {in_band(rm) && in_band(ri),
          fmt("median tau ratio delta=1e-4 vs 1e-2: pair_elim_mono %.3f, matching_id %.3f (band [1.5, 3])", rm, ri)};
}

// Exact pair proportions of Sample-Matching over one full period.
Verdict proportion_audit() {
  const mb::ClusterPartition part({{0, 1, 2}, {3, 4, 5, 6}, {7, 8, 9}, {10, 11, 12, 13, 14, 15}});
  bool ok = part[0].role == mb::ClusterRole::chain_first && part[1].role == mb::ClusterRole::chain_intermediate &&
            part[2].role == mb::ClusterRole::chain_last && part[3].role == mb::ClusterRole::isolated;
  const std::uint64_t period = std::lcm(part.chain_period(0), part.chain_period(1));
  constexpr std::size_t n = 16;
  std::vector<std::uint64_t> count(n * n, 0);
  for (std::uint64_t t = 0; t < period; ++t)
    for (const auto& p : part.sample(t).pairs) {
      ++count[p.a * n + p.b];
      ++count[p.b * n + p.a];
    }
  // Expected proportion as num/den per pair of clusters.
  auto expected = [&](std::size_t ki, std::size_t kj) -> std::pair<std::uint64_t, std::uint64_t> {
    const std::uint64_t si = part[ki].items.size(), sj = part[kj].items.size();
    if (ki == kj) {
      switch (part[ki].role) {
        case mb::ClusterRole::isolated: return {1, si - 1};
        case mb::ClusterRole::chain_intermediate: return {si - 2, si * (si - 1)};
        default: return {1, si};
      }
    }
    if (ki == 3 || kj == 3) return {0, 1};
    if (ki + 1 == kj || kj + 1 == ki) return {1, si * sj};
    return {0, 1};
  };
  int mismatches = 0;
  for (Item i = 0; i < n; ++i)
    for (Item j = 0; j < n; ++j) {
      if (i == j) continue;
      const auto [num, den] = expected(part.cluster_of(i), part.cluster_of(j));
      mismatches += count[i * n + j] * den != num * period;
    }
  ok &= mismatches == 0;
  return {ok, fmt("period %llu, %d mismatching pairs", static_cast<unsigned long long>(period), mismatches)};
}

// Refresh intervals cover the mean at the rate the confidence level promises.
Verdict coverage() {
  constexpr int trackers = 10'000;
  std::string detail;
  bool ok = true;
  for (double beta : {3.0, 10.0}) {
    const auto policy = mb::BetaPolicy::horizon(beta);
    std::vector<int> covered(3, 0);
    mb::SeededRng rng(42, 0);
    for (int k = 0; k < trackers; ++k) {
      mb::EliminationTracker t;
      while (t.level() < 2) {
        if (t.ingest(rng.bernoulli(0.5) ? 1.0 : 0.0, policy) && t.level() >= 0 && t.level() <= 2)
          covered[t.level()] += t.lower() <= 0.5 && 0.5 <= t.upper();
      }
    }
    const double need = 1.0 - 2.0 / (policy.beta(0) * policy.beta(0));
    for (int l = 0; l < 3; ++l) {
      const double c = covered[l] / static_cast<double>(trackers);
      ok &= c >= need;
      detail += fmt("beta=%g l=%d %.4f>=%.4f; ", beta, l, c, need);
    }
  }
  return {ok, detail};
}

// Library routines against brute-force or independent scans.
Verdict oracle_equivalences() {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> unit(0.05, 1.0);
  int bad_matching = 0, bad_gap = 0, bad_escb = 0, checks = 0;
  for (int rep = 0; rep < 50; ++rep) {
    for (std::size_t n : {2, 4, 6, 8}) {
      std::vector<double> u(n);
      for (auto& x : u) x = unit(rng);
      const auto mono = Rank1Instance::monopartite(u);
      const auto bf = oracle::maximal_matchings(mono);
      const auto m = mb::optimal_matching(mono, mb::MatchingMode::maximal);
      bad_matching += std::abs(oracle::reward(mono, m) - bf.best) > 1e-12 || !oracle::same_pairs(m, bf.argmax.front());
      std::vector<double> v(n / 2 + 1);
      for (auto& x : v) x = unit(rng);
      std::vector<double> w(v.size());
      for (auto& x : w) x = unit(rng);
      const auto bip = Rank1Instance::bipartite(v, w);
      bad_matching += std::abs(mb::expected_reward(bip, mb::optimal_matching(bip, mb::MatchingMode::maximal)) -
                               oracle::best_assignment(bip)) > 1e-12;
      checks += 2;
    }
    for (std::size_t n : {4, 6, 8, 10, 12}) {
      std::vector<double> u(n);
      for (auto& x : u) x = unit(rng);
      const auto inst = Rank1Instance::monopartite(u);
      bad_gap += std::abs(mb::compute_gaps(inst).delta_min - oracle::maximal_matchings(inst).gap) > 1e-12;
    }
  }

  for (std::size_t n : {4, 6, 8}) {
    const auto inst = Rank1Instance::monopartite(std::vector<double>(n, 0.5));
    mb::Escb escb(n);
    const auto all = oracle::all_matchings(n);
    std::set<std::vector<std::pair<Item, Item>>> enumerated;
    for (const auto& m : escb.matchings()) {
      std::vector<std::pair<Item, Item>> key;
      for (auto p : m.pairs) key.emplace_back(std::min(p.a, p.b), std::max(p.a, p.b));
      std::sort(key.begin(), key.end());
      enumerated.insert(key);
    }
    bad_escb += enumerated.size() != all.size() || escb.matchings().size() != all.size();
    mb::SeededRng noise(n, 0);
    for (std::uint64_t t = 1; t <= 400; ++t) {
      const double f = std::log(static_cast<double>(t)) +
                       4.0 * (n / 2.0) * std::log(std::log(std::max<double>(static_cast<double>(t), 3.0)));
      std::size_t best = 0;
      double best_index = -INFINITY;
      for (std::size_t k = 0; k < escb.matchings().size(); ++k) {
        double mean = 0.0, inv = 0.0;
        bool unseen = false;
        for (auto p : escb.matchings()[k].pairs) {
          const auto c = escb.count(p.a, p.b);
          if (c == 0) {
            unseen = true;
            break;
          }
          mean += escb.sum(p.a, p.b) / static_cast<double>(c);
          inv += 1.0 / static_cast<double>(c);
        }
        const double idx = unseen ? INFINITY : mean + std::sqrt(0.5 * f * inv);
        if (idx > best_index) best_index = idx, best = k;
      }
      const std::size_t chosen = escb.select(t);
      bad_escb += chosen != best;
      std::vector<double> jitter(n);
      for (auto& x : jitter) x = noise.uniform();
      mb::Feedback fb;
      for (auto p : escb.matchings()[chosen].pairs)
        fb.observations.push_back({p, jitter[p.a] * jitter[p.b] + (t % 7 == 0 ? inst.mean(p) : 0.0)});
      escb.observe(fb);
    }
  }
  return {bad_matching == 0 && bad_gap == 0 && bad_escb == 0,
          fmt("optimal_matching %d/%d bad, delta_min %d/250 bad, escb argmax %d/1200 bad", bad_matching, checks,
              bad_gap, bad_escb)};
}

bool close(double got, double want) {
  if (std::isinf(want)) return got == want;
  return std::abs(got - want) <= 1e-12 * std::max(1.0, std::abs(want));
}

int compare(const mb::BoundReport& r, const std::map<std::string, double>& want, std::string& detail) {
  int bad = 0;
  for (const auto& [k, v] : want) {
    const auto got = r.component(k);
    if (!got || !close(*got, v)) {
      ++bad;
      detail += fmt("%s.%s got %.17g want %.17g; ", r.name.c_str(), k.c_str(), got.value_or(NAN), v);
    }
  }
  for (const auto& [k, v] : r.components)
    if (!want.count(k) && k != "one_small_gap" && k != "m") {
      ++bad;
      detail += fmt("%s.%s unchecked; ", r.name.c_str(), k.c_str());
    }
  return bad;
}

// Bound reports against hand-coded evaluations.
Verdict bound_calculators() {
  const std::vector<std::pair<std::vector<double>, std::vector<double>>> bip{
      {{0.9, 0.7, 0.4}, {0.8, 0.6, 0.5, 0.1}},
      {{0.5, 0.9, 0.2, 0.85}, {0.3, 0.95}},
      {{0.6}, {0.6, 0.59, 0.2}}};
  const std::vector<std::vector<double>> mono{
      {0.9, 0.8, 0.3, 0.2},
      {0.1, 0.85, 0.55, 0.2, 0.9, 0.6},
      {0.95, 0.3, 0.7, 0.65, 0.5, 0.9, 0.28, 0.1}};
  constexpr double T = 1e6, delta = 0.01;
  int bad = 0;
  std::string detail;
  for (const auto& [u, v] : bip) {
    const auto r = mb::pair_bounds(Rank1Instance::bipartite(u, v), T, delta);
    bad += compare(r, oracle::pair_formulas(u, v, T, delta), detail);
    bad += !close(r.value, *r.component("regret"));
  }
  for (const auto& u : mono) {
    const auto inst = Rank1Instance::monopartite(u);
    const auto mr = mb::mono_bounds(inst, T, delta);
    bad += compare(mr, oracle::mono_formulas(u, T, delta), detail);
    bad += !close(mr.value, *mr.component("regret"));
    const auto ir = mb::matching_id_bounds(inst, delta);
    bad += compare(ir, oracle::matching_id_formulas(u, delta), detail);
    bad += !close(ir.value, *ir.component("gamma_bound"));
    const auto er = mb::exploration_first_ratio(inst);
    const auto m = static_cast<std::size_t>(*er.component("m"));
    bad += compare(er, oracle::exploration_first_formulas(u, m), detail);
  }
  // Hand-computed value for the smallest instance.
  const double a = mb::mono_bounds(Rank1Instance::monopartite(mono[0]), T, delta).component("A_regret").value();
  bad += !close(a, 1.0 / (0.9 * 0.5) + 1.0 / (0.9 * 0.6));
  return {bad == 0, bad == 0 ? "6 instances, all components within 1e-12 relative" : detail};
}

}  // namespace

int main(int argc, char** argv) {
  const std::vector<std::pair<std::string, std::function<Verdict()>>> criteria{
      {"zero-noise oracle suite", zero_noise_suite},
      {"pair selection regret against rank1elim", figure1},
      {"adaptive matching regret scaling in N", figure2},
      {"adaptive matching against escb", figure3},
      {"delta-PAC error rates", pac_suite},
      {"log(1/delta) sample scaling", log_delta_scaling},
      {"sample-matching proportions", proportion_audit},
      {"confidence coverage", coverage},
      {"oracle equivalences", oracle_equivalences},
      {"bound calculators", bound_calculators},
  };
  std::set<int> only;
  for (int k = 1; k < argc; ++k) only.insert(std::atoi(argv[k]));

  int failed = 0;
  for (std::size_t k = 0; k < criteria.size(); ++k) {
    if (!only.empty() && !only.count(static_cast<int>(k + 1))) continue;
    const auto t0 = std::chrono::steady_clock::now();
    Verdict v;
    try {
      v = criteria[k].second();
    } catch (const std::exception& e) {
      v = {false, std::string("exception: ") + e.what()};
    }
    failed += !v.pass;
    std::printf("%s %zu %s: %s [%.1fs]\n", v.pass ? "PASS" : "FAIL", k + 1, criteria[k].first.c_str(),
                v.detail.c_str(), elapsed(t0));
    std::fflush(stdout);
  }
  return failed == 0 ? EXIT_SUCCESS : EXIT_FAILURE;
}
