#include "matchbandit/generators.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numeric>

#include "matchbandit/env.hpp"
#include "matchbandit/errors.hpp"

namespace matchbandit {

namespace {

std::vector<double> sorted_draws(std::size_t n, double u1, double hi, std::uint64_t seed, std::uint64_t stream) {
  SeededRng rng(seed, stream);
  std::vector<double> out(n);
  out[0] = u1;
  for (std::size_t k = 1; k < n; ++k) out[k] = hi * rng.uniform();
  std::sort(out.begin() + 1, out.end(), std::greater<>());
  return out;
}

std::vector<double> shuffled(const std::vector<double>& v, SeededRng& rng) {
  std::vector<std::size_t> perm(v.size());
  std::iota(perm.begin(), perm.end(), std::size_t{0});
  std::shuffle(perm.begin(), perm.end(), rng.engine());
  std::vector<double> out(v.size());
  for (std::size_t k = 0; k < v.size(); ++k) out[perm[k]] = v[k];
  return out;
}

void check_range(const std::vector<double>& u, const Distribution& dist) {
  for (double x : u) {
    if (x < -1e-12) throw ParameterError("generated parameter below zero");
    if (dist.kind == Distribution::Kind::bernoulli && x > 1.0 + 1e-12)
      throw ParameterError("generated parameter above one");
  }
}

std::vector<double> clean(std::vector<double> u) {
  // Snap rounding noise so boundary values stay legal.
  for (double& x : u) {
    if (std::abs(x) < 1e-12) x = 0.0;
    if (std::abs(x - 1.0) < 1e-12) x = 1.0;
  }
  return u;
}

}  // namespace

Rank1Instance generate_bipartite(std::size_t n, double u1, double delta, std::uint64_t seed, Distribution dist) {
  if (n == 0) throw ParameterError("need at least one row");
  if (!(delta >= 0.0 && delta <= u1 && u1 <= 1.0)) throw ParameterError("need 0 <= delta <= u1 <= 1");
  const double hi = 2.0 * (u1 - delta);
  if (dist.kind == Distribution::Kind::bernoulli && hi > 1.0) throw ParameterError("draw range exceeds [0,1]");
  return Rank1Instance::bipartite(sorted_draws(n, u1, hi, seed, streams::instance_rows),
                                  sorted_draws(n, u1, hi, seed, streams::instance_cols), dist);
}

Rank1Instance generate_mono_equalpairs(std::size_t n_pairs, double dtilde, Distribution dist) {
  if (n_pairs == 0 || !(dtilde >= 0.0)) throw ParameterError("need N >= 1 and dtilde >= 0");
  std::vector<double> u;
  for (std::size_t i = 1; i <= n_pairs; ++i) {
    const double x = static_cast<double>(n_pairs - i) * dtilde;
    u.push_back(x);
    u.push_back(x);
  }
  u = clean(std::move(u));
  check_range(u, dist);
  return Rank1Instance::monopartite(std::move(u), dist);
}

Rank1Instance generate_mono_centered(std::size_t n_pairs, double mu, double dtilde, Distribution dist) {
  if (n_pairs == 0 || !(dtilde >= 0.0)) throw ParameterError("need N >= 1 and dtilde >= 0");
  std::vector<double> u;
  for (std::size_t i = 1; i <= n_pairs; ++i) {
    const double x = mu + (static_cast<double>(n_pairs + 1) - 2.0 * static_cast<double>(i)) * dtilde / 2.0;
    u.push_back(x);
    u.push_back(x);
  }
  u = clean(std::move(u));
  for (double x : u)
    if (x < 0.0 || x > 1.0) throw ParameterError("centered parameters leave [0,1]");
  return Rank1Instance::monopartite(std::move(u), dist);
}

Rank1Instance permute_labels(const Rank1Instance& instance, std::uint64_t seed) {
  SeededRng rng(seed, streams::labels);
  if (instance.kind() == InstanceKind::monopartite)
    return Rank1Instance::monopartite(shuffled(instance.u(), rng), instance.dist());
  auto u = shuffled(instance.u(), rng);
  auto v = shuffled(instance.v(), rng);
  return Rank1Instance::bipartite(std::move(u), std::move(v), instance.dist());
}

}  // namespace matchbandit
