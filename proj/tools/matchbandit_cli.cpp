#include <cstdio>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "matchbandit/bounds.hpp"
#include "matchbandit/harness.hpp"
#include "matchbandit/instance_io.hpp"

namespace mb = matchbandit;

namespace {

struct GeneratorFlags {
  std::string kind;
  std::size_t n = 4;
  double u1 = 0.9;
  double delta = 0.75;
  double mu = 0.5;
  double dtilde = 0.1;
  std::string instance;
  std::string dist = "bernoulli";
  double sigma = 1.0;
  bool no_permute = false;

  void attach(CLI::App* app) {
    app->add_option("--generator", kind, "bipartite | equalpairs | centered | file");
    app->add_option("--n", n, "rows (bipartite) or pairs (monopartite)");
    app->add_option("--u1", u1, "best parameter (bipartite)");
    app->add_option("--delta", delta, "gap parameter (bipartite)");
    app->add_option("--mu", mu, "centre (centered)");
    app->add_option("--dtilde", dtilde, "pair spacing (equalpairs, centered)");
    app->add_option("--instance", instance, "instance JSON (file)");
    app->add_option("--dist", dist, "bernoulli | gaussian");
    app->add_option("--sigma", sigma, "gaussian noise level");
    app->add_flag("--no-permute", no_permute, "keep generated labels in rank order");
  }

  mb::GeneratorSpec spec(const std::string& fallback) const {
    mb::GeneratorSpec g;
    g.kind = kind.empty() ? (instance.empty() ? fallback : "file") : kind;
    g.n = n;
    g.u1 = u1;
    g.delta = delta;
    g.mu = mu;
    g.dtilde = dtilde;
    g.instance = instance;
    g.dist = dist == "gaussian" ? mb::Distribution::gaussian(sigma) : mb::Distribution::bernoulli();
    g.permute = !no_permute;
    return g;
  }
};

struct RunFlags {
  std::string algo;
  std::string config;
  std::uint64_t horizon = 100000;
  double conf = 0.1;
  std::uint64_t runs = 20;
  std::uint64_t seed = 1;
  std::string out;
  std::optional<unsigned> threads;
  std::uint64_t max_samples = 500'000'000;
};

void report(const mb::ExperimentResult& result) {
  if (result.config.mode == "regret") {
    const auto agg = mb::aggregate_regret(result);
    if (agg.empty()) {
      std::cout << "no successful runs\n";
    } else {
      const auto& last = agg.back();
      std::printf("%s t=%llu median=%.6g p5=%.6g p95=%.6g\n", result.config.algorithm.c_str(),
                  static_cast<unsigned long long>(last.t), last.median, last.p5, last.p95);
    }
  } else {
    const auto a = mb::aggregate_explore(result);
    std::printf("%s runs=%llu failures=%llu tau_median=%.6g p5=%.6g p95=%.6g\n", result.config.algorithm.c_str(),
                static_cast<unsigned long long>(a.completed), static_cast<unsigned long long>(a.failures),
                a.tau_median, a.tau_p5, a.tau_p95);
  }
  for (const auto& r : result.runs)
    if (r.status != mb::RunStatus::ok)
      std::cerr << "run " << r.run_id << ": " << mb::to_string(r.status) << " " << r.detail << '\n';
}

int execute(mb::ExperimentConfig config, const RunFlags& f) {
  config.threads = mb::resolve_threads(f.threads, config.threads);
  if (!f.out.empty()) config.output = f.out;
  const auto result = mb::run_experiment(config);
  if (!config.output.empty()) mb::write_outputs(result, config.output);
  report(result);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Rank-1 matching bandit simulations"};
  app.require_subcommand(1);

  RunFlags bench_flags, explore_flags;
  GeneratorFlags bench_gen, explore_gen;
  std::string family;

  auto* bench = app.add_subcommand("bench", "regret experiment");
  bench->add_option("family", family, "pair | matching")->required()->check(CLI::IsMember({"pair", "matching"}));
  bench->add_option("--algo", bench_flags.algo, "algorithm id");
  bench->add_option("--config", bench_flags.config, "experiment config JSON");
  bench->add_option("--horizon", bench_flags.horizon, "horizon T");
  bench->add_option("--runs", bench_flags.runs, "replicates");
  bench->add_option("--seed", bench_flags.seed, "base seed");
  bench->add_option("--out", bench_flags.out, "output directory");
  bench->add_option("--threads", bench_flags.threads, "worker threads (default: MATCHBANDIT_THREADS or 1)");
  bench_gen.attach(bench);

  auto* explore = app.add_subcommand("explore", "pure exploration experiment");
  explore->add_option("--algo", explore_flags.algo, "algorithm id")->required();
  explore->add_option("--config", explore_flags.config, "experiment config JSON");
  explore->add_option("--confidence", explore_flags.conf, "target error probability delta");
  explore->add_option("--runs", explore_flags.runs, "replicates");
  explore->add_option("--seed", explore_flags.seed, "base seed");
  explore->add_option("--out", explore_flags.out, "output directory");
  explore->add_option("--threads", explore_flags.threads, "worker threads (default: MATCHBANDIT_THREADS or 1)");
  explore->add_option("--max-samples", explore_flags.max_samples, "sample budget per run");
  explore_gen.attach(explore);

  std::string instance_path;
  double bounds_horizon = 1e6, bounds_delta = 0.01;
  auto* bounds = app.add_subcommand("bounds", "closed-form bound report for an instance");
  bounds->add_option("--instance", instance_path, "instance JSON")->required();
  bounds->add_option("--horizon", bounds_horizon, "horizon for regret terms");
  bounds->add_option("--confidence", bounds_delta, "delta for exploration terms");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*bench) {
      mb::ExperimentConfig c;
      if (!bench_flags.config.empty()) {
        c = mb::load_config(bench_flags.config);
      } else {
        c.generator = bench_gen.spec(family == "pair" ? "bipartite" : "equalpairs");
        c.algorithm = bench_flags.algo.empty() ? (family == "pair" ? "pair_elim" : "sam") : bench_flags.algo;
        c.mode = "regret";
        c.horizon = bench_flags.horizon;
        c.runs = bench_flags.runs;
        c.base_seed = bench_flags.seed;
        mb::validate(c);
      }
      return execute(c, bench_flags);
    }
    if (*explore) {
      mb::ExperimentConfig c;
      if (!explore_flags.config.empty()) {
        c = mb::load_config(explore_flags.config);
      } else {
        c.generator = explore_gen.spec(explore_flags.algo == "pair_elim" ? "bipartite" : "equalpairs");
        c.algorithm = explore_flags.algo;
        c.mode = "explore";
        c.delta = explore_flags.conf;
        c.runs = explore_flags.runs;
        c.base_seed = explore_flags.seed;
        c.max_samples = explore_flags.max_samples;
        mb::validate(c);
      }
      return execute(c, explore_flags);
    }
    const auto inst = mb::load_instance(instance_path);
    std::cout << "[\n";
    if (inst.kind() == mb::InstanceKind::bipartite) {
      std::cout << mb::to_json(mb::pair_bounds(inst, bounds_horizon, bounds_delta)) << "\n";
    } else {
      std::cout << mb::to_json(mb::mono_bounds(inst, bounds_horizon, bounds_delta)) << ",\n";
      std::cout << mb::to_json(mb::matching_id_bounds(inst, bounds_delta));
      if (inst.n_items() >= 4) std::cout << ",\n" << mb::to_json(mb::exploration_first_ratio(inst));
      std::cout << "\n";
    }
    std::cout << "]\n";
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
