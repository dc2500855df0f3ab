#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "matchbandit/env.hpp"
#include "matchbandit/instance.hpp"

namespace matchbandit {

struct GeneratorSpec {
  // "bipartite", "equalpairs", "centered" or "file".
  std::string kind = "bipartite";
  std::size_t n = 2;
  double u1 = 0.9;
  double delta = 0.5;
  double mu = 0.5;
  double dtilde = 0.1;
  std::string instance;
  Distribution dist = Distribution::bernoulli();
  bool permute = true;
};

struct ExperimentConfig {
  GeneratorSpec generator;
  std::string algorithm = "pair_elim";
  // "regret" or "explore".
  std::string mode = "regret";
  std::uint64_t horizon = 0;
  double delta = 0.1;
  std::uint64_t runs = 1;
  std::uint64_t base_seed = 0;
  std::string output;
  CheckpointOptions checkpoints;
  unsigned threads = 1;
  std::uint64_t max_samples = 500'000'000;
};

ExperimentConfig config_from_json(std::string_view text);
ExperimentConfig load_config(const std::filesystem::path& path);
std::string config_to_json(const ExperimentConfig& config);
void validate(const ExperimentConfig& config);

const std::vector<std::string>& regret_algorithms();
const std::vector<std::string>& explore_algorithms();

// The instance of one run; seeded by base_seed + run index.
Rank1Instance make_instance(const GeneratorSpec& spec, std::uint64_t seed);

enum class RunStatus { ok, refused, budget_exhausted, error };
std::string_view to_string(RunStatus s);

struct RunOutcome {
  std::uint64_t run_id = 0;
  std::uint64_t seed = 0;
  RunStatus status = RunStatus::ok;
  std::string detail;
  std::string digest;
  std::vector<Checkpoint> checkpoints;
  std::uint64_t tau = 0;
  bool correct = false;
};

// Runs one replicate; never throws for algorithm refusals or errors.
RunOutcome run_one(const ExperimentConfig& config, std::uint64_t run_id);

struct ExperimentResult {
  ExperimentConfig config;
  std::vector<RunOutcome> runs;
  std::optional<double> delta_min;
};

// Replicates run on config.threads workers; results are ordered by run_id.
ExperimentResult run_experiment(const ExperimentConfig& config);

// Lower nearest-rank quantile of sorted values: sorted[ceil(p n / 100) - 1].
double nearest_rank(const std::vector<double>& sorted, unsigned percent);

struct RegretAggregate {
  std::uint64_t t = 0;
  double median = 0.0, p5 = 0.0, p95 = 0.0;
};
std::vector<RegretAggregate> aggregate_regret(const ExperimentResult& result);

struct ExploreAggregate {
  std::uint64_t completed = 0;
  std::uint64_t failures = 0;
  double failure_rate = 0.0;
  double tau_median = 0.0, tau_p5 = 0.0, tau_p95 = 0.0;
};
ExploreAggregate aggregate_explore(const ExperimentResult& result);

// runs.csv, aggregate.csv, status.csv and meta.json in `dir`.
void write_outputs(const ExperimentResult& result, const std::filesystem::path& dir);

// Thread count: explicit flag, else MATCHBANDIT_THREADS, else the fallback.
unsigned resolve_threads(std::optional<unsigned> flag, unsigned fallback);

}  // namespace matchbandit
