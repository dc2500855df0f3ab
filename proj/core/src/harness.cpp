#include "matchbandit/harness.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <thread>

#include "json.hpp"
#include "matchbandit/adaptive_matching.hpp"
#include "matchbandit/baselines.hpp"
#include "matchbandit/errors.hpp"
#include "matchbandit/gaps.hpp"
#include "matchbandit/generators.hpp"
#include "matchbandit/instance_io.hpp"
#include "matchbandit/matching_id.hpp"
#include "matchbandit/pair_elim.hpp"
#include "matchbandit/pair_elim_mono.hpp"

namespace matchbandit {

using json = nlohmann::ordered_json;

namespace {

Distribution dist_from_json(const json& j) {
  if (j.is_string()) {
    const auto s = j.get<std::string>();
    if (s == "bernoulli") return Distribution::bernoulli();
    if (s == "gaussian") return Distribution::gaussian();
    throw ParameterError("unknown distribution " + s);
  }
  if (j.is_object() && j.contains("gaussian"))
    return Distribution::gaussian(j.at("gaussian").value("sigma", 1.0));
  throw ParameterError("bad distribution");
}

json dist_to_json(const Distribution& d) {
  if (d.kind == Distribution::Kind::bernoulli) return "bernoulli";
  return json{{"gaussian", {{"sigma", d.sigma}}}};
}

template <typename T>
void read(const json& j, const char* key, T& out) {
  if (j.contains(key)) out = j.at(key).get<T>();
}

std::string fmt(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.12g", x);
  return buf;
}

bool contains(const std::vector<std::string>& v, const std::string& s) {
  return std::find(v.begin(), v.end(), s) != v.end();
}

}  // namespace

const std::vector<std::string>& regret_algorithms() {
  static const std::vector<std::string> ids{"pair_elim", "rank1elim", "pair_elim_mono", "uniform", "sam", "am", "escb"};
  return ids;
}

const std::vector<std::string>& explore_algorithms() {
  static const std::vector<std::string> ids{"pair_elim", "pair_elim_mono", "pair_select", "matching_id"};
  return ids;
}

ExperimentConfig config_from_json(std::string_view text) {
  const json j = json::parse(text);
  ExperimentConfig c;
  if (j.contains("generator")) {
    const json& g = j.at("generator");
    read(g, "kind", c.generator.kind);
    read(g, "n", c.generator.n);
    read(g, "u1", c.generator.u1);
    read(g, "delta", c.generator.delta);
    read(g, "mu", c.generator.mu);
    read(g, "dtilde", c.generator.dtilde);
    read(g, "instance", c.generator.instance);
    read(g, "permute", c.generator.permute);
    if (g.contains("dist")) c.generator.dist = dist_from_json(g.at("dist"));
  }
  read(j, "algorithm", c.algorithm);
  read(j, "mode", c.mode);
  read(j, "horizon", c.horizon);
  read(j, "delta", c.delta);
  read(j, "runs", c.runs);
  read(j, "base_seed", c.base_seed);
  read(j, "output", c.output);
  read(j, "threads", c.threads);
  read(j, "max_samples", c.max_samples);
  if (j.contains("checkpoints")) {
    read(j.at("checkpoints"), "linear_until", c.checkpoints.linear_until);
    read(j.at("checkpoints"), "growth_percent", c.checkpoints.growth_percent);
  }
  validate(c);
  return c;
}

ExperimentConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot read " + path.string());
  std::stringstream ss;
  ss << in.rdbuf();
  return config_from_json(ss.str());
}

std::string config_to_json(const ExperimentConfig& c) {
  json g{{"kind", c.generator.kind},         {"n", c.generator.n},
         {"u1", c.generator.u1},             {"delta", c.generator.delta},
         {"mu", c.generator.mu},             {"dtilde", c.generator.dtilde},
         {"instance", c.generator.instance}, {"dist", dist_to_json(c.generator.dist)},
         {"permute", c.generator.permute}};
  json j{{"generator", g},
         {"algorithm", c.algorithm},
         {"mode", c.mode},
         {"horizon", c.horizon},
         {"delta", c.delta},
         {"runs", c.runs},
         {"base_seed", c.base_seed},
         {"output", c.output},
         {"checkpoints", {{"linear_until", c.checkpoints.linear_until}, {"growth_percent", c.checkpoints.growth_percent}}},
         {"threads", c.threads},
         {"max_samples", c.max_samples}};
  return j.dump(2);
}

void validate(const ExperimentConfig& c) {
  if (c.runs < 1) throw ParameterError("runs must be at least 1");
  if (c.mode == "regret") {
    if (!contains(regret_algorithms(), c.algorithm)) throw ParameterError("unknown regret algorithm " + c.algorithm);
    if (c.horizon < 1) throw ParameterError("regret runs need a horizon of at least 1");
  } else if (c.mode == "explore") {
    if (!contains(explore_algorithms(), c.algorithm)) throw ParameterError("unknown explore algorithm " + c.algorithm);
    if (!(c.delta > 0.0 && c.delta < 1.0)) throw ParameterError("delta must lie in (0,1)");
  } else {
    throw ParameterError("mode must be regret or explore");
  }
  const auto& k = c.generator.kind;
  if (k != "bipartite" && k != "equalpairs" && k != "centered" && k != "file")
    throw ParameterError("unknown generator " + k);
}

Rank1Instance make_instance(const GeneratorSpec& spec, std::uint64_t seed) {
  Rank1Instance inst = [&] {
    if (spec.kind == "bipartite") return generate_bipartite(spec.n, spec.u1, spec.delta, seed, spec.dist);
    if (spec.kind == "equalpairs") return generate_mono_equalpairs(spec.n, spec.dtilde, spec.dist);
    if (spec.kind == "centered") return generate_mono_centered(spec.n, spec.mu, spec.dtilde, spec.dist);
    if (spec.kind == "file") return load_instance(spec.instance);
    throw ParameterError("unknown generator " + spec.kind);
  }();
  return spec.permute ? permute_labels(inst, seed) : inst;
}

std::string_view to_string(RunStatus s) {
  switch (s) {
    case RunStatus::ok:
      return "ok";
    case RunStatus::refused:
      return "refused";
    case RunStatus::budget_exhausted:
      return "budget_exhausted";
    case RunStatus::error:
      return "error";
  }
  return "error";
}

namespace {

void regret_run(const ExperimentConfig& c, const Rank1Instance& inst, std::uint64_t seed, RunOutcome& out) {
  const std::string& a = c.algorithm;
  RegretRun run;
  if (a == "pair_elim") {
    run = pair_elim_regret(inst, c.horizon, seed, c.checkpoints);
  } else if (a == "rank1elim") {
    run = rank1elim_regret(inst, c.horizon, seed, c.checkpoints);
  } else if (a == "pair_elim_mono") {
    run = mono_regret(inst, c.horizon, seed, c.checkpoints);
  } else if (a == "uniform") {
    const auto mode = inst.kind() == InstanceKind::bipartite ? ActionMode::pair : ActionMode::matching;
    run = uniform_regret(inst, c.horizon, mode, seed, c.checkpoints);
  } else if (a == "sam" || a == "am") {
    run = adaptive_matching_regret(inst, c.horizon, a == "sam" ? AmVariant::simple : AmVariant::full, seed,
                                   c.checkpoints)
              .run;
  } else if (a == "escb") {
    run = escb_regret(inst, c.horizon, seed, c.checkpoints);
  } else {
    throw ParameterError("unknown regret algorithm " + a);
  }
  out.checkpoints = std::move(run.checkpoints);
}

bool same_reward(const Rank1Instance& inst, const Matching& a, const Matching& b) {
  return std::abs(expected_reward(inst, a) - expected_reward(inst, b)) <= kRewardTieTolerance;
}

void explore_run(const ExperimentConfig& c, const Rank1Instance& inst, std::uint64_t seed, RunOutcome& out) {
  const std::string& a = c.algorithm;
  const ExploreLimits limits{c.max_samples};
  ExploreRun run;
  MatchingMode mode = MatchingMode::minimal;
  if (a == "pair_elim") {
    run = pair_elim_explore(inst, c.delta, seed, limits);
  } else if (a == "pair_elim_mono") {
    run = mono_explore(inst, c.delta, seed, limits);
  } else if (a == "pair_select") {
    run = pair_select(inst, c.delta, seed, limits).run;
    mode = MatchingMode::maximal;
  } else if (a == "matching_id") {
    run = matching_id(inst, c.delta, seed, limits).run;
    mode = MatchingMode::maximal;
  } else {
    throw ParameterError("unknown explore algorithm " + a);
  }
  out.tau = run.tau;
  if (run.budget_exhausted || !run.answer) {
    out.status = RunStatus::budget_exhausted;
    out.detail = "no answer within the sample budget";
    return;
  }
  out.correct = same_reward(inst, *run.answer, optimal_matching(inst, mode));
}

}  // namespace

RunOutcome run_one(const ExperimentConfig& c, std::uint64_t run_id) {
  RunOutcome out;
  out.run_id = run_id;
  out.seed = c.base_seed + run_id;
  try {
    const Rank1Instance inst = make_instance(c.generator, out.seed);
    out.digest = instance_digest(inst);
    if (c.mode == "regret")
      regret_run(c, inst, out.seed, out);
    else
      explore_run(c, inst, out.seed, out);
  } catch (const RefusalError& e) {
    out.status = RunStatus::refused;
    out.detail = e.what();
  } catch (const std::exception& e) {
    out.status = RunStatus::error;
    out.detail = e.what();
  }
  return out;
}

ExperimentResult run_experiment(const ExperimentConfig& config) {
  validate(config);
  ExperimentResult result{config, std::vector<RunOutcome>(config.runs), std::nullopt};
  std::atomic<std::uint64_t> next{0};
  auto worker = [&] {
    for (std::uint64_t k = next++; k < config.runs; k = next++) result.runs[k] = run_one(config, k);
  };
  const unsigned threads = std::max(1u, std::min<unsigned>(config.threads, static_cast<unsigned>(config.runs)));
  std::vector<std::thread> pool;
  for (unsigned k = 1; k < threads; ++k) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();

  try {
    const Rank1Instance inst = make_instance(config.generator, config.base_seed);
    if (inst.kind() == InstanceKind::monopartite) result.delta_min = compute_gaps(inst).delta_min;
  } catch (const std::exception&) {
  }
  return result;
}

double nearest_rank(const std::vector<double>& sorted, unsigned percent) {
  if (sorted.empty()) throw std::invalid_argument("no values");
  const std::size_t n = sorted.size();
  const std::size_t rank = std::max<std::size_t>(1, (percent * n + 99) / 100);
  return sorted[std::min(rank, n) - 1];
}

std::vector<RegretAggregate> aggregate_regret(const ExperimentResult& result) {
  std::vector<const RunOutcome*> ok;
  for (const auto& r : result.runs)
    if (r.status == RunStatus::ok) ok.push_back(&r);
  std::vector<RegretAggregate> out;
  if (ok.empty()) return out;
  const std::size_t points = ok.front()->checkpoints.size();
  for (std::size_t p = 0; p < points; ++p) {
    std::vector<double> values;
    for (const RunOutcome* r : ok) values.push_back(r->checkpoints.at(p).cum_regret);
    std::sort(values.begin(), values.end());
    out.push_back({ok.front()->checkpoints[p].t, nearest_rank(values, 50), nearest_rank(values, 5),
                   nearest_rank(values, 95)});
  }
  return out;
}

ExploreAggregate aggregate_explore(const ExperimentResult& result) {
  ExploreAggregate a;
  std::vector<double> taus;
  for (const auto& r : result.runs) {
    if (r.status == RunStatus::ok) {
      ++a.completed;
      if (!r.correct) ++a.failures;
      taus.push_back(static_cast<double>(r.tau));
    } else if (r.status == RunStatus::budget_exhausted) {
      ++a.completed;
      ++a.failures;
    }
  }
  if (a.completed > 0) a.failure_rate = static_cast<double>(a.failures) / static_cast<double>(a.completed);
  if (!taus.empty()) {
    std::sort(taus.begin(), taus.end());
    a.tau_median = nearest_rank(taus, 50);
    a.tau_p5 = nearest_rank(taus, 5);
    a.tau_p95 = nearest_rank(taus, 95);
  }
  return a;
}

void write_outputs(const ExperimentResult& result, const std::filesystem::path& dir) {
  std::filesystem::create_directories(dir);
  auto open = [&](const char* name) {
    std::ofstream f(dir / name);
    if (!f) throw std::runtime_error("cannot write " + (dir / name).string());
    return f;
  };
  const std::string& algo = result.config.algorithm;
  {
    auto f = open("runs.csv");
    if (result.config.mode == "regret") {
      f << "run_id,algo,t,cum_regret\n";
      for (const auto& r : result.runs)
        for (const auto& c : r.checkpoints) f << r.run_id << ',' << algo << ',' << c.t << ',' << fmt(c.cum_regret) << '\n';
    } else {
      f << "run_id,algo,tau,correct\n";
      for (const auto& r : result.runs)
        if (r.status == RunStatus::ok || r.status == RunStatus::budget_exhausted)
          f << r.run_id << ',' << algo << ',' << r.tau << ',' << (r.correct ? 1 : 0) << '\n';
    }
  }
  {
    auto f = open("aggregate.csv");
    if (result.config.mode == "regret") {
      f << "algo,t,median,p5,p95\n";
      for (const auto& a : aggregate_regret(result))
        f << algo << ',' << a.t << ',' << fmt(a.median) << ',' << fmt(a.p5) << ',' << fmt(a.p95) << '\n';
    } else {
      const auto a = aggregate_explore(result);
      f << "algo,runs,failures,failure_rate,tau_median,tau_p5,tau_p95\n";
      f << algo << ',' << a.completed << ',' << a.failures << ',' << fmt(a.failure_rate) << ',' << fmt(a.tau_median)
        << ',' << fmt(a.tau_p5) << ',' << fmt(a.tau_p95) << '\n';
    }
  }
  {
    auto f = open("status.csv");
    f << "run_id,algo,status,detail\n";
    for (const auto& r : result.runs) {
      std::string detail = r.detail;
      std::replace(detail.begin(), detail.end(), ',', ';');
      std::replace(detail.begin(), detail.end(), '\n', ' ');
      f << r.run_id << ',' << algo << ',' << to_string(r.status) << ',' << detail << '\n';
    }
  }
  {
    json meta;
    meta["config"] = json::parse(config_to_json(result.config));
    json digests = json::array();
    for (const auto& r : result.runs) digests.push_back(r.digest);
    meta["digests"] = digests;
    if (result.delta_min) meta["delta_min"] = *result.delta_min;
    auto f = open("meta.json");
    f << meta.dump(2) << '\n';
  }
}

unsigned resolve_threads(std::optional<unsigned> flag, unsigned fallback) {
  if (flag && *flag > 0) return *flag;
  if (const char* env = std::getenv("MATCHBANDIT_THREADS")) {
    char* end = nullptr;
    const unsigned long v = std::strtoul(env, &end, 10);
    if (end != env && *end == '\0' && v > 0) return static_cast<unsigned>(v);
  }
  return std::max(1u, fallback);
}

}  // namespace matchbandit
