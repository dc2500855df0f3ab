#include <benchmark/benchmark.h>

#include "matchbandit/baselines.hpp"
#include "matchbandit/cluster_partition.hpp"
#include "matchbandit/confbound.hpp"
#include "matchbandit/generators.hpp"
#include "matchbandit/pair_elim.hpp"

namespace mb = matchbandit;

static void BM_TrackerIngest(benchmark::State& state) {
  const auto policy = mb::BetaPolicy::horizon(1e6);
  mb::EliminationTracker t;
  double x = 0.0;
  for (auto _ : state) {
    x = x > 0.5 ? 0.0 : 1.0;
    benchmark::DoNotOptimize(t.ingest(x, policy));
  }
}
BENCHMARK(BM_TrackerIngest);

static void BM_PairElimRegret(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const auto inst = mb::generate_bipartite(n, 0.9, 0.5, 1);
  constexpr std::uint64_t horizon = 100'000;
  for (auto _ : state) benchmark::DoNotOptimize(mb::pair_elim_regret(inst, horizon, 7));
  state.SetItemsProcessed(static_cast<std::int64_t>(state.iterations() * horizon));
}
BENCHMARK(BM_PairElimRegret)->Arg(4)->Arg(8)->Arg(16);

static void BM_EscbSelect(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  mb::Escb escb(n);
  std::uint64_t t = 1;
  for (auto _ : state) benchmark::DoNotOptimize(escb.select(++t));
}
BENCHMARK(BM_EscbSelect)->Arg(4)->Arg(6)->Arg(8);

static void BM_SampleMatching(benchmark::State& state) {
  mb::ClusterPartition p({{0, 1, 2}, {3, 4, 5, 6}, {7, 8, 9}, {10, 11, 12, 13, 14, 15}});
  std::uint64_t t = 0;
  for (auto _ : state) benchmark::DoNotOptimize(p.sample(t++));
}
BENCHMARK(BM_SampleMatching);

BENCHMARK_MAIN();
