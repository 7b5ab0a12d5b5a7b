#include <benchmark/benchmark.h>

#include "cycleclust/branch_and_bound.hpp"
#include "cycleclust/fixtures.hpp"
#include "cycleclust/heuristics.hpp"
#include "cycleclust/mip.hpp"
#include "cycleclust/simplex.hpp"

using namespace cycleclust;

static void BM_BuildMip(benchmark::State& state) {
  const auto w = random_flow_matrix(static_cast<int>(state.range(0)), 1);
  for (auto _ : state) benchmark::DoNotOptimize(build_mip(w, 3, kDefaultAlpha));
}
BENCHMARK(BM_BuildMip)->Arg(10)->Arg(20)->Arg(40);

static void BM_RootRelaxation(benchmark::State& state) {
  const auto w = random_flow_matrix(static_cast<int>(state.range(0)), 2);
  const auto mip = build_mip(w, 3, kDefaultAlpha);
  for (auto _ : state) benchmark::DoNotOptimize(solve_lp(mip));
}
BENCHMARK(BM_RootRelaxation)->Arg(8)->Arg(12)->Arg(16)->Unit(benchmark::kMillisecond);

static void BM_BranchAndBound(benchmark::State& state) {
  const auto w = random_flow_matrix(static_cast<int>(state.range(0)), 3);
  const auto mip = build_mip(w, 3, kDefaultAlpha);
  for (auto _ : state) benchmark::DoNotOptimize(branch_and_bound(mip, w, {}));
}
BENCHMARK(BM_BranchAndBound)->Arg(6)->Arg(8)->Arg(10)->Unit(benchmark::kMillisecond);

static void BM_GreedyExchange(benchmark::State& state) {
  const auto w = random_flow_matrix(static_cast<int>(state.range(0)), 4);
  for (auto _ : state) {
    benchmark::DoNotOptimize(exchange_improvement(w, greedy_heuristic(w, 3, kDefaultAlpha), kDefaultAlpha));
  }
}
BENCHMARK(BM_GreedyExchange)->Arg(20)->Arg(100)->Arg(200)->Unit(benchmark::kMillisecond);

static void BM_BruteForce(benchmark::State& state) {
  const auto w = random_flow_matrix(static_cast<int>(state.range(0)), 5);
  for (auto _ : state) benchmark::DoNotOptimize(brute_force(w, 3, kDefaultAlpha));
}
BENCHMARK(BM_BruteForce)->Arg(8)->Arg(10)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
