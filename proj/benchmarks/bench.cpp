#include <benchmark/benchmark.h>

#include "tilelab/constructions.hpp"
#include "tilelab/pipeline.hpp"
#include "tilelab/solver.hpp"

using namespace tilelab;

static void BM_MinCodegree(benchmark::State& state) {
  KGraph h = build_basic(BasicKind::complete, 3, static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(h.min_d_degree(2));
}
BENCHMARK(BM_MinCodegree)->Arg(10)->Arg(20)->Arg(30);

static void BM_EnumerateCopies(benchmark::State& state) {
  KGraph h = random_codegree_graph(3, static_cast<int>(state.range(0)), 2, 0.5, 1);
  for (auto _ : state)
    benchmark::DoNotOptimize(enumerate_copies(h, {3, 1}).size());
}
BENCHMARK(BM_EnumerateCopies)->Arg(10)->Arg(14)->Arg(18);

static void BM_FindFactor(benchmark::State& state) {
  KGraph h = random_codegree_graph(3, static_cast<int>(state.range(0)), 2, 0.5, 1);
  for (auto _ : state)
    benchmark::DoNotOptimize(find_factor(h, {3, 1}).outcome);
}
BENCHMARK(BM_FindFactor)->Arg(10)->Arg(15);

static void BM_Pipeline(benchmark::State& state) {
  auto [h, x, y] = build_partition_model(3, 1, static_cast<int>(state.range(0)),
                                         static_cast<int>(state.range(0)) / 5);
  for (auto _ : state)
    benchmark::DoNotOptimize(
        run_pipeline(h, {3, 1}, 0.01, WitnessMode::exhaustive).success);
}
BENCHMARK(BM_Pipeline)->Arg(10)->Arg(15);

BENCHMARK_MAIN();
