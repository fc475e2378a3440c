#include "matchdiff/families.hpp"
#include "matchdiff/graph.hpp"
#include "matchdiff/kseries.hpp"
#include "matchdiff/matchcount.hpp"
#include "matchdiff/positivity.hpp"
#include "matchdiff/series.hpp"

#include <benchmark/benchmark.h>

using namespace matchdiff;

static void BM_MatchPolyFull(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  BipGraph g = gen_regular_bipartite(n, 3, 1);
  for (auto _ : state) benchmark::DoNotOptimize(match_poly_full(g));
}
BENCHMARK(BM_MatchPolyFull)->Arg(8)->Arg(12)->Arg(16)->Unit(benchmark::kMillisecond);

static void BM_MatchCountUpto(benchmark::State& state) {
  const BipGraph g = tutte_12cage_graph();
  MatchCountGuard guard;
  guard.threads = 1;
  for (auto _ : state) benchmark::DoNotOptimize(match_count_upto(g, static_cast<int>(state.range(0)), guard));
}
BENCHMARK(BM_MatchCountUpto)->Arg(3)->Arg(4)->Arg(5)->Unit(benchmark::kMillisecond);

static void BM_SeriesExpLn(benchmark::State& state) {
  const int order = static_cast<int>(state.range(0));
  ISeries k = build_K(order);
  for (auto _ : state) benchmark::DoNotOptimize(series_exp(series_ln1p(k)));
}
BENCHMARK(BM_SeriesExpLn)->Arg(2)->Arg(3)->Arg(4)->Unit(benchmark::kMillisecond);

static void BM_BuildK(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(build_K(static_cast<int>(state.range(0))));
}
BENCHMARK(BM_BuildK)->Arg(3)->Arg(5)->Unit(benchmark::kMillisecond);

static void BM_DeltaTable(benchmark::State& state) {
  BipGraph g = gen_regular_bipartite(static_cast<int>(state.range(0)), 3, 2);
  for (auto _ : state) benchmark::DoNotOptimize(delta_table(g));
}
BENCHMARK(BM_DeltaTable)->Arg(8)->Arg(12)->Unit(benchmark::kMillisecond);
BENCHMARK_MAIN();
