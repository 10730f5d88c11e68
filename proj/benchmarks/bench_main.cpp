#include <benchmark/benchmark.h>

#include "booknum/bipartite_types.hpp"
#include "booknum/circle_graph.hpp"
#include "booknum/gw_bound.hpp"
#include "booknum/hermitian_linalg.hpp"
#include "booknum/maxcut.hpp"
#include "booknum/pagecount.hpp"

using namespace booknum;

static void BM_ChordGraph(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(ChordGraph(n).num_edges());
}
BENCHMARK(BM_ChordGraph)->Arg(11)->Arg(21)->Arg(31);

static void BM_CountCrossings(benchmark::State& state) {
  const auto d = zarankiewicz_drawing(static_cast<int>(state.range(0)), static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(count_crossings(d));
  state.SetComplexityN(static_cast<benchmark::IterationCount>(d.edges.size()));
}
BENCHMARK(BM_CountCrossings)->Arg(8)->Arg(16)->Arg(32)->Complexity();

static void BM_CirculantEigs(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  for (auto _ : state) {
    for (int f = 0; f < n; ++f) benchmark::DoNotOptimize(circulant_block_eigs(2, n / 2, n, f));
  }
}
BENCHMARK(BM_CirculantEigs)->Arg(11)->Arg(101);

static void BM_GwReduced(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(gw_reduced_solve(build_reduced(n)).bound);
}
BENCHMARK(BM_GwReduced)->Arg(11)->Arg(21)->Arg(41)->Unit(benchmark::kMillisecond);

static void BM_MaxcutExact(benchmark::State& state) {
  const ChordGraph g(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(maxcut_exact(g).optimum);
}
BENCHMARK(BM_MaxcutExact)->Arg(7)->Arg(9)->Unit(benchmark::kMillisecond);

static void BM_QMatrix(benchmark::State& state) {
  const TypeTable tt(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(QMatrix(tt).max_entry());
}
BENCHMARK(BM_QMatrix)->Arg(3)->Arg(5)->Arg(7)->Unit(benchmark::kMillisecond);

static void BM_ZarReduced(benchmark::State& state) {
  const QMatrix q{TypeTable(static_cast<int>(state.range(0)))};
  for (auto _ : state) benchmark::DoNotOptimize(sdp_bound_reduced(q).t);
}
BENCHMARK(BM_ZarReduced)->Arg(3)->Unit(benchmark::kMillisecond);
BENCHMARK_MAIN();
