// Serial reference vs OpenMP path for the three data-parallel kernels.
// Arg 0 selects Execution::Serial, 1 selects Execution::Parallel.

#include <benchmark/benchmark.h>

#include "lpflat/cayley.hpp"
#include "lpflat/realize.hpp"
#include "lpflat/rigidity.hpp"

namespace {

using namespace lpflat;

Execution mode(const benchmark::State& state) { return state.range(0) == 0 ? Execution::Serial : Execution::Parallel; }

void label(benchmark::State& state) {
  state.SetLabel(state.range(0) == 0 ? "serial" : "parallel(" + std::to_string(worker_count()) + ")");
}

void BM_CayleyScanSquare(benchmark::State& state) {
  const Linkage square(presets::cycle(4), {1.0, 1.0, 1.0, 1.0});
  RealizeConfig cfg;
  cfg.execution = mode(state);
  cfg.restarts = 20;
  for (auto _ : state) benchmark::DoNotOptimize(cayley_scan_1(square, Edge(0, 2), 2, NormParam::finite(2), 41, cfg));
  label(state);
}
BENCHMARK(BM_CayleyScanSquare)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

void BM_CayleyScanBananaExact(benchmark::State& state) {
  const Graph h = presets::k5_minus_two_at_vertex();
  const Linkage l(h, std::vector<double>(h.num_edges(), 1.0));
  RealizeConfig cfg;
  cfg.execution = mode(state);
  for (auto _ : state) benchmark::DoNotOptimize(cayley_scan_1(l, Edge(2, 4), 2, NormParam::finite(1), 21, cfg));
  label(state);
}
BENCHMARK(BM_CayleyScanBananaExact)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

void BM_RealizeRestartsUnknown(benchmark::State& state) {
  // Equilateral K4 has no planar Euclidean realization, so every restart runs.
  const Linkage k4(presets::complete(4), std::vector<double>(6, 1.0));
  RealizeConfig cfg;
  cfg.execution = mode(state);
  cfg.restarts = 32;
  for (auto _ : state) benchmark::DoNotOptimize(realize(k4, 2, NormParam::finite(2), cfg));
  label(state);
}
BENCHMARK(BM_RealizeRestartsUnknown)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

void BM_GenericRank(benchmark::State& state) {
  RankConfig cfg;
  cfg.execution = mode(state);
  cfg.samples = 32;
  const Graph g = presets::complete(7);
  for (auto _ : state) benchmark::DoNotOptimize(generic_rank(g, 3, NormParam::finite(3), cfg));
  label(state);
}
BENCHMARK(BM_GenericRank)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

void BM_ProjectionDimension(benchmark::State& state) {
  RankConfig cfg;
  cfg.execution = mode(state);
  cfg.samples = 32;
  const Graph g = presets::complete(7);
  for (auto _ : state) benchmark::DoNotOptimize(projection_dimension(g, 3, NormParam::finite(3), cfg));
  label(state);
}
BENCHMARK(BM_ProjectionDimension)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
