#include <benchmark/benchmark.h>

#include <cmath>
#include <vector>

#include "sierpinski/dynamics.hpp"
#include "sierpinski/fractal_graph.hpp"
#include "sierpinski/recurrence.hpp"
#include "sierpinski/spectral.hpp"
#include "sierpinski/trapping.hpp"

using namespace sierpinski;

namespace {

FractalKind kind_of(int64_t i) { return static_cast<FractalKind>(i); }

void BM_Generate(benchmark::State& state) {
  const auto kind = kind_of(state.range(0));
  const int g = static_cast<int>(state.range(1));
  for (auto _ : state) benchmark::DoNotOptimize(generate(kind, g));
  state.counters["N"] = static_cast<double>(closed_form_node_count(kind, g));
}
BENCHMARK(BM_Generate)->Args({0, 7})->Args({1, 7})->Args({2, 5})->Args({3, 4});

void BM_DecomposeValues(benchmark::State& state) {
  const auto lap = laplacian(generate(kind_of(state.range(0)), static_cast<int>(state.range(1))));
  for (auto _ : state) benchmark::DoNotOptimize(decompose(lap, false));
  state.counters["N"] = static_cast<double>(lap.dimension());
}
BENCHMARK(BM_DecomposeValues)->Args({0, 5})->Args({0, 6})->Args({1, 6})->Args({2, 4})
    ->Unit(benchmark::kMillisecond);

void BM_DecomposeVectors(benchmark::State& state) {
  const auto lap = laplacian(generate(kind_of(state.range(0)), static_cast<int>(state.range(1))));
  for (auto _ : state) benchmark::DoNotOptimize(decompose(lap, true));
  state.counters["N"] = static_cast<double>(lap.dimension());
}
BENCHMARK(BM_DecomposeVectors)->Args({0, 5})->Args({1, 5})->Args({2, 4})->Unit(benchmark::kMillisecond);

void BM_CtqwReturn(benchmark::State& state) {
  const auto s = decompose(laplacian(generate(FractalKind::SG, static_cast<int>(state.range(0)))), true);
  const auto grid = TimeGrid::linear(0.0, 200.0, 4000);
  for (auto _ : state) benchmark::DoNotOptimize(ctqw_transition(s, 0, 0, grid));
}
BENCHMARK(BM_CtqwReturn)->Arg(4)->Arg(6)->Unit(benchmark::kMillisecond);

void BM_AverageReturnQuantum(benchmark::State& state) {
  const auto s = decompose(laplacian(generate(FractalKind::DSG, static_cast<int>(state.range(0)))), true);
  const auto grid = TimeGrid::linear(0.0, 200.0, 200);
  for (auto _ : state) benchmark::DoNotOptimize(average_return_quantum(s, grid));
}
BENCHMARK(BM_AverageReturnQuantum)->Arg(4)->Arg(5)->Unit(benchmark::kMillisecond);

void BM_ComplexSpectrum(benchmark::State& state) {
  const auto net = generate(FractalKind::SG, static_cast<int>(state.range(0)));
  const auto lap = laplacian(net);
  const auto config = resolve_traps(net, TrapScheme::outer_corners);
  ComplexSolveOptions opt;
  opt.exact_count = false;
  for (auto _ : state) benchmark::DoNotOptimize(complex_spectrum(lap, config, opt));
  state.counters["N"] = static_cast<double>(net.node_count());
}
BENCHMARK(BM_ComplexSpectrum)->Arg(4)->Arg(5)->Unit(benchmark::kMillisecond);

void BM_DarkStateCount(benchmark::State& state) {
  const auto net = generate(FractalKind::SG, static_cast<int>(state.range(0)));
  const auto lap = laplacian(net);
  const auto traps = net.roles().outer;
  for (auto _ : state) benchmark::DoNotOptimize(dark_state_count(lap, traps));
  state.counters["N"] = static_cast<double>(net.node_count());
}
BENCHMARK(BM_DarkStateCount)->Arg(5)->Arg(6)->Unit(benchmark::kMillisecond);

void BM_EstimateDelta(benchmark::State& state) {
  auto grid = TimeGrid::logarithmic(1.0, 1e3, 20000);
  std::vector<double> v;
  for (double t : grid.points()) v.push_back(0.5 * (1.0 + std::cos(t)) / t);
  const TimeSeries series{grid, v, Observable::pi_kj};
  for (auto _ : state) benchmark::DoNotOptimize(estimate_delta(series));
}
BENCHMARK(BM_EstimateDelta)->Unit(benchmark::kMillisecond);

}  // namespace
BENCHMARK_MAIN();
