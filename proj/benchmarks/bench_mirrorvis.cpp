#include <benchmark/benchmark.h>

#include <numbers>

#include "mirrorvis/scan.hpp"
#include "mirrorvis/visibility.hpp"

using namespace mirrorvis;

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

DimensionlessParams sample_params() { return make_dimensionless(1.0, 0.1, 0.05, 1e-3, 10.0); }

IntegratorOptions with_steps(int spp) {
  IntegratorOptions o;
  o.steps_per_period = spp;
  o.estimate_error = false;
  return o;
}

}  // namespace

static void Propagate(benchmark::State& state) {
  const auto d = sample_params();
  const auto opts = with_steps(static_cast<int>(state.range(0)));
  for (auto _ : state) {
    auto traj = propagate(d, {0.5, 0.2}, 3.0 * kTwoPi, opts);
    benchmark::DoNotOptimize(traj.states.data());
  }
  state.SetItemsProcessed(state.iterations() * 3 * state.range(0));
}
BENCHMARK(Propagate)->Arg(500)->Arg(2000)->Arg(8000)->Unit(benchmark::kMillisecond);

static void ThermalVisibility(benchmark::State& state) {
  const auto d = sample_params();
  for (auto _ : state) {
    auto s = visibility_thermal(d, 3.0 * kTwoPi, with_steps(2000));
    benchmark::DoNotOptimize(s.nu.data());
  }
}
BENCHMARK(ThermalVisibility)->Unit(benchmark::kMillisecond);

static void QuadratureVisibility(benchmark::State& state) {
  const auto d = sample_params();
  const auto probes = probe_c6(d, 3.0 * kTwoPi, with_steps(2000));
  const int order = static_cast<int>(state.range(0));
  for (auto _ : state) {
    auto s = visibility_quadrature(d, probes, order);
    benchmark::DoNotOptimize(s.nu.data());
  }
}
BENCHMARK(QuadratureVisibility)->Arg(20)->Arg(40)->Arg(80)->Unit(benchmark::kMillisecond);

static void ClosedForm(benchmark::State& state) {
  const auto d = sample_params();
  const auto t = TimeGrid::periods(3.0, 2000).taus();
  for (auto _ : state) {
    auto s = visibility_closed_form(d, t);
    benchmark::DoNotOptimize(s.nu.data());
  }
}
BENCHMARK(ClosedForm)->Unit(benchmark::kMicrosecond);

static void Scan(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const auto T = log_axis(1e-10, 1e-2, n);
  const auto g = log_axis(1e-8, 1e-1, n);
  for (auto _ : state) {
    auto grid = run_scan(reference_setup(), T, g, 1.0, 1.0);
    benchmark::DoNotOptimize(grid.cells.data());
  }
  state.SetItemsProcessed(state.iterations() * static_cast<int64_t>(n * n));
}
BENCHMARK(Scan)->Arg(50)->Arg(200)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
