#include "mginf/kernels.hpp"
#include "mginf/model_params.hpp"
#include "mginf/riccati_general.hpp"
#include "mginf/rng.hpp"
#include "mginf/simulator.hpp"
#include "mginf/transform_series.hpp"

#include <benchmark/benchmark.h>

#include <vector>

namespace {

std::vector<double> noise(std::size_t n, std::uint64_t seed) {
  mginf::SplitMix64 rng(seed);
  std::vector<double> v(n);
  for (double& x : v) x = rng.uniform();
  return v;
}

template <auto Convolve>
void BM_Convolve(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const std::vector<double> a = noise(n, 1), b = noise(n, 2);
  std::vector<double> out(n);
  for (auto _ : state) {
    Convolve(a, b, 0.01, out);
    benchmark::DoNotOptimize(out.data());
  }
  state.SetComplexityN(state.range(0));
}

void BM_BusyPeriodSeries(benchmark::State& state) {
  const auto p = mginf::validate_queue_params(1.0, 1.0);
  const auto ctx = mginf::make_kernel(mginf::validate_beta(p, mginf::BetaSpec::constant(0.2), 10.0));
  const auto exec = state.range(0) == 0 ? mginf::Execution::Serial : mginf::Execution::Parallel;
  const mginf::GridSpec grid = mginf::GridSpec::default_for(p);
  for (auto _ : state) benchmark::DoNotOptimize(mginf::busy_period_cdf_series(ctx, grid, 1e-10, exec));
}

void BM_RunCycles(benchmark::State& state) {
  const auto p = mginf::validate_queue_params(1.0, 1.0);
  const auto exec = state.range(0) == 0 ? mginf::Execution::Serial : mginf::Execution::Parallel;
  for (auto _ : state) benchmark::DoNotOptimize(mginf::run_cycles(p, 0.2, 100000, 1, exec));
}

}  // namespace

BENCHMARK(BM_Convolve<mginf::kernels::convolve_trapezoid_serial>)->RangeMultiplier(4)->Range(256, 16384)->Complexity();
BENCHMARK(BM_Convolve<mginf::kernels::convolve_trapezoid_omp>)->RangeMultiplier(4)->Range(256, 16384)->Complexity();
BENCHMARK(BM_BusyPeriodSeries)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_RunCycles)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
