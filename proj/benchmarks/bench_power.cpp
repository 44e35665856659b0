#include <benchmark/benchmark.h>

#include <cstdint>

#include "expower/game.hpp"
#include "expower/mixture.hpp"
#include "expower/power.hpp"
#include "expower/simulate.hpp"

using namespace expower;

namespace {

const EffectSpec kEffect{0.48, 0.65};

void BM_PowerAnalytic(benchmark::State& state) {
  const TestConfig cfg;
  for (auto _ : state) benchmark::DoNotOptimize(power_analytic(kEffect, 0.2, 150, cfg));
}
BENCHMARK(BM_PowerAnalytic);

void BM_PowerMonteCarlo(benchmark::State& state) {
  const TestConfig cfg{1.645, static_cast<std::uint64_t>(state.range(0)), 7};
  for (auto _ : state) benchmark::DoNotOptimize(power_mc(kEffect, 0.2, 150, cfg));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_PowerMonteCarlo)->Arg(10'000)->Arg(200'000)->Unit(benchmark::kMillisecond);

void BM_SampleSize(benchmark::State& state) {
  const TestConfig cfg;
  for (auto _ : state) benchmark::DoNotOptimize(sample_size_for_power(kEffect, 0.6, 0.95, cfg));
}
BENCHMARK(BM_SampleSize);

void BM_IsoPowerContour(benchmark::State& state) {
  const TestConfig cfg;
  const auto grid = default_gamma_grid();
  for (auto _ : state)
    benchmark::DoNotOptimize(iso_power_contour(BudgetSpec{1650}, 0.9, kEffect, grid, cfg));
}
BENCHMARK(BM_IsoPowerContour);

void BM_EstimateMixture(benchmark::State& state) {
  SimSpec spec;
  spec.n = 2000;
  spec.gamma_f = 0.08;
  spec.gamma_r = 0.51;
  spec.seed = 3;
  const auto counts = pattern_counts(simulate(spec, builtin_games()));
  for (auto _ : state) benchmark::DoNotOptimize(estimate_mixture(counts, state.range(0), 11));
}
BENCHMARK(BM_EstimateMixture)->Arg(0)->Arg(200)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
