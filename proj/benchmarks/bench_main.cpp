#include <benchmark/benchmark.h>

#include "qvortex/field_sampler.hpp"
#include "qvortex/moments.hpp"
#include "qvortex/momentum_wave.hpp"
#include "qvortex/vortex_finder.hpp"

using namespace qvortex;

namespace {

void BM_ExactDensityGrid(benchmark::State& state) {
  const auto psi = Wavefunction::momentum(MomentumWavefunctionKind::ExactClosedForm, 5.0, 0.4);
  const int n = static_cast<int>(state.range(0));
  const GridSpec spec{-4.0, 4.0, -4.0, 4.0, n, n};
  for (auto _ : state) benchmark::DoNotOptimize(density_grid(psi, spec));
  state.SetItemsProcessed(state.iterations() * n * n);
}
BENCHMARK(BM_ExactDensityGrid)->Arg(100)->Arg(400)->Unit(benchmark::kMillisecond);

void BM_PositionVelocityGrid(benchmark::State& state) {
  const auto psi = Wavefunction::position(5.0, 0.4);
  const auto spec = window(0.064, 7.05, 2.0, 201);
  for (auto _ : state) benchmark::DoNotOptimize(velocity_grid(psi, spec));
}
BENCHMARK(BM_PositionVelocityGrid)->Unit(benchmark::kMillisecond);

void BM_GenericPoint(benchmark::State& state) {
  const auto pulse = canonical_pulse(0.4);
  const QuadratureSpec q{1024, 64, 0.0, 1e-11};
  for (auto _ : state) benchmark::DoNotOptimize(psi_momentum_generic({1.333, 0.444}, 5.0, pulse, q));
}
BENCHMARK(BM_GenericPoint)->Unit(benchmark::kMicrosecond);

void BM_ScanVortices(benchmark::State& state) {
  const auto psi = Wavefunction::momentum(MomentumWavefunctionKind::ExactClosedForm, 5.0, 0.4);
  for (auto _ : state) benchmark::DoNotOptimize(scan_vortices(psi, GridSpec{}));
}
BENCHMARK(BM_ScanVortices)->Unit(benchmark::kMillisecond);

void BM_MomentumMoments(benchmark::State& state) {
  const QuadratureSpec q{256, 64, 0.0, 1e-7};
  for (auto _ : state) benchmark::DoNotOptimize(momentum_moments_numeric(5.0, 0.4, q));
}
BENCHMARK(BM_MomentumMoments)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
