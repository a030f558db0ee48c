#include <benchmark/benchmark.h>

#include <vector>

#include "catseye/laminar.hpp"
#include "catseye/reconstruct.hpp"
#include "catseye/reduced.hpp"
#include "catseye/spectrum.hpp"

using namespace catseye;

namespace {

const ReducedModel& model() {
  static const ReducedModel m = build_model(compute_spectrum(stream_solution(-0.06, 0.025)));
  return m;
}

// Argument is 1000 * ell / L; the cost of the quadrature grows near the saddle.
void BM_HalfPeriod(benchmark::State& state) {
  const auto& m = model();
  const double ell = state.range(0) / 1000.0 * m.L;
  for (auto _ : state) benchmark::DoNotOptimize(half_period(ell, m));
}
BENCHMARK(BM_HalfPeriod)->Arg(100)->Arg(500)->Arg(900)->Arg(990)->Arg(999);

void BM_IntegratedHalfPeriod(benchmark::State& state) {
  const auto& m = model();
  const double ell = state.range(0) / 1000.0 * m.L;
  for (auto _ : state) benchmark::DoNotOptimize(integrated_half_period(ell, m, 1e-10));
}
BENCHMARK(BM_IntegratedHalfPeriod)->Arg(500)->Arg(990);

void BM_ShootHomoclinic(benchmark::State& state) {
  const auto& m = model();
  for (auto _ : state) benchmark::DoNotOptimize(shoot_homoclinic(m, 1e-10));
}
BENCHMARK(BM_ShootHomoclinic);

void BM_SamplePeriodicOrbit(benchmark::State& state) {
  const auto& m = model();
  const double ell = 0.9 * m.L;
  const double sigma = half_period(ell, m);
  std::vector<double> x1(static_cast<std::size_t>(state.range(0)));
  for (std::size_t i = 0; i < x1.size(); ++i) x1[i] = -sigma + 2.0 * sigma * i / x1.size();
  for (auto _ : state) benchmark::DoNotOptimize(sample_periodic_orbit(ell, m, x1));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_SamplePeriodicOrbit)->RangeMultiplier(4)->Range(64, 4096);

void BM_ComputeSpectrum(benchmark::State& state) {
  const auto flow = stream_solution(-0.06, 0.025);
  for (auto _ : state) benchmark::DoNotOptimize(compute_spectrum(flow, static_cast<std::size_t>(state.range(0))));
}
BENCHMARK(BM_ComputeSpectrum)->Arg(5)->Arg(20);

}  // namespace
