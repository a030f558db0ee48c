#include <benchmark/benchmark.h>

#include <cmath>

#include "catseye/diagnostics.hpp"
#include "catseye/flattened.hpp"
#include "catseye/flow_force.hpp"
#include "catseye/laminar.hpp"
#include "catseye/reconstruct.hpp"
#include "catseye/reduced.hpp"
#include "catseye/spectrum.hpp"

using namespace catseye;

namespace {

struct Case {
  LaminarFlow flow = stream_solution(-0.06, 0.025);
  EigenData eig = compute_spectrum(flow);
  ReducedModel model = build_model(eig);
};

const Case& periodic_case() {
  static const Case c;
  return c;
}

WaveField guess(std::size_t nx, std::size_t ny) {
  const auto& c = periodic_case();
  return periodic_field(0.5 * c.model.L, c.model, c.eig, c.flow, nx, ny);
}

void BM_ResidualReport(benchmark::State& state) {
  const auto f = guess(static_cast<std::size_t>(state.range(0)), static_cast<std::size_t>(state.range(1)));
  for (auto _ : state) benchmark::DoNotOptimize(residual_report(f));
  state.SetItemsProcessed(state.iterations() * state.range(0) * state.range(1));
}
BENCHMARK(BM_ResidualReport)->Args({128, 32})->Args({256, 48})->Args({512, 96});

// Full Newton solve from the reconstructed leading-order guess.
void BM_NewtonPeriodic(benchmark::State& state) {
  const auto& c = periodic_case();
  const auto f = guess(static_cast<std::size_t>(state.range(0)), static_cast<std::size_t>(state.range(1)));
  for (auto _ : state) benchmark::DoNotOptimize(solve_flattened_periodic(c.flow, f));
}
BENCHMARK(BM_NewtonPeriodic)->Args({64, 16})->Args({128, 32})->Args({256, 48})->Unit(benchmark::kMillisecond);

void BM_FlowForceTrace(benchmark::State& state) {
  const auto f = guess(256, 48);
  for (auto _ : state) benchmark::DoNotOptimize(flow_force_scaled(f));
}
BENCHMARK(BM_FlowForceTrace);

void BM_DiagnoseSolitary(benchmark::State& state) {
  static const Case c{stream_solution(-0.05, 0.005)};
  const auto f = solitary_field(c.model, c.eig, c.flow,
                                {static_cast<std::size_t>(state.range(0)), 64, 30.0});
  for (auto _ : state) benchmark::DoNotOptimize(diagnose(f, std::pow(0.005, -2.0 / 3.0)));
}
BENCHMARK(BM_DiagnoseSolitary)->Arg(401)->Arg(1001)->Unit(benchmark::kMillisecond);

}  // namespace
