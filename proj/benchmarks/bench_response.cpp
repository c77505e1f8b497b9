#include <benchmark/benchmark.h>

#include "common.hpp"
#include "omit/linear_response.hpp"
#include "omit/sweep.hpp"

namespace {

using namespace omit;

void BM_ClosedForm(benchmark::State& state) {
  const Device d = bench::device();
  const OperatingPoint op = bench::operating_point_at(d, 1e-3);
  double omega = d.mechanics.omega_m;
  for (auto _ : state) {
    benchmark::DoNotOptimize(response_closed_form(op, d, omega));
    omega += 1.0;
  }
}
BENCHMARK(BM_ClosedForm);

void BM_DirectSolve(benchmark::State& state) {
  const Device d = bench::device();
  const OperatingPoint op = bench::operating_point_at(d, 1e-3);
  double omega = d.mechanics.omega_m;
  for (auto _ : state) {
    benchmark::DoNotOptimize(response_direct_solve(op, d, omega));
    omega += 1.0;
  }
}
BENCHMARK(BM_DirectSolve);

void BM_Sweep(benchmark::State& state) {
  SweepSpec spec;
  spec.fixed.device = bench::device();
  spec.fixed.drive.input_power = 0.5e-3;
  spec.fixed.drive.detuning = -spec.fixed.device.mechanics.omega_m;
  spec.grid = cavity_grid(spec.fixed, 4001);
  spec.observables = {Observable::power_transmission, Observable::homodyne_power,
                      Observable::anti_stokes_power};
  const auto threads = static_cast<unsigned>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(run_sweep(spec, threads));
  state.SetItemsProcessed(state.iterations() * static_cast<long>(spec.grid.size()));
}
BENCHMARK(BM_Sweep)->Arg(1)->Arg(4)->Unit(benchmark::kMillisecond);

}  // namespace
