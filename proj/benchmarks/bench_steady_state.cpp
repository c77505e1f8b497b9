#include <benchmark/benchmark.h>

#include <cmath>

#include "common.hpp"

namespace {

using namespace omit;

// Red-detuned by three linewidths; state.range(0) selects a single-root or a
// bistable drive.
void BM_SteadyState(benchmark::State& state) {
  const Device d = bench::device();
  const double kappa = d.cavity.kappa();
  const double pull = kHbar * d.coupling.g0 * d.coupling.g0 * d.cavity.eta_c() * kappa /
                      (d.mechanics.m_eff * d.mechanics.omega_m * d.mechanics.omega_m);
  const double scale = state.range(0) == 0 ? 0.01 : 2.0;
  const double flux = scale * std::pow(kappa, 3) / pull;
  for (auto _ : state) benchmark::DoNotOptimize(solve_steady_state(d, -3.0 * kappa, flux));
}
BENCHMARK(BM_SteadyState)->Arg(0)->Arg(1);

}  // namespace
