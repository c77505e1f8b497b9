#include <benchmark/benchmark.h>

#include <vector>

#include "omit/lorentzian_fit.hpp"

namespace {

void BM_LorentzianFit(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  std::vector<double> x(n), y(n);
  for (std::size_t i = 0; i < n; ++i) {
    x[i] = -10.0 + 20.0 * static_cast<double>(i) / static_cast<double>(n - 1);
    y[i] = omit::lorentzian(x[i], 0.4, 1.7, 0.6, 1.0);
  }
  for (auto _ : state) benchmark::DoNotOptimize(omit::fit_lorentzian(x, y));
}
BENCHMARK(BM_LorentzianFit)->Arg(201)->Arg(2001);

}  // namespace
