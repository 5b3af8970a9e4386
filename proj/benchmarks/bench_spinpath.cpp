// Copyright 2026 The spinpath Authors
// SPDX-License-Identifier: Apache-2.0

#include <benchmark/benchmark.h>

#include <spinpath/spinpath.hpp>

using namespace spinpath;

namespace {

void BM_Philox(benchmark::State& state) {
  PhiloxNormalStream s(7, 3);
  double a = 0.0, b = 0.0;
  std::uint32_t k = 0;
  for (auto _ : state) {
    s.normal_pair(k++, a, b);
    benchmark::DoNotOptimize(a + b);
  }
}
BENCHMARK(BM_Philox);

void BM_Reconstruct(benchmark::State& state) {
  const double j = 0.5 * state.range(0);
  const SymbolFn h = table_symbol("J3^2", j);
  const PlanarQuadrature q = PlanarQuadrature::for_spin(j);
  for (auto _ : state) benchmark::DoNotOptimize(reconstruct_operator(h, j, q));
}
BENCHMARK(BM_Reconstruct)->Arg(1)->Arg(4)->Arg(10);

void BM_MatExp(benchmark::State& state) {
  const SpinSystem s = build_spin_system(0.5 * state.range(0));
  const CMatrix H = s.j3 + 0.3 * (s.j_plus + s.j_minus);
  for (auto _ : state) benchmark::DoNotOptimize(mat_exp(H, -0.5));
}
BENCHMARK(BM_MatExp)->Arg(1)->Arg(8)->Arg(40);

void BM_EstimateKernel(benchmark::State& state) {
  const SymbolFn h = table_symbol("J3", 0.5);
  const int m = static_cast<int>(state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(estimate_kernel(h, 0.5, 0.5, 0.2, cplx(-0.1, 0.3), 1.0, 1000, m, 1));
  }
  state.SetItemsProcessed(state.iterations() * 1000LL * m);
}
BENCHMARK(BM_EstimateKernel)->Arg(64)->Arg(256)->Unit(benchmark::kMillisecond);

void BM_AssembleR(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(assemble_R(1.0, 12.0, n));
}
BENCHMARK(BM_AssembleR)->Arg(97)->Arg(193)->Unit(benchmark::kMillisecond);

void BM_LowSpectrum(benchmark::State& state) {
  const MagneticOperator op = assemble_R(0.5, 12.0, static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(low_spectrum(op, 6));
}
BENCHMARK(BM_LowSpectrum)->Arg(97)->Unit(benchmark::kMillisecond)->Iterations(2);

}  // namespace

BENCHMARK_MAIN();
