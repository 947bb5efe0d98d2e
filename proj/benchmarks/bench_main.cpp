// Microbenchmarks for the hot paths: spectral transforms, full and truncated
// operator application, the maximal sweeps, the Orlicz-norm bisection, the
// half-integer kernel evaluation, and the exact algebra.
#include <benchmark/benchmark.h>

#include <cstdint>
#include <vector>

#include "czsi/algebra.hpp"
#include "czsi/bessel.hpp"
#include "czsi/grid.hpp"
#include "czsi/kernels.hpp"
#include "czsi/operators.hpp"

namespace {

czsi::GridField test_field(int dim, double side, int n, std::uint64_t seed) {
  const czsi::Grid g = czsi::Grid::make(dim, side, n);
  return czsi::sample(czsi::BandLimitedDesc{seed, 8, 1.0}, g);
}

void bm_dft_roundtrip_2d(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const czsi::GridField f = test_field(2, 16.0, n, 11);
  for (auto _ : state) {
    czsi::GridField back = czsi::dft_inverse(czsi::dft_forward(f));
    benchmark::DoNotOptimize(back.values.data());
  }
  state.SetComplexityN(n);
}
BENCHMARK(bm_dft_roundtrip_2d)->Arg(128)->Arg(256)->Arg(512)->Complexity();

void bm_apply_full(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const czsi::KernelSpec spec = czsi::KernelSpec::lambda_family(czsi::Rat(1, 2));
  const czsi::GridField f = test_field(2, 16.0, n, 12);
  for (auto _ : state) {
    czsi::GridField out = czsi::apply_full(spec, f);
    benchmark::DoNotOptimize(out.values.data());
  }
}
BENCHMARK(bm_apply_full)->Arg(128)->Arg(256)->Arg(512);

void bm_apply_truncated_field(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const czsi::KernelSpec spec = czsi::KernelSpec::second_order_2d();
  const czsi::GridField f = test_field(2, 16.0, n, 13);
  for (auto _ : state) {
    czsi::GridField out = czsi::apply_truncated_field(spec, f, 0.5);
    benchmark::DoNotOptimize(out.values.data());
  }
}
BENCHMARK(bm_apply_truncated_field)->Arg(128)->Arg(256);

void bm_maximal_sweep(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const czsi::Grid g = czsi::Grid::make(2, 16.0, n);
  const czsi::KernelSpec spec = czsi::KernelSpec::second_order_2d();
  const czsi::GridField f = czsi::sample(czsi::BandLimitedDesc{14, 8, 1.0}, g);
  const czsi::TruncationConfig cfg = czsi::TruncationConfig::dyadic(g);
  for (auto _ : state) {
    czsi::GridField out = czsi::apply_maximal_field(spec, f, cfg);
    benchmark::DoNotOptimize(out.values.data());
  }
}
BENCHMARK(bm_maximal_sweep)->Arg(128)->Arg(256);

void bm_hl_maximal_field(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const czsi::Grid g = czsi::Grid::make(2, 16.0, n);
  const czsi::GridField f = czsi::sample(czsi::BandLimitedDesc{15, 8, 1.0}, g);
  const czsi::MaximalConfig cfg = czsi::MaximalConfig::dyadic(g);
  for (auto _ : state) {
    czsi::GridField out = czsi::hl_maximal_field(f, cfg);
    benchmark::DoNotOptimize(out.values.data());
  }
}
BENCHMARK(bm_hl_maximal_field)->Arg(256)->Arg(512);

void bm_llogl_norm(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  std::vector<double> cells(static_cast<size_t>(n));
  for (int i = 0; i < n; ++i)
    cells[static_cast<size_t>(i)] = 1.0 + 0.5 * ((i * 2654435761u) % 97);
  for (auto _ : state) {
    benchmark::DoNotOptimize(czsi::llogl_norm(cells));
  }
}
BENCHMARK(bm_llogl_norm)->Arg(256)->Arg(4096);

void bm_bessel_g(benchmark::State& state) {
  double r = 0.0;
  for (auto _ : state) {
    r += 1e-3;
    if (r > 40.0) r = 0.0;
    benchmark::DoNotOptimize(czsi::bessel_G(3, r));
  }
}
BENCHMARK(bm_bessel_g);

void bm_division_condition(benchmark::State& state) {
  const czsi::KernelSpec spec = czsi::KernelSpec::lambda_family(czsi::Rat(1, 2));
  for (auto _ : state) {
    czsi::DivisionReport rep = czsi::division_condition(spec);
    benchmark::DoNotOptimize(rep.holds);
  }
}
BENCHMARK(bm_division_condition);

void bm_factorize(benchmark::State& state) {
  const czsi::KernelSpec spec = czsi::KernelSpec::lambda_family(czsi::Rat(1, 2));
  for (auto _ : state) {
    czsi::Factorization f = czsi::factorize(spec);
    benchmark::DoNotOptimize(f.ok);
  }
}
BENCHMARK(bm_factorize);

}  // namespace

BENCHMARK_MAIN();
