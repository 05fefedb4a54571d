//
// ... Standard header files
//
#include <cmath>

//
// ... Third party header files
//
#include <benchmark/benchmark.h>

//
// ... shqr header files
//
#include "shqr/hessenberg.hpp"
#include "shqr/shqr.hpp"

using namespace shqr;

namespace {

  HessenbergMatrix make_h(std::size_t n, std::uint64_t seed) {
    Rng rng(seed);
    DenseMatrix<double> a(n, n);
    const double s = 1.0 / std::sqrt(2.0 * static_cast<double>(n));
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) a(i, j) = Cplx(standard_normal(rng) * s, standard_normal(rng) * s);
    return householder_hessenberg(a);
  }

  GlobalData bench_globals(const HessenbergMatrix& h) {
    return make_global_data(1.0, 1e-3, 2.0 * frobenius_norm(h.dense()), h.n());
  }

} // namespace

static void BM_IqrSingle(benchmark::State& state) {
  const HessenbergMatrix h = make_h(static_cast<std::size_t>(state.range(0)), 1);
  for (auto _ : state) benchmark::DoNotOptimize(iqr_single(h, Cplx(0.1, 0.2)));
}
BENCHMARK(BM_IqrSingle)->Arg(32)->Arg(128);

static void BM_CompTau(benchmark::State& state) {
  const HessenbergMatrix h = make_h(static_cast<std::size_t>(state.range(0)), 2);
  const ShiftList<double> p = ShiftList<double>::repeated(Cplx(0.1, 0.2), 4);
  for (auto _ : state) benchmark::DoNotOptimize(comp_tau_checked(h, p));
}
BENCHMARK(BM_CompTau)->Arg(32)->Arg(128);

static void BM_ShStep(benchmark::State& state) {
  const HessenbergMatrix h = make_h(32, 3);
  const GlobalData g = bench_globals(h);
  Rng rng(4);
  const auto rod = ritz_or_decouple(h, 1e-30, 0.01, g, AberthSolver(), rng);
  for (auto _ : state) benchmark::DoNotOptimize(sh_step(h, rod.ritz_values, 1e-30, g, rng));
}
BENCHMARK(BM_ShStep);

static void BM_ShiftedQr(benchmark::State& state) {
  const HessenbergMatrix h = make_h(32, 5);
  const GlobalData g = bench_globals(h);
  std::uint64_t seed = 6;
  for (auto _ : state) benchmark::DoNotOptimize(shifted_qr(h, 1e-8, 0.01, g, AberthSolver(), seed++));
}
BENCHMARK(BM_ShiftedQr)->Unit(benchmark::kMillisecond);
BENCHMARK_MAIN();
