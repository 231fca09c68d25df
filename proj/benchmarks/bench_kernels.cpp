#include <benchmark/benchmark.h>

#include "ckrice/decomposition.hpp"
#include "ckrice/expansions.hpp"
#include "ckrice/special.hpp"
#include "ckrice/zeta.hpp"

namespace {

using namespace ckrice;

const PrecisionContext& ctx50() {
  static const PrecisionContext ctx = context_for_digits(50);
  return ctx;
}

void BM_ZetaOnCriticalLine(benchmark::State& state) {
  const Complex s(Real::from_double(0.5, 200), Real(state.range(0), 200));
  for (auto _ : state) benchmark::DoNotOptimize(zeta_complex(s, ctx50()));
}
BENCHMARK(BM_ZetaOnCriticalLine)->Arg(14)->Arg(100)->Arg(1000)->Unit(benchmark::kMillisecond);

void BM_LogGammaLargeK(benchmark::State& state) {
  const Complex z(Real(state.range(0), 200), Real::from_double(7.0, 200));
  for (auto _ : state) benchmark::DoNotOptimize(log_gamma(z, ctx50()));
}
BENCHMARK(BM_LogGammaLargeK)->Arg(10)->Arg(1'000'000)->Unit(benchmark::kMicrosecond);

void BM_DirectCk(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(direct_ck(state.range(0), ctx50()));
}
BENCHMARK(BM_DirectCk)->Arg(100)->Arg(1000)->Arg(2000)->Unit(benchmark::kMillisecond);

void BM_Trend(benchmark::State& state) {
  ZetaOddTable odd(ctx50().widened(16));
  for (auto _ : state) benchmark::DoNotOptimize(trend_ck(state.range(0), ctx50(), &odd));
}
BENCHMARK(BM_Trend)->Arg(1000)->Arg(1'000'000)->Unit(benchmark::kMicrosecond);

void BM_Decompose(benchmark::State& state) {
  static const Decomposer dec(load_zeros(CKRICE_ZEROS_FILE), 30, ctx50());
  for (auto _ : state) benchmark::DoNotOptimize(dec.decompose(state.range(0)));
}
BENCHMARK(BM_Decompose)->Arg(100'000)->Arg(1'000'000)->Arg(400'000'000)->Unit(benchmark::kMillisecond);

void BM_ResidueHadamard(benchmark::State& state) {
  static const ZeroTable zeros = load_zeros(CKRICE_ZEROS_FILE);
  const PrecisionContext ctx = context_for_digits(25);
  for (auto _ : state) benchmark::DoNotOptimize(residue_hadamard(zeros, 1, state.range(0), ctx));
}
BENCHMARK(BM_ResidueHadamard)->Arg(100)->Arg(2000)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
