#include <benchmark/benchmark.h>

#include "qalab/corpus.hpp"
#include "qalab/minimax.hpp"

namespace {

const qalab::IntervalDomain kUnit(-1.0, 1.0);

void BM_PolyRemez(benchmark::State& state, const char* name) {
  const auto f = qalab::make_named(name);
  const int n = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(qalab::poly_best_approx(f, kUnit, n, 1e-6).error);
}

void BM_Rational(benchmark::State& state, const char* name) {
  const auto f = qalab::make_named(name);
  const int n = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(qalab::rat_best_approx(f, kUnit, n, 1e-6).error);
}

}  // namespace

BENCHMARK_CAPTURE(BM_PolyRemez, runge, "runge")->Arg(8)->Arg(16)->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(BM_PolyRemez, absval, "absval")->Arg(8)->Arg(16)->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(BM_Rational, runge, "runge")->Arg(4)->Arg(8)->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(BM_Rational, absval, "absval")->Arg(4)->Arg(8)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
