#include <benchmark/benchmark.h>

#include "qalab/potential.hpp"

namespace {

void BM_LejaPoints(benchmark::State& state) {
  const auto K = qalab::CompactSet1D::interval(-1.0, 1.0);
  const int n = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(qalab::leja_points(K, n).size());
}

void BM_LogCapacityTwoIntervals(benchmark::State& state) {
  const qalab::CompactSet1D K({qalab::IntervalDomain(-1.0, -0.5), qalab::IntervalDomain(0.5, 1.0)});
  const int n = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(qalab::log_capacity(K, n));
}

void BM_TauCapacity(benchmark::State& state) {
  const auto K = qalab::CompactSet1D::interval(-1.0, 1.0);
  const int n = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(qalab::tau_capacity(K, 2.0, n).tau);
}

}  // namespace

BENCHMARK(BM_LejaPoints)->Arg(100)->Arg(200)->Arg(400)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_LogCapacityTwoIntervals)->Arg(200)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_TauCapacity)->Arg(6)->Arg(12)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
