#include <benchmark/benchmark.h>

#include <vector>

#include "qalab/corpus.hpp"
#include "qalab/probe.hpp"

namespace {

const qalab::IntervalDomain kUnit(-1.0, 1.0);

qalab::ProbeLayers gonchar_layers() {
  std::vector<qalab::RationalApproximant> approx;
  for (int k = 2; k <= 4; ++k)
    approx.push_back(qalab::lacunary_partial_sum_approximant(qalab::LacunaryRule::Gonchar, k, kUnit));
  return qalab::ProbeLayers(approx, 1.265625);
}

void BM_ProbeStream(benchmark::State& state) {
  const auto layers = gonchar_layers();
  const auto grid = qalab::GridC2::square(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(qalab::probe_stream(layers, grid).exceptional_count);
  state.SetItemsProcessed(static_cast<long>(state.iterations() * grid.size()));
}

void BM_MaterializedField(benchmark::State& state) {
  const auto layers = gonchar_layers();
  const auto grid = qalab::GridC2::square(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) {
    auto field = qalab::build_u_fields(layers, grid);
    qalab::upper_envelope(field, 1);
    qalab::usc_regularize(field);
    benchmark::DoNotOptimize(field.u_star.data());
  }
  state.SetItemsProcessed(static_cast<long>(state.iterations() * grid.size()));
}

}  // namespace

BENCHMARK(BM_ProbeStream)->Arg(16)->Arg(32)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_MaterializedField)->Arg(16)->Arg(24)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
