#include <benchmark/benchmark.h>

#include "toporna/enumeration.hpp"
#include "toporna/genfun.hpp"
#include "toporna/sampler.hpp"

namespace {

using namespace toporna;

TruncatedSeries secondary_series(std::size_t order) {
  GFParams p;
  p.order = order;
  return d0_series(p).value();
}

void BM_MulSerial(benchmark::State& state) {
  const auto f = secondary_series(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(mul_serial(f, f));
}

void BM_MulParallel(benchmark::State& state) {
  const auto f = secondary_series(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(mul_parallel(f, f));
}

void BM_CensusSerial(benchmark::State& state) {
  EnumConfig cfg;
  cfg.execution = Execution::Serial;
  for (auto _ : state) benchmark::DoNotOptimize(census_by_genus(static_cast<int>(state.range(0)), 1, 1, cfg));
}

void BM_CensusParallel(benchmark::State& state) {
  EnumConfig cfg;
  cfg.execution = Execution::Parallel;
  for (auto _ : state) benchmark::DoNotOptimize(census_by_genus(static_cast<int>(state.range(0)), 1, 1, cfg));
}

void BM_GrammarDraws(benchmark::State& state) {
  SampleSpec spec{static_cast<int>(state.range(0)), 1, 1, 1, 1000, 1};
  for (auto _ : state) benchmark::DoNotOptimize(sample_grammar(spec));
}

}  // namespace

BENCHMARK(BM_MulSerial)->Arg(100)->Arg(200)->Arg(400)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_MulParallel)->Arg(100)->Arg(200)->Arg(400)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_CensusSerial)->Arg(10)->Arg(12)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_CensusParallel)->Arg(10)->Arg(12)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_GrammarDraws)->Arg(50)->Arg(100)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
