#include <benchmark/benchmark.h>

#include "symlat/montecarlo.hpp"

using namespace symlat;

static void BM_SiegelCount(benchmark::State& state) {
  const auto method = state.range(1) == 0 ? CountMethod::interval : CountMethod::enumerate;
  const auto B = RegionSpec::ball_with_volume(1, static_cast<double>(state.range(0)));
  std::vector<LatticeSample> samples;
  for (std::uint64_t i = 0; i < 64; ++i) samples.push_back(sample_indexed(1, 3, i, false));
  std::size_t i = 0;
  for (auto _ : state) benchmark::DoNotOptimize(siegel_count(samples[i++ % samples.size()], B, true, method));
}
BENCHMARK(BM_SiegelCount)->Args({1000, 0})->Args({1000, 1})->Args({100000, 0})->Args({100000, 1});

static void BM_SiegelCountN2(benchmark::State& state) {
  const auto B = RegionSpec::ball_with_volume(2, static_cast<double>(state.range(0)));
  std::vector<LatticeSample> samples;
  for (std::uint64_t i = 0; i < 16; ++i) samples.push_back(sample_indexed(2, 3, i, false));
  std::size_t i = 0;
  for (auto _ : state) benchmark::DoNotOptimize(siegel_count(samples[i++ % samples.size()], B, true));
}
BENCHMARK(BM_SiegelCountN2)->Arg(100)->Arg(1000)->Unit(benchmark::kMicrosecond);
