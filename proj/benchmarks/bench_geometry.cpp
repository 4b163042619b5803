#include <benchmark/benchmark.h>

#include "symlat/geometry.hpp"

using namespace symlat;

static void BM_GIntegral(benchmark::State& state) {
  QuadratureOptions opt;
  opt.samples = 10000;
  const auto B = RegionSpec::ball(static_cast<std::size_t>(state.range(0)), 2.0);
  for (auto _ : state) benchmark::DoNotOptimize(G_integral(1.0, B, opt));
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(opt.samples));
}
BENCHMARK(BM_GIntegral)->Arg(1)->Arg(2)->Unit(benchmark::kMillisecond);

static void BM_DiscClosedForm(benchmark::State& state) {
  double s = 0.1;
  for (auto _ : state) {
    benchmark::DoNotOptimize(disc_G_tilde(s, 3.0));
    s = s < 8.0 ? s + 0.37 : 0.1;
  }
}
BENCHMARK(BM_DiscClosedForm);

static void BM_ConditionIntegral(benchmark::State& state) {
  QuadratureOptions opt;
  opt.samples = 10000;
  const auto B = RegionSpec::ball(1, 8.0);
  for (auto _ : state) benchmark::DoNotOptimize(condition_integral(B, 0.5, opt));
}
BENCHMARK(BM_ConditionIntegral)->Unit(benchmark::kMillisecond);
