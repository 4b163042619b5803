#include <benchmark/benchmark.h>

#include "symlat/arithmetic.hpp"

using namespace symlat;

static void BM_ArithmeticTable(benchmark::State& state) {
  const auto max = static_cast<std::uint64_t>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(ArithmeticTable(2, max).summatory_rational(max));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_ArithmeticTable)->Arg(10000)->Arg(1000000)->Unit(benchmark::kMillisecond);

static void BM_LfunCheck(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(lfun_check(2, 5.0, 100000));
}
BENCHMARK(BM_LfunCheck)->Unit(benchmark::kMillisecond);

static void BM_SpOrderBrute(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(sp_order_brute(2, 2));
}
BENCHMARK(BM_SpOrderBrute)->Unit(benchmark::kMillisecond);
