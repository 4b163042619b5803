#include <benchmark/benchmark.h>

#include "symlat/orbits.hpp"

using namespace symlat;

static void BM_ReducePair(benchmark::State& state) {
  std::mt19937_64 rng(1);
  const std::size_t n = static_cast<std::size_t>(state.range(0));
  std::vector<PrimitivePair> pairs;
  for (int i = 0; i < 256; ++i) {
    const auto p = random_primitive_pair(n, 5, rng);
    pairs.push_back(p.transformed(random_symplectic_word(n, 8, rng).matrix()));
  }
  std::size_t i = 0;
  for (auto _ : state) benchmark::DoNotOptimize(reduce_pair(pairs[i++ % pairs.size()]));
}
BENCHMARK(BM_ReducePair)->Arg(2)->Arg(3);

static void BM_SameOrbit(benchmark::State& state) {
  std::mt19937_64 rng(2);
  const auto p = random_primitive_pair(2, 4, rng);
  const auto q = p.transformed(random_symplectic_word(2, 10, rng).matrix());
  for (auto _ : state) benchmark::DoNotOptimize(same_orbit(p, q));
}
BENCHMARK(BM_SameOrbit);
