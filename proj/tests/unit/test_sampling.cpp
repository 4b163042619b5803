#include "doctest.h"
#include "oracles.hpp"
#include "symlat/montecarlo.hpp"
#include "symlat/sampling.hpp"
#include "symlat/stats.hpp"

using namespace symlat;

TEST_SUITE("sampling") {

TEST_CASE("exact sampler: symplectic, seeded, on the fundamental domain") {
  Rng a(9, 0), b(9, 0);
  for (int t = 0; t < 1000; ++t) {
    const auto s = sample_lattice_n1(a);
    const auto u = sample_lattice_n1(b);
    CHECK(s.g == u.g);
    CHECK(is_symplectic(s.g.matrix()).residual < 1e-9);
    CHECK(s.height >= std::sqrt(3.0) / 2.0);
    CHECK(s.provenance == Provenance::exact_haar_n1);
  }
}

TEST_CASE("mean of 1/y matches the fundamental-domain quadrature") {
  Rng rng(2024, 0);
  std::vector<double> inv;
  for (int t = 0; t < 100000; ++t) inv.push_back(1.0 / sample_lattice_n1(rng).height);
  const auto m = Moments::of(inv);
  CHECK(std::fabs(m.mean - oracle::modular_mean_inv_y) < 3.0 * m.std_error);
}

TEST_CASE("height strata partition the measure") {
  CHECK(n1_height_tail(0.5) == 1.0);
  CHECK(n1_height_tail(std::sqrt(3.0) / 2.0) == doctest::Approx(1.0));
  CHECK(n1_height_tail(1.0) == doctest::Approx(3.0 / std::numbers::pi));
  CHECK(n1_height_tail(0.95) > n1_height_tail(1.0));
  // Empirical tail frequency against the closed form.
  Rng rng(5, 1);
  int above = 0;
  const int N = 200000;
  for (int t = 0; t < N; ++t) above += sample_lattice_n1(rng).height >= 0.93;
  const double p = n1_height_tail(0.93);
  CHECK(std::fabs(above / double(N) - p) < 4.0 * std::sqrt(p * (1 - p) / N));
  Rng r2(5, 2);
  for (int t = 0; t < 1000; ++t) {
    const double y = sample_lattice_n1(r2, 4.0, 16.0).height;
    CHECK(y >= 4.0);
    CHECK(y < 16.0);
  }
}

TEST_CASE("Siegel-set sampler") {
  Rng a(3, 0), b(3, 0);
  for (std::size_t n : {2, 3})
    for (int t = 0; t < 200; ++t) {
      const auto s = sample_lattice_siegel(n, a);
      CHECK(s.g == sample_lattice_siegel(n, b).g);
      CHECK(is_symplectic(s.g.matrix()).residual < 1e-9);
      CHECK(s.provenance == Provenance::siegel_approx);
      CHECK(s.height >= siegel_min_height);
    }
  CHECK_THROWS_AS(sample_lattice_siegel(1, a), InputError);
}

TEST_CASE("Siegel-set sampler mean count is within 10% (n = 2)") {
  MonteCarloOptions o;
  o.samples = 400;
  o.seed = 77;
  const auto r = mean_experiment(2, RegionSpec::ball_with_volume(2, 1000), o);
  CHECK(std::fabs(r.aggregate_double("ratio") - 1.0) < 0.10);
}

TEST_CASE("indexed streams and cone scale") {
  const auto s = sample_indexed(1, 5, 17, true);
  CHECK(s.nu > 0);
  CHECK(s.nu <= 1);
  CHECK(s.index == 17);
  CHECK(sample_indexed(1, 5, 17, true).g == s.g);
  CHECK_FALSE(sample_indexed(1, 5, 18, true).g == s.g);
  CHECK(sample_indexed(1, 5, 17, false).nu == 1.0);
  const auto b = s.basis();
  CHECK(std::fabs(determinant(b) - s.nu) < 1e-12);
}

}  // TEST_SUITE
