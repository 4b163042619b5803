#include <random>

#include "doctest.h"
#include "helpers.hpp"
#include "oracles.hpp"
#include "symlat/geometry.hpp"
#include "symlat/zeta.hpp"

using namespace symlat;
using testing_support::random_vec;

namespace {

QuadratureOptions quad(std::uint64_t samples, std::uint64_t seed) {
  QuadratureOptions q;
  q.samples = samples;
  q.seed = seed;
  return q;
}

bool within(const Estimate& e, double target, double k = 3.0) {
  return std::fabs(e.value - target) <= k * e.std_error + 1e-12 * std::fabs(target);
}

bool agree(const Estimate& a, const Estimate& b, double k = 3.0) {
  return std::fabs(a.value - b.value) <= k * std::hypot(a.std_error, b.std_error);
}

}  // namespace

TEST_SUITE("geometry") {

TEST_CASE("frame at e1") {
  const auto f = frame_at(Vec<double>{1, 0, 0, 0});
  CHECK(f.y_star == Vec<double>{0, 0, 1, 0});
  REQUIRE(f.ys.size() == 3);
  CHECK(f.ys[0] == Vec<double>{1, 0, 0, 0});
  CHECK(f.ys[1] == Vec<double>{0, 1, 0, 0});
  CHECK(f.ys[2] == Vec<double>{0, 0, 0, 1});
}

TEST_CASE("frame invariants on random points") {
  std::mt19937_64 rng(41);
  for (std::size_t n : {1, 2, 3})
    for (int t = 0; t < 1000; ++t) {
      const auto x = random_vec(2 * n, rng, 3.0);
      const auto f = frame_at(x);
      CHECK(symplectic_form(x, f.y_star) == doctest::Approx(1.0).epsilon(1e-9));
      for (const auto& y : f.ys) CHECK(std::fabs(symplectic_form(x, y)) < 1e-9);
      std::vector<Vec<double>> cols{f.y_star};
      cols.insert(cols.end(), f.ys.begin(), f.ys.end());
      CHECK(std::fabs(std::fabs(determinant(Matrix<double>::from_columns(cols))) - 1.0) < 1e-6);
      Vec<double> tt(2 * n - 1);
      for (auto& v : tt) v = std::uniform_real_distribution<double>(-5, 5)(rng);
      Vec<double> y = f.y_star;
      for (std::size_t i = 0; i < tt.size(); ++i)
        for (std::size_t k = 0; k < 2 * n; ++k) y[k] += tt[i] * f.ys[i][k];
      CHECK(symplectic_form(x, y) == doctest::Approx(1.0).epsilon(1e-9));
    }
  CHECK_THROWS_AS(frame_at(Vec<double>{0, 0}), InputError);
}

TEST_CASE("disc closed forms against the radial oracle") {
  for (const auto& c : oracle::disc_G_frozen) {
    CHECK(disc_G_exact(c.s, c.R) == doctest::Approx(c.value).epsilon(1e-9));
    CHECK(oracle::disc_G(c.s, c.R) == doctest::Approx(c.value).epsilon(1e-7));
  }
  for (const auto& c : oracle::disc_G_tilde_frozen) {
    CHECK(disc_G_tilde(c.s, c.R) == doctest::Approx(c.value).epsilon(1e-9));
    CHECK(oracle::disc_G_tilde(c.s, c.R) == doctest::Approx(c.value).epsilon(1e-6));
  }
  // For s beyond R^2 only the moment survives.
  CHECK(disc_G_tilde(50.0, 2.0) == doctest::Approx(disc_G_moment(4.0, 2.0) / 2500.0).epsilon(1e-12));
  CHECK(disc_G_moment(4.0, 2.0) == doctest::Approx(4.0 * std::numbers::pi * 64.0 / 9.0).epsilon(1e-12));
}

TEST_CASE("Monte Carlo G on the disc") {
  const auto B = RegionSpec::ball(1, 2.0);
  for (double s : {0.5, 1.0, 2.5}) {
    const auto e = G_integral(s, B, quad(200000, 3));
    CHECK(within(e, oracle::disc_G(s, 2.0)));
  }
  const auto t = G_tilde(2.0, B, quad(200000, 4));
  CHECK(within(t, oracle::disc_G_tilde(2.0, 2.0)));
}

TEST_CASE("support vanishes beyond circumradius squared") {
  for (const auto& B : {RegionSpec::ball(2, 1.5), parse_region("box:w=1,0.5,2,1", 2)}) {
    const double r2 = B.circumradius() * B.circumradius();
    const auto e = G_integral(r2 * 1.01, B, quad(20000, 5));
    CHECK(e.value == 0.0);
    CHECK(e.std_error == 0.0);
  }
  CHECK_THROWS_AS(G_integral(0.0, RegionSpec::ball(1, 1), quad(10, 1)), InputError);
  CHECK_THROWS_AS(G_tilde(0.0, RegionSpec::ball(1, 1), quad(10, 1)), InputError);
}

TEST_CASE("sign symmetry, section independence and symplectic invariance") {
  const auto B = RegionSpec::ball(2, 1.5);
  for (double s : {0.3, 1.0}) {
    CHECK(agree(G_integral(s, B, quad(100000, 6)), G_integral(-s, B, quad(100000, 7))));
    auto rev = quad(100000, 8);
    rev.order = CompletionOrder::reverse;
    CHECK(agree(G_integral(s, B, quad(100000, 9)), G_integral(s, B, rev)));
  }
  Matrix<double> S{{0.7, 0.2}, {0.2, -0.4}};
  const auto g = make_generator(GeneratorKind::upper, S) *
                 make_generator(GeneratorKind::block_diag, Matrix<double>{{1.5, 0.3}, {0, 1.0 / 1.5}});
  const auto E = RegionSpec::ellipsoid(g, 1.5);
  CHECK(agree(G_integral(0.8, B, quad(100000, 10)), G_integral(0.8, E, quad(100000, 11))));
}

TEST_CASE("Fubini closure") {
  const auto B = RegionSpec::ball(1, 2.0);
  const auto rep = fubini_check(B, 4001, quad(1, 1));
  CHECK(rep.relative_error < 1e-3);
  const auto box = parse_region("box:w=1,1.5", 1);
  const auto mc = fubini_check(box, 120, quad(20000, 12), false);
  CHECK_THROWS_AS(fubini_check(box, 121, quad(10, 1), false), InputError);
  CHECK(std::fabs(mc.integral - mc.volume_squared) <= 3.0 * mc.std_error + 0.01 * mc.volume_squared);
}

TEST_CASE("condition integral") {
  // All pairings are at most R^2 < 1, so the kernel is identically 1.
  const auto small = RegionSpec::ball(1, 0.9);
  const auto e = condition_integral(small, 0.5, quad(10000, 13));
  CHECK(e.value == doctest::Approx(small.volume() * small.volume()).epsilon(1e-12));
  CHECK_THROWS_AS(condition_integral(small, 2.0, quad(10, 1)), InputError);
  const auto big = RegionSpec::ball(1, 8);
  const auto c = condition_integral(big, 0.5, quad(50000, 14));
  CHECK(c.value < big.volume() * big.volume());
}

TEST_CASE("kernel bound check") {
  const auto S = RegionSpec::ball(1, 1);
  const auto r = kernel_bound_check(S, S, 0.5, quad(20000, 15));
  CHECK(std::isfinite(r.value));
  // |<x,y>| <= 1 on the unit ball, so the ratio is m(B)^{delta/2n}.
  CHECK(r.value == doctest::Approx(std::pow(std::numbers::pi, 0.25)).epsilon(1e-12));
  CHECK_THROWS_AS(kernel_bound_check(RegionSpec::ball(1, 1), RegionSpec::ball(1, 2), 0.5, quad(10, 1)),
                  InputError);
}

TEST_CASE("dependent pairs") {
  const auto B = RegionSpec::ball(1, 3.0);
  const double v = B.volume();
  CHECK(dependent_pairs_term(B, 1, KLConvention::coprime_nonzero).value == doctest::Approx(4 * v));
  CHECK(dependent_pairs_term(B, 1, KLConvention::coprime_positive).value == doctest::Approx(v));
  CHECK(dependent_pairs_term(B, 1, KLConvention::primitive_pm).value == doctest::Approx(2 * v / oracle::zeta2));
  const auto B2 = B.scaled(std::sqrt(2.0));
  for (auto c : {KLConvention::primitive_pm, KLConvention::coprime_nonzero})
    CHECK(dependent_pairs_term(B2, 16, c).value == doctest::Approx(2 * dependent_pairs_term(B, 16, c).value));
  const auto a = dependent_pairs_term(RegionSpec::ball(2, 1.0), 10, KLConvention::coprime_positive);
  const auto b = dependent_pairs_term(RegionSpec::ball(2, 1.0), 11, KLConvention::coprime_positive);
  CHECK(b.value - a.value <= a.tail_bound);
  CHECK(parse_kl_convention(to_string(KLConvention::coprime_positive)) == KLConvention::coprime_positive);
  CHECK_THROWS_AS(parse_kl_convention("all"), InputError);
}

}  // TEST_SUITE
