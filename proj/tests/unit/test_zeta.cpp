#include <cmath>

#include "doctest.h"
#include "oracles.hpp"
#include "symlat/error.hpp"
#include "symlat/zeta.hpp"

using namespace symlat;

TEST_SUITE("zeta") {

TEST_CASE("even values against closed forms") {
  CHECK(zeta(2.0) == doctest::Approx(oracle::zeta2).epsilon(1e-15));
  CHECK(zeta(4.0) == doctest::Approx(oracle::zeta4).epsilon(1e-15));
  CHECK(zeta(6.0) == doctest::Approx(oracle::zeta6).epsilon(1e-15));
  CHECK(zeta(3.0) == doctest::Approx(oracle::zeta3).epsilon(1e-15));
  CHECK(zeta(5.0) == doctest::Approx(oracle::zeta5).epsilon(1e-15));
}

TEST_CASE("real arguments against the standard library") {
  for (double s = 1.1; s < 30; s += 0.37) {
    const auto z = zeta_em(s);
    CHECK(z.value == doctest::Approx(std::riemann_zeta(s)).epsilon(1e-13));
    CHECK(z.error_bound < 1e-14 * z.value);
  }
}

TEST_CASE("pole is rejected") { CHECK_THROWS_AS(zeta(1.0), InputError); }

}  // TEST_SUITE
