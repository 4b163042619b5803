#pragma once

namespace symlat {

struct ZetaValue {
  double value = 0.0;
  double error_bound = 0.0;  // bound on the Euler-Maclaurin remainder
};

// Riemann zeta for real s > 1 by Euler-Maclaurin summation.
ZetaValue zeta_em(double s, int head_terms = 10, int bernoulli_terms = 12);

inline double zeta(double s) { return zeta_em(s).value; }

}  // namespace symlat
