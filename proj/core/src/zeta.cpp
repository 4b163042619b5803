#include "symlat/zeta.hpp"

#include <cmath>

#include "symlat/error.hpp"

namespace symlat {

namespace {

// B_2, B_4, ..., B_26.
constexpr double bernoulli_even[] = {1.0 / 6,          -1.0 / 30,          1.0 / 42,        -1.0 / 30,
                                     5.0 / 66,         -691.0 / 2730,      7.0 / 6,         -3617.0 / 510,
                                     43867.0 / 798,    -174611.0 / 330,    854513.0 / 138,  -236364091.0 / 2730,
                                     8553103.0 / 6};
constexpr int max_bernoulli_terms = 12;

}  // namespace

ZetaValue zeta_em(double s, int head_terms, int bernoulli_terms) {
  require(s > 1.0, "zeta_em: requires s > 1");
  require(head_terms >= 1, "zeta_em: head_terms must be positive");
  require(bernoulli_terms >= 0 && bernoulli_terms <= max_bernoulli_terms, "zeta_em: too many Bernoulli terms");
  const double N = head_terms;
  double sum = 0.0;
  for (int k = head_terms - 1; k >= 1; --k) sum += std::pow(static_cast<double>(k), -s);
  sum += std::pow(N, 1.0 - s) / (s - 1.0) + 0.5 * std::pow(N, -s);

  // term_j = B_{2j}/(2j)! * s(s+1)...(s+2j-2) * N^{-s-2j+1}
  double rising = s;          // s (s+1) ... (s+2j-2)
  double fact = 2.0;          // (2j)!
  double npow = std::pow(N, -s - 1.0);
  double tail = 0.0;
  ZetaValue z;
  for (int j = 1; j <= bernoulli_terms + 1; ++j) {
    const double term = bernoulli_even[j - 1] / fact * rising * npow;
    if (j > bernoulli_terms) {
      z.error_bound = std::fabs(term);  // first omitted term bounds the remainder for real s
      break;
    }
    tail += term;
    rising *= (s + 2.0 * j - 1.0) * (s + 2.0 * j);
    fact *= (2.0 * j + 1.0) * (2.0 * j + 2.0);
    npow /= N * N;
  }
  z.value = sum + tail;
  return z;
}

}  // namespace symlat
