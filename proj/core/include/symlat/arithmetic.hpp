#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "symlat/integer.hpp"

namespace symlat {

using u128 = unsigned __int128;

std::string to_string(u128 v);

// Smallest-prime-factor table and Moebius function up to a bound.
class Sieve {
 public:
  explicit Sieve(std::uint32_t limit);
  std::uint32_t limit() const { return limit_; }
  std::uint32_t spf(std::uint32_t k) const { return spf_[k]; }
  int mobius(std::uint32_t k) const { return mu_[k]; }
  const std::vector<std::uint32_t>& primes() const { return primes_; }
  std::vector<std::pair<std::uint64_t, int>> factor(std::uint64_t k) const;

 private:
  std::uint32_t limit_;
  std::vector<std::uint32_t> spf_;
  std::vector<std::int8_t> mu_;
  std::vector<std::uint32_t> primes_;
};

std::vector<std::pair<std::uint64_t, int>> factorize(std::uint64_t k);
std::uint64_t euler_phi(std::uint64_t s);

// X(s) = s^{2m+1} prod_{p|s} (1 - p^{-2m}), m = n - 1.
Int X_func(std::uint64_t s, int n);
// (phi * X)(s) by Dirichlet convolution over the divisors of s.
Int phi_star_X(std::uint64_t s, int n);
// Jordan totient J_k(s) = s^k prod_{p|s} (1 - p^{-k}).
Int jordan_totient(std::uint64_t s, int k);

// a(s) = rational * zeta(2n)^{-1}.
struct ACoeff {
  Rational rational;
  int n = 1;
  double value() const;  // rational / zeta(2n)
};

ACoeff a_coeff(std::int64_t s, int n);

struct ArithmeticRecord {
  std::uint64_t s;
  u128 phi, X, conv;
  u128 a_den;  // a rational part = conv / a_den, a_den = s^{2n-1}
  double a_rational() const;
};

// Sieved per-s table of phi, X, phi*X and the rational part of a(s).
class ArithmeticTable {
 public:
  ArithmeticTable(int n, std::uint64_t max_s);
  int n() const { return n_; }
  std::uint64_t max_s() const { return max_; }
  const ArithmeticRecord& operator[](std::uint64_t s) const { return rec_[s]; }
  double a_rational(std::uint64_t s) const { return a_rat_[s]; }
  // Neumaier-compensated prefix sum of the rational parts.
  double summatory_rational(std::uint64_t m) const;

 private:
  int n_;
  std::uint64_t max_;
  std::vector<ArithmeticRecord> rec_;
  std::vector<double> a_rat_;
  std::vector<double> prefix_;
};

struct SummatoryReport {
  std::uint64_t M = 0;
  int n = 1;
  double rational_sum = 0.0;  // sum_{s<=M} a rational part
  std::optional<Rational> exact_rational_sum;  // only for small M
  double A = 0.0;             // rational_sum / zeta(2n)
  double ratio = 0.0;         // A zeta(2n)^2 / M
};

SummatoryReport summatory_A(std::uint64_t M, int n, bool exact = false);
SummatoryReport summatory_A(const ArithmeticTable& table, std::uint64_t M);

// Windowed maxima of |r(M') - 1| over (M_k / 10, M_k].
std::vector<double> ratio_envelope(const ArithmeticTable& table, const std::vector<std::uint64_t>& Ms);

Int sp_order_mod_q(int n, std::uint64_t q);
Int sp_order_brute(int n, std::uint64_t q);

struct IndexReport {
  int n = 0;
  Int s, d, q;
  Int formula_value;
  std::optional<Int> oracle_value;
  bool match = true;
};

IndexReport stabilizer_index(int n, const Int& s, const Int& d, bool brute = false);
Int stabilizer_index_formula(int n, const Int& q);

struct SubgroupCount {
  Int group_order;
  Int subgroup_order;
  Int index;
};
SubgroupCount brute_index_sl2_detail(std::uint64_t q);
Int brute_index_sl2(std::uint64_t q);

struct SqOrders {
  Int S_q;
  Int S_q_unsimplified;
  Int kernel;
  Int implied_index;
};
SqOrders sq_orders(int m, std::uint64_t q);

struct LfunReport {
  double partial_sum = 0.0;
  double target = 0.0;
  double relative_error = 0.0;
  double zeta_error_bound = 0.0;
};

LfunReport lfun_check(int n, double sigma, std::uint64_t N);

struct TailKernelReport {
  double displayed = 0.0;   // u^{n-1} sum_{u<s<=M} a(s)/s^n
  double variant = 0.0;     // u^n sum_{u<s<=M} a(s)/s^{n+1}
  double second = 0.0;      // u sum_{u<s<=M} a(s)/s^2
  double truncation_displayed = 0.0;
  double truncation_variant = 0.0;
  double truncation_second = 0.0;
  double target = 0.0;      // 1/zeta(2n)^2
};

TailKernelReport tail_kernel(int n, double u, std::uint64_t M);
TailKernelReport tail_kernel(const ArithmeticTable& table, double u, std::uint64_t M);

}  // namespace symlat
