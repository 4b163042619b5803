#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <string>

namespace symlat {

using Int = mpz_class;
using Rational = mpq_class;

enum class ScalarRing { integer, rational, real };

template <class T>
constexpr ScalarRing ring_of();
template <>
constexpr ScalarRing ring_of<Int>() { return ScalarRing::integer; }
template <>
constexpr ScalarRing ring_of<Rational>() { return ScalarRing::rational; }
template <>
constexpr ScalarRing ring_of<double>() { return ScalarRing::real; }

std::string to_string(ScalarRing r);

inline Int gcd(const Int& a, const Int& b) {
  Int g;
  mpz_gcd(g.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return g;
}

struct ExtGcd {
  Int g, x, y;  // a*x + b*y = g >= 0
};

inline ExtGcd ext_gcd(const Int& a, const Int& b) {
  ExtGcd r;
  mpz_gcdext(r.g.get_mpz_t(), r.x.get_mpz_t(), r.y.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return r;
}

// Representative of a mod m in [0, |m|).
inline Int mod_nonneg(const Int& a, const Int& m) {
  Int r;
  mpz_mod(r.get_mpz_t(), a.get_mpz_t(), m.get_mpz_t());
  return r;
}

// Quotient q with a - q*m in [0, |m|).
inline Int div_nonneg(const Int& a, const Int& m) {
  Int r = mod_nonneg(a, m);
  Int q = (a - r) / m;
  return q;
}

inline Int tdiv(const Int& a, const Int& b) {
  Int q;
  mpz_tdiv_q(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return q;
}

inline Int ipow(const Int& b, unsigned long e) {
  Int r;
  mpz_pow_ui(r.get_mpz_t(), b.get_mpz_t(), e);
  return r;
}

inline bool divides(const Int& d, const Int& a) {
  if (d == 0) return a == 0;
  return mpz_divisible_p(a.get_mpz_t(), d.get_mpz_t()) != 0;
}

inline Int to_int(const Rational& q) { return q.get_num() / q.get_den(); }

inline bool is_integral(const Rational& q) { return q.get_den() == 1; }

Int parse_int(const std::string& s);

}  // namespace symlat
