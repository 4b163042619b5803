#include "symlat/arithmetic.hpp"

#include <algorithm>
#include <array>
#include <functional>
#include <cmath>
#include <stdexcept>

#include "symlat/error.hpp"
#include "symlat/stats.hpp"
#include "symlat/zeta.hpp"

namespace symlat {

std::string to_string(u128 v) {
  if (v == 0) return "0";
  std::string s;
  while (v > 0) {
    s.push_back(static_cast<char>('0' + static_cast<int>(v % 10)));
    v /= 10;
  }
  std::reverse(s.begin(), s.end());
  return s;
}

Sieve::Sieve(std::uint32_t limit) : limit_(limit), spf_(limit + 1, 0), mu_(limit + 1, 0) {
  if (limit >= 1) mu_[1] = 1;
  for (std::uint32_t i = 2; i <= limit; ++i) {
    if (spf_[i] == 0) {
      spf_[i] = i;
      mu_[i] = -1;
      primes_.push_back(i);
    }
    for (std::uint32_t p : primes_) {
      const std::uint64_t ip = static_cast<std::uint64_t>(i) * p;
      if (p > spf_[i] || ip > limit) break;
      spf_[ip] = p;
      mu_[ip] = (p == spf_[i]) ? 0 : static_cast<std::int8_t>(-mu_[i]);
    }
  }
}

std::vector<std::pair<std::uint64_t, int>> Sieve::factor(std::uint64_t k) const {
  require(k >= 1 && k <= limit_, "sieve: argument out of range");
  std::vector<std::pair<std::uint64_t, int>> f;
  while (k > 1) {
    const std::uint32_t p = spf_[k];
    int e = 0;
    while (k % p == 0) {
      k /= p;
      ++e;
    }
    f.emplace_back(p, e);
  }
  return f;
}

std::vector<std::pair<std::uint64_t, int>> factorize(std::uint64_t k) {
  require(k >= 1, "factorize: argument must be positive");
  std::vector<std::pair<std::uint64_t, int>> f;
  for (std::uint64_t p = 2; p * p <= k; ++p) {
    if (k % p) continue;
    int e = 0;
    while (k % p == 0) {
      k /= p;
      ++e;
    }
    f.emplace_back(p, e);
  }
  if (k > 1) f.emplace_back(k, 1);
  return f;
}

std::uint64_t euler_phi(std::uint64_t s) {
  std::uint64_t r = s;
  for (const auto& [p, e] : factorize(s)) r = r / p * (p - 1);
  return r;
}

namespace {

Int upow(std::uint64_t b, unsigned long e) { return ipow(Int(static_cast<unsigned long>(b)), e); }

// s^k prod_{p|s} (1 - p^{-j}) as an exact rational.
Rational power_times_product(std::uint64_t s, unsigned long k, unsigned long j) {
  Rational r(upow(s, k));
  for (const auto& [p, e] : factorize(s)) {
    (void)e;
    const Int pj = upow(p, j);
    r *= Rational(pj - 1, pj);
  }
  r.canonicalize();
  return r;
}

Int as_integer(const Rational& q, const char* what) {
  if (!is_integral(q)) throw std::logic_error(std::string(what) + " is not an integer");
  return q.get_num();
}

std::vector<std::uint64_t> divisors(std::uint64_t s) {
  std::vector<std::uint64_t> d{1};
  for (const auto& [p, e] : factorize(s)) {
    const std::size_t base = d.size();
    std::uint64_t pk = 1;
    for (int k = 1; k <= e; ++k) {
      pk *= p;
      for (std::size_t i = 0; i < base; ++i) d.push_back(d[i] * pk);
    }
  }
  std::sort(d.begin(), d.end());
  return d;
}

u128 pow128(std::uint64_t b, int e) {
  u128 r = 1;
  for (int i = 0; i < e; ++i) r *= b;
  return r;
}

}  // namespace

Int X_func(std::uint64_t s, int n) {
  require(s >= 1, "X_func: s must be positive");
  require(n >= 1, "X_func: n must be positive");
  const unsigned long m = static_cast<unsigned long>(n - 1);
  return as_integer(power_times_product(s, 2 * m + 1, 2 * m), "X(s)");
}

Int jordan_totient(std::uint64_t s, int k) {
  require(s >= 1 && k >= 1, "jordan_totient: arguments must be positive");
  return as_integer(power_times_product(s, static_cast<unsigned long>(k), static_cast<unsigned long>(k)), "J_k(s)");
}

Int phi_star_X(std::uint64_t s, int n) {
  require(s >= 1, "phi_star_X: s must be positive");
  Int sum = 0;
  for (std::uint64_t d : divisors(s)) sum += Int(static_cast<unsigned long>(euler_phi(d))) * X_func(s / d, n);
  return sum;
}

double ACoeff::value() const { return rational.get_d() / zeta(2.0 * n); }

ACoeff a_coeff(std::int64_t s, int n) {
  require(s >= 1, "a_coeff: s must be >= 1 (a(0) is undefined)");
  ACoeff a;
  a.n = n;
  a.rational = Rational(phi_star_X(static_cast<std::uint64_t>(s), n), upow(static_cast<std::uint64_t>(s), 2 * n - 1));
  a.rational.canonicalize();
  return a;
}

double ArithmeticRecord::a_rational() const { return static_cast<double>(conv) / static_cast<double>(a_den); }

ArithmeticTable::ArithmeticTable(int n, std::uint64_t max_s) : n_(n), max_(max_s) {
  require(n >= 1, "arithmetic table: n must be positive");
  require(max_s >= 1 && max_s <= 100'000'000, "arithmetic table: bound out of range");
  require((2.0 * n - 1.0) * std::log2(static_cast<double>(max_s)) < 126.0,
          "arithmetic table: s^{2n-1} would overflow 128-bit integers");
  const int m = n - 1;
  const int k = 2 * n - 1;
  const Sieve sieve(static_cast<std::uint32_t>(max_s));
  rec_.assign(max_s + 1, ArithmeticRecord{});
  rec_[1] = {1, 1, 1, 1, 1};
  for (std::uint64_t s = 2; s <= max_s; ++s) {
    const std::uint64_t p = sieve.spf(static_cast<std::uint32_t>(s));
    std::uint64_t t = s;
    int e = 0;
    while (t % p == 0) {
      t /= p;
      ++e;
    }
    ArithmeticRecord& r = rec_[s];
    r.s = s;
    r.a_den = pow128(s, k);
    if (t == 1) {
      // Prime power p^e.
      auto phi_pp = [&](int j) -> u128 { return j == 0 ? u128(1) : pow128(p, j) - pow128(p, j - 1); };
      auto x_pp = [&](int j) -> u128 {
        if (j == 0) return 1;
        if (m == 0) return 0;
        return pow128(p, j * (2 * m + 1) - 2 * m) * (pow128(p, 2 * m) - 1);
      };
      r.phi = phi_pp(e);
      r.X = x_pp(e);
      u128 conv = 0;
      for (int j = 0; j <= e; ++j) conv += phi_pp(j) * x_pp(e - j);
      r.conv = conv;
    } else {
      const ArithmeticRecord& a = rec_[s / t];
      const ArithmeticRecord& b = rec_[t];
      r.phi = a.phi * b.phi;
      r.X = a.X * b.X;
      r.conv = a.conv * b.conv;
    }
  }
  a_rat_.assign(max_s + 1, 0.0);
  for (std::uint64_t s = 1; s <= max_s; ++s) a_rat_[s] = rec_[s].a_rational();
  prefix_.assign(max_s + 1, 0.0);
  CompensatedSum acc;
  for (std::uint64_t s = 1; s <= max_s; ++s) {
    acc.add(a_rat_[s]);
    prefix_[s] = acc.value();
  }
}

double ArithmeticTable::summatory_rational(std::uint64_t m) const {
  require(m <= max_, "summatory: beyond table bound");
  return prefix_[m];
}

SummatoryReport summatory_A(const ArithmeticTable& table, std::uint64_t M) {
  require(M >= 1, "summatory_A: M must be positive");
  SummatoryReport r;
  r.M = M;
  r.n = table.n();
  const double z = zeta(2.0 * table.n());
  r.rational_sum = table.summatory_rational(M);
  r.A = r.rational_sum / z;
  r.ratio = r.A * z * z / static_cast<double>(M);
  return r;
}

SummatoryReport summatory_A(std::uint64_t M, int n, bool exact) {
  const ArithmeticTable table(n, M);
  SummatoryReport r = summatory_A(table, M);
  if (exact) {
    require(M <= 5000, "summatory_A: exact rational sum limited to M <= 5000");
    Rational sum = 0;
    for (std::uint64_t s = 1; s <= M; ++s) sum += a_coeff(static_cast<std::int64_t>(s), n).rational;
    r.exact_rational_sum = sum;
  }
  return r;
}

std::vector<double> ratio_envelope(const ArithmeticTable& table, const std::vector<std::uint64_t>& Ms) {
  const double z = zeta(2.0 * table.n());
  std::vector<double> env;
  for (std::uint64_t M : Ms) {
    require(M >= 1 && M <= table.max_s(), "ratio_envelope: M beyond table bound");
    double worst = 0.0;
    for (std::uint64_t m = M / 10 + 1; m <= M; ++m)
      worst = std::max(worst, std::fabs(table.summatory_rational(m) * z / static_cast<double>(m) - 1.0));
    env.push_back(worst);
  }
  return env;
}

Int sp_order_mod_q(int n, std::uint64_t q) {
  require(n >= 1, "sp_order_mod_q: n must be positive");
  require(q >= 2, "sp_order_mod_q: q must be >= 2");
  Rational r(upow(q, static_cast<unsigned long>(2 * n * n + n)));
  for (const auto& [p, e] : factorize(q)) {
    (void)e;
    for (int i = 1; i <= n; ++i) {
      const Int pi = upow(p, static_cast<unsigned long>(2 * i));
      r *= Rational(pi - 1, pi);
    }
  }
  r.canonicalize();
  return as_integer(r, "|Sp(2n, Z/q)|");
}

Int sp_order_brute(int n, std::uint64_t q) {
  require(n >= 1 && q >= 2, "sp_order_brute: need n >= 1, q >= 2");
  const std::size_t dim = 2 * static_cast<std::size_t>(n);
  const double states = std::pow(static_cast<double>(q), static_cast<double>(dim));
  require(states <= 1e5, "sp_order_brute: instance too large for enumeration");
  const std::size_t count = static_cast<std::size_t>(std::llround(states));
  const long Q = static_cast<long>(q);
  std::vector<std::vector<long>> vecs(count, std::vector<long>(dim));
  for (std::size_t idx = 0; idx < count; ++idx) {
    std::size_t t = idx;
    for (std::size_t c = 0; c < dim; ++c) {
      vecs[idx][c] = static_cast<long>(t % q);
      t /= q;
    }
  }
  auto form = [&](const std::vector<long>& u, const std::vector<long>& v) {
    long s = 0;
    for (int i = 0; i < n; ++i) s += u[i] * v[n + i] - u[n + i] * v[i];
    return ((s % Q) + Q) % Q;
  };
  // Columns chosen in order M e^1, M f^1, M e^2, M f^2, ...; slot 2i is e^{i+1}, 2i+1 is f^{i+1}.
  std::vector<std::size_t> chosen(dim);
  std::uint64_t total = 0;
  auto required = [&](std::size_t a, std::size_t b) -> long {
    // <basis(a), basis(b)> for slot a, b.
    if (a / 2 != b / 2 || a == b) return 0;
    return (a % 2 == 0) ? 1 : Q - 1;
  };
  std::function<void(std::size_t)> rec = [&](std::size_t slot) {
    if (slot == dim) {
      ++total;
      return;
    }
    for (std::size_t idx = 0; idx < count; ++idx) {
      bool ok = true;
      for (std::size_t prev = 0; prev < slot && ok; ++prev)
        if (form(vecs[chosen[prev]], vecs[idx]) != required(prev, slot)) ok = false;
      if (!ok) continue;
      chosen[slot] = idx;
      rec(slot + 1);
    }
  };
  rec(0);
  return Int(static_cast<unsigned long>(total));
}

Int stabilizer_index_formula(int n, const Int& q) {
  require(n >= 1, "stabilizer_index: n must be positive");
  require(q >= 1, "stabilizer_index: q must be positive");
  if (q == 1) return 1;
  require(n >= 2, "stabilizer_index: for n = 1 every orbit has q = 1");
  require(q.fits_ulong_p(), "stabilizer_index: q too large");
  const std::uint64_t qq = q.get_ui();
  const unsigned long m = static_cast<unsigned long>(n - 1);
  return as_integer(power_times_product(qq, 2 * m + 1, 2 * m), "stabilizer index");
}

IndexReport stabilizer_index(int n, const Int& s, const Int& d, bool brute) {
  require(s != 0, "stabilizer_index: s must be nonzero");
  require(d >= 1, "stabilizer_index: d must be positive");
  require(divides(d, s), "stabilizer_index: d must divide s");
  IndexReport r;
  r.n = n;
  r.s = s;
  r.d = d;
  r.q = abs(s) / d;
  r.formula_value = stabilizer_index_formula(n, r.q);
  if (brute && n == 2 && r.q >= 2 && r.q <= 8) {
    r.oracle_value = brute_index_sl2(r.q.get_ui());
    r.match = *r.oracle_value == r.formula_value;
  }
  return r;
}

SubgroupCount brute_index_sl2_detail(std::uint64_t q) {
  require(q >= 2 && q <= 8, "brute_index_sl2: q must be in [2, 8]");
  const long Q = static_cast<long>(q);
  const long N = Q * Q;
  std::uint64_t group = 0;
  std::vector<std::array<long, 4>> members;
  for (long a = 0; a < N; ++a)
    for (long b = 0; b < N; ++b)
      for (long c = 0; c < N; ++c)
        for (long d = 0; d < N; ++d) {
          if (((a * d - b * c) % N + N) % N != 1) continue;
          ++group;
          if (b == 0 && a % Q == 1 % Q && (a + d) % N == 2 % N) members.push_back({a, b, c, d});
        }
  if (members.size() != static_cast<std::size_t>(Q * Q * Q))
    throw std::logic_error("brute_index_sl2: subgroup does not have q^3 elements");
  // Closure under multiplication.
  auto member = [&](long a, long b, long c, long d) {
    (void)c;
    return b == 0 && a % Q == 1 % Q && (a + d) % N == 2 % N;
  };
  for (const auto& x : members)
    for (const auto& y : members) {
      const long a = (x[0] * y[0] + x[1] * y[2]) % N, b = (x[0] * y[1] + x[1] * y[3]) % N;
      const long c = (x[2] * y[0] + x[3] * y[2]) % N, d = (x[2] * y[1] + x[3] * y[3]) % N;
      if (!member(a, b, c, d)) throw std::logic_error("brute_index_sl2: subgroup not closed");
    }
  SubgroupCount sc;
  sc.group_order = Int(static_cast<unsigned long>(group));
  sc.subgroup_order = Int(static_cast<unsigned long>(members.size()));
  if (!divides(sc.subgroup_order, sc.group_order)) throw std::logic_error("brute_index_sl2: order mismatch");
  sc.index = sc.group_order / sc.subgroup_order;
  return sc;
}

Int brute_index_sl2(std::uint64_t q) { return brute_index_sl2_detail(q).index; }

SqOrders sq_orders(int m, std::uint64_t q) {
  require(m >= 1, "sq_orders: m must be >= 1");
  require(q >= 2, "sq_orders: q must be >= 2");
  const unsigned long mu = static_cast<unsigned long>(m);
  SqOrders r;
  Rational sq(upow(q, 2 * mu * mu - mu));
  for (const auto& [p, e] : factorize(q)) {
    (void)e;
    for (unsigned long i = 1; i + 1 <= mu; ++i) {
      const Int pi = upow(p, 2 * i);
      sq *= Rational(pi - 1, pi);
    }
  }
  sq.canonicalize();
  r.S_q = as_integer(sq, "|S_q|");
  r.S_q_unsimplified = upow(q, 2 * mu - 1) * (m == 1 ? Int(1) : sp_order_mod_q(m - 1, q));
  r.kernel = upow(q, 2 * mu * mu + mu - 1);
  Rational idx(sp_order_mod_q(m, q * q), r.S_q * r.kernel);
  idx.canonicalize();
  r.implied_index = as_integer(idx, "implied index");
  return r;
}

LfunReport lfun_check(int n, double sigma, std::uint64_t N) {
  require(n >= 1, "lfun_check: n must be positive");
  require(sigma >= 2.0 * n + 1.0 - 1e-12, "lfun_check: sigma must be >= 2n + 1");
  require(N >= 1, "lfun_check: N must be positive");
  const ArithmeticTable table(n, N);
  CompensatedSum acc;
  for (std::uint64_t s = N; s >= 1; --s)
    acc.add(static_cast<double>(table[s].conv) * std::pow(static_cast<double>(s), -sigma));
  const ZetaValue num = zeta_em(sigma - 2.0 * n + 1.0);
  const ZetaValue den = zeta_em(sigma);
  LfunReport r;
  r.partial_sum = acc.value();
  r.target = num.value / den.value;
  r.relative_error = std::fabs(r.partial_sum - r.target) / r.target;
  r.zeta_error_bound = num.error_bound / num.value + den.error_bound / den.value;
  return r;
}

TailKernelReport tail_kernel(const ArithmeticTable& table, double u, std::uint64_t M) {
  require(u >= 1.0, "tail_kernel: u must be >= 1");
  require(static_cast<double>(M) > u, "tail_kernel: M must exceed u");
  require(M <= table.max_s(), "tail_kernel: M beyond table bound");
  const int n = table.n();
  const double z = zeta(2.0 * n);
  CompensatedSum d, v, sc;
  const std::uint64_t first = static_cast<std::uint64_t>(std::floor(u)) + 1;
  for (std::uint64_t s = M; s >= first; --s) {
    const double a = table.a_rational(s) / z;
    const double sd = static_cast<double>(s);
    d.add(a / std::pow(sd, n));
    v.add(a / std::pow(sd, n + 1));
    sc.add(a / (sd * sd));
  }
  TailKernelReport r;
  const double Md = static_cast<double>(M);
  r.displayed = std::pow(u, n - 1) * d.value();
  r.variant = std::pow(u, n) * v.value();
  r.second = u * sc.value();
  r.truncation_displayed = n == 1 ? INFINITY : std::pow(u, n - 1) * std::pow(Md, 1.0 - n) / (n - 1.0) / z;
  r.truncation_variant = std::pow(u, n) * std::pow(Md, -static_cast<double>(n)) / n / z;
  r.truncation_second = u / Md / z;
  r.target = 1.0 / (z * z);
  return r;
}

TailKernelReport tail_kernel(int n, double u, std::uint64_t M) { return tail_kernel(ArithmeticTable(n, M), u, M); }

}  // namespace symlat
