#include "symlat/geometry.hpp"

#include <cmath>
#include <algorithm>
#include <numbers>
#include <numeric>

#include "symlat/arithmetic.hpp"
#include "symlat/parallel.hpp"
#include "symlat/stats.hpp"
#include "symlat/zeta.hpp"

namespace symlat {

FrameAtX frame_at(const Vec<double>& x, CompletionOrder order) {
  const std::size_t n = half_dim(x);
  double nx = 0;
  for (double c : x) nx += c * c;
  require(std::sqrt(nx) >= 1e-12, "frame_at: x must be nonzero");
  Vec<double> partner = tau(x);
  for (double& c : partner) c = -c;  // <x, -tau(x)> = |x|^2
  const SymplecticMatrix<double> g = complete_symplectic_basis(x, partner, order);
  const Matrix<double>& gm = g.matrix();
  const Matrix<double> ginv = symplectic_inverse(gm);
  FrameAtX f;
  f.x = x;
  f.y_star = gm.column(n);
  // Frame order: x, g e^2..g e^n, g f^2..g f^n; source column of g for each frame slot.
  std::vector<std::size_t> src{0};
  for (std::size_t j = 1; j < n; ++j) src.push_back(j);
  for (std::size_t j = 1; j < n; ++j) src.push_back(n + j);
  for (std::size_t c : src) f.ys.push_back(gm.column(c));
  f.coords = Matrix<double>(2 * n, 2 * n);
  for (std::size_t k = 0; k < 2 * n; ++k) {
    const std::size_t row = k == 0 ? n : src[k - 1];
    for (std::size_t j = 0; j < 2 * n; ++j) f.coords(k, j) = ginv(row, j);
  }
  return f;
}

namespace {

constexpr std::uint64_t block_size = 4096;

struct BlockSum {
  double sum = 0, sumsq = 0;
  std::uint64_t count = 0;
};

// Runs sample(rng) over blocks with per-block substreams and pools in block order.
template <class F>
Estimate block_mc(std::uint64_t samples, std::uint64_t seed, double scale, F&& sample) {
  require(samples >= 2, "monte carlo: need at least 2 samples");
  const std::uint64_t blocks = (samples + block_size - 1) / block_size;
  std::vector<BlockSum> parts(blocks);
  parallel_for(blocks, [&](std::size_t b) {
    Rng rng(seed, b);
    const std::uint64_t lo = b * block_size, hi = std::min(samples, lo + block_size);
    BlockSum bs;
    for (std::uint64_t i = lo; i < hi; ++i) {
      const double v = sample(rng);
      bs.sum += v;
      bs.sumsq += v * v;
      ++bs.count;
    }
    parts[b] = bs;
  });
  BlockSum tot;
  for (const auto& p : parts) {
    tot.sum += p.sum;
    tot.sumsq += p.sumsq;
    tot.count += p.count;
  }
  const double N = static_cast<double>(tot.count);
  const double mean = tot.sum / N;
  const double var = std::max(0.0, (tot.sumsq - N * mean * mean) / (N - 1.0));
  Estimate e;
  e.value = scale * mean;
  e.std_error = scale * std::sqrt(var / N);
  e.samples = tot.count;
  return e;
}

// One importance sample of the hypersurface integrand at symplectic value s.
double hypersurface_sample(double s, const RegionSpec& B, CompletionOrder order, Rng& rng) {
  const std::size_t d = B.dim();
  Vec<double> x(d);
  B.sample(rng, x.data());
  if (std::sqrt(std::inner_product(x.begin(), x.end(), x.begin(), 0.0)) < 1e-12) return 0.0;
  const FrameAtX f = frame_at(x, order);
  const double rc = B.circumradius();
  double weight = 1.0;
  double y[16];
  for (std::size_t i = 0; i < d; ++i) y[i] = s * f.y_star[i];
  for (std::size_t k = 0; k + 1 < d; ++k) {
    double rn = 0;
    for (std::size_t j = 0; j < d; ++j) rn += f.coords(k + 1, j) * f.coords(k + 1, j);
    const double T = std::sqrt(rn) * rc;
    const double t = rng.uniform(-T, T);
    weight *= 2.0 * T;
    for (std::size_t i = 0; i < d; ++i) y[i] += t * f.ys[k][i];
  }
  return B.contains(y) ? weight : 0.0;
}

}  // namespace

Estimate G_integral(double s, const RegionSpec& B, const QuadratureOptions& opt) {
  require(s != 0.0, "G_integral: s must be nonzero");
  require(B.volume() > 0, "G_integral: zero-volume region");
  return block_mc(opt.samples, opt.seed, B.volume(),
                  [&](Rng& rng) { return hypersurface_sample(s, B, opt.order, rng); });
}

Estimate G_tilde(double s, const RegionSpec& B, const QuadratureOptions& opt, double weight_exponent) {
  require(s != 0.0, "G_tilde: s must be nonzero (a(0) is undefined)");
  require(B.volume() > 0, "G_tilde: zero-volume region");
  return block_mc(opt.samples, opt.seed, B.volume(), [&](Rng& rng) {
    const double nu = rng.uniform_pos();
    return std::pow(nu, weight_exponent) * hypersurface_sample(nu * s, B, opt.order, rng);
  });
}

double disc_G_exact(double s, double R) {
  require(R > 0, "disc_G_exact: radius must be positive");
  const double a = std::fabs(s), R2 = R * R;
  if (a >= R2) return 0.0;
  return 4.0 * std::numbers::pi * (std::sqrt(R2 * R2 - a * a) - a * std::acos(a / R2));
}

double disc_G_moment(double c, double R) {
  require(R > 0 && c >= 0, "disc_G_moment: need R > 0, c >= 0");
  const double R2 = R * R, R6 = R2 * R2 * R2;
  c = std::min(c, R2);
  const double t = c / R2;
  const double first = (R6 - std::pow(R2 * R2 - c * c, 1.5)) / 3.0;
  const double second = R6 * (t * t * t / 3.0 * std::acos(t) - std::sqrt(1.0 - t * t) * (t * t + 2.0) / 9.0 + 2.0 / 9.0);
  return 4.0 * std::numbers::pi * (first - second);
}

double disc_G_tilde(double s, double R) {
  require(s != 0.0, "disc_G_tilde: s must be nonzero");
  const double a = std::fabs(s);
  return disc_G_moment(a, R) / (a * a);
}

namespace {

double pair_kernel(const RegionSpec& S, const RegionSpec& B, double delta, Rng& rng) {
  double x[16], y[16];
  S.sample(rng, x);
  B.sample(rng, y);
  const std::size_t n = S.n();
  double s = 0;
  for (std::size_t i = 0; i < n; ++i) s += x[i] * y[n + i] - x[n + i] * y[i];
  return std::pow(std::max(1.0, std::fabs(s)), -delta);
}

}  // namespace

Estimate condition_integral(const RegionSpec& B, double delta, const QuadratureOptions& opt) {
  require(delta > 0 && delta < 2.0 * B.n(), "condition_integral: delta must lie in (0, 2n)");
  const double v = B.volume();
  return block_mc(opt.samples, opt.seed, v * v, [&](Rng& rng) { return pair_kernel(B, B, delta, rng); });
}

Estimate kernel_bound_check(const RegionSpec& S, const RegionSpec& B, double delta, const QuadratureOptions& opt) {
  require(S.n() == B.n(), "kernel_bound_check: dimension mismatch");
  require(B.kind() == RegionSpec::Kind::ball, "kernel_bound_check: B must be a ball centered at 0");
  require(delta > 0 && delta < 2.0 * B.n(), "kernel_bound_check: delta must lie in (0, 2n)");
  const double mS = S.volume(), mB = B.volume(), unit = unit_ball_volume(B.dim());
  require(mS >= mB * (1 - 1e-12) && mB >= unit * (1 - 1e-12),
          "kernel_bound_check: requires m(S) >= m(B) >= m(unit ball)");
  const double scale = std::pow(mB, delta / (2.0 * B.n()));
  return block_mc(opt.samples, opt.seed, scale, [&](Rng& rng) { return pair_kernel(S, B, delta, rng); });
}

std::string to_string(KLConvention c) {
  switch (c) {
    case KLConvention::primitive_pm: return "primitive_pm";
    case KLConvention::coprime_nonzero: return "coprime_nonzero";
    case KLConvention::coprime_positive: return "coprime_positive";
  }
  return "?";
}

KLConvention parse_kl_convention(const std::string& s) {
  if (s == "primitive_pm") return KLConvention::primitive_pm;
  if (s == "coprime_nonzero") return KLConvention::coprime_nonzero;
  if (s == "coprime_positive") return KLConvention::coprime_positive;
  throw InputError("unknown (k,l) convention '" + s + "' (primitive_pm, coprime_nonzero, coprime_positive)");
}

DependentTerm dependent_pairs_term(const RegionSpec& B, std::uint64_t K, KLConvention convention) {
  require(K >= 1, "dependent_pairs_term: cutoff must be >= 1");
  const double vol = B.volume();
  const int n = static_cast<int>(B.n());
  DependentTerm t;
  if (convention == KLConvention::primitive_pm) {
    t.value = 2.0 * vol / zeta(2.0 * n);
    t.terms = 2;
    return t;
  }
  const bool positive = convention == KLConvention::coprime_positive;
  const long k = static_cast<long>(K);
  CompensatedSum acc;
  for (long a = positive ? 1 : -k; a <= k; ++a)
    for (long b = positive ? 1 : -k; b <= k; ++b) {
      if (a == 0 || b == 0 || std::gcd(a, b) != 1) continue;
      const double m = static_cast<double>(std::max(std::labs(a), std::labs(b)));
      acc.add(vol / std::pow(m, 2.0 * n));
      ++t.terms;
    }
  t.value = acc.value();
  // At most 8m (or 2m) coprime pairs have max(|k|, |l|) = m.
  const double per = positive ? 2.0 : 8.0;
  t.tail_bound = n == 1 ? INFINITY : per * vol * std::pow(static_cast<double>(K), 2.0 - 2.0 * n) / (2.0 * n - 2.0);
  return t;
}

FubiniReport fubini_check(const RegionSpec& B, std::size_t grid_points, const QuadratureOptions& opt, bool closed_form) {
  require(grid_points >= 2, "fubini_check: need at least 2 grid points");
  const double smax = B.circumradius() * B.circumradius();
  const double h = 2.0 * smax / static_cast<double>(grid_points);
  const bool exact = closed_form && B.n() == 1 && B.kind() != RegionSpec::Kind::box;
  require(exact || grid_points % 2 == 0, "fubini_check: Monte Carlo mode needs an even grid (s = 0 is excluded)");
  FubiniReport r;
  double var = 0;
  CompensatedSum acc;
  for (std::size_t i = 0; i < grid_points; ++i) {
    const double s = -smax + (static_cast<double>(i) + 0.5) * h;
    if (exact) {
      acc.add(h * disc_G_exact(s, B.radius()));
    } else {
      QuadratureOptions o = opt;
      o.seed = opt.seed + i;
      const Estimate e = G_integral(s, B, o);
      acc.add(h * e.value);
      var += h * h * e.std_error * e.std_error;
    }
  }
  r.integral = acc.value();
  r.std_error = std::sqrt(var);
  r.volume_squared = B.volume() * B.volume();
  r.relative_error = std::fabs(r.integral - r.volume_squared) / r.volume_squared;
  return r;
}

}  // namespace symlat
