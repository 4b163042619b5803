#include "symlat/lattice.hpp"

#include <Eigen/Dense>

#include <cmath>
#include <mutex>

#include "symlat/arithmetic.hpp"

namespace symlat {

ReducedBasis lll_reduce(const Matrix<double>& basis, double delta) {
  require(basis.square() && basis.rows() >= 1, "lll_reduce: basis must be square");
  const std::size_t d = basis.cols();
  std::vector<Vec<double>> b, u;
  for (std::size_t j = 0; j < d; ++j) {
    b.push_back(basis.column(j));
    u.push_back(basis_vector<double>(d, j));
  }
  std::vector<std::vector<double>> mu(d, std::vector<double>(d, 0.0));
  std::vector<double> bn(d, 0.0);
  auto dot = [&](const Vec<double>& a, const Vec<double>& c) {
    double s = 0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * c[i];
    return s;
  };
  auto gram_schmidt = [&]() {
    std::vector<Vec<double>> bs(d);
    for (std::size_t i = 0; i < d; ++i) {
      bs[i] = b[i];
      for (std::size_t j = 0; j < i; ++j) {
        mu[i][j] = bn[j] > 0 ? dot(b[i], bs[j]) / bn[j] : 0.0;
        for (std::size_t t = 0; t < d; ++t) bs[i][t] -= mu[i][j] * bs[j][t];
      }
      bn[i] = dot(bs[i], bs[i]);
      if (!(bn[i] > 0)) throw InputError("lll_reduce: basis is singular or non-finite");
    }
  };
  gram_schmidt();
  std::size_t k = 1;
  std::uint64_t iterations = 0;
  while (k < d) {
    if (++iterations > 1'000'000) throw BudgetExceeded("lll_reduce: iteration limit exceeded");
    for (std::size_t jj = k; jj-- > 0;) {
      const double q = std::nearbyint(mu[k][jj]);
      if (q == 0.0) continue;
      for (std::size_t t = 0; t < d; ++t) {
        b[k][t] -= q * b[jj][t];
        u[k][t] -= q * u[jj][t];
      }
      for (std::size_t i = 0; i < jj; ++i) mu[k][i] -= q * mu[jj][i];
      mu[k][jj] -= q;
    }
    if (bn[k] >= (delta - mu[k][k - 1] * mu[k][k - 1]) * bn[k - 1]) {
      ++k;
    } else {
      std::swap(b[k], b[k - 1]);
      std::swap(u[k], u[k - 1]);
      gram_schmidt();
      k = std::max<std::size_t>(1, k - 1);
    }
  }
  return {Matrix<double>::from_columns(b), Matrix<double>::from_columns(u)};
}

namespace {

std::mutex mobius_mutex;
std::shared_ptr<const std::vector<std::int8_t>> mobius_cache;

std::shared_ptr<const std::vector<std::int8_t>> mobius_table(std::uint64_t limit) {
  std::lock_guard<std::mutex> lock(mobius_mutex);
  if (!mobius_cache || mobius_cache->size() <= limit) {
    std::uint64_t size = 1024;
    while (size <= limit) size *= 2;
    require(size <= (1ULL << 32), "mobius: table limit exceeded");
    const Sieve sieve(static_cast<std::uint32_t>(size));
    auto table = std::make_shared<std::vector<std::int8_t>>(size + 1);
    for (std::uint64_t i = 0; i <= size; ++i) (*table)[i] = static_cast<std::int8_t>(i == 0 ? 0 : sieve.mobius(static_cast<std::uint32_t>(i)));
    mobius_cache = std::move(table);
  }
  return mobius_cache;
}

// Integers in [lo, hi].
inline std::uint64_t integers_in(double lo, double hi) {
  const double a = std::ceil(lo), b = std::floor(hi);
  return b >= a ? static_cast<std::uint64_t>(b - a) + 1 : 0;
}

constexpr double boundary_slack = 1e-12;

}  // namespace

int mobius(std::uint64_t k) {
  require(k >= 1, "mobius: argument must be positive");
  return (*mobius_table(k))[k];
}

LatticeCounter::LatticeCounter(const Matrix<double>& basis, const RegionSpec& region)
    : d_(basis.rows()), region_(region) {
  require(basis.square() && basis.rows() == region.dim(), "lattice counter: basis and region dimensions differ");
  require(d_ <= 16, "lattice counter: dimension too large");
  Matrix<double> m = basis;
  if (region.kind() == RegionSpec::Kind::ellipsoid) m = region.g_inv() * basis;
  radius_ = region.kind() == RegionSpec::Kind::box ? region.circumradius() : region.radius();
  const ReducedBasis red = lll_reduce(m);
  b_ = red.basis;
  u_ = red.transform;
  Eigen::MatrixXd g(d_, d_);
  for (std::size_t i = 0; i < d_; ++i)
    for (std::size_t j = 0; j < d_; ++j) {
      double s = 0;
      for (std::size_t t = 0; t < d_; ++t) s += red.basis(t, i) * red.basis(t, j);
      g(i, j) = s;
    }
  Eigen::LLT<Eigen::MatrixXd> llt(g);
  require(llt.info() == Eigen::Success, "lattice counter: Gram matrix is not positive definite");
  const Eigen::MatrixXd r = llt.matrixU();
  r_.assign(d_ * d_, 0.0);
  min_gs_ = INFINITY;
  for (std::size_t i = 0; i < d_; ++i) {
    for (std::size_t j = 0; j < d_; ++j) r_[i * d_ + j] = r(i, j);
    min_gs_ = std::min(min_gs_, r(i, i));
  }
}

// Fincke-Pohst over levels d-1..1; visit(w, lo, hi) receives the admissible real interval of w_0.
template <class Visit>
void LatticeCounter::walk(double k, Visit&& visit) const {
  const std::size_t d = d_;
  const double R = radius_ / k;
  const double R2 = R * R * (1.0 + boundary_slack);
  const bool box = region_.kind() == RegionSpec::Kind::box;
  std::vector<double> hw;
  if (box)
    for (double h : region_.half_widths()) hw.push_back(h / k * (1.0 + boundary_slack));

  double w[16] = {0}, center[16] = {0}, rem[16] = {0}, hi[16] = {0};
  std::uint64_t nodes = 0;
  auto rr = [&](std::size_t i, std::size_t j) { return r_[i * d + j]; };
  auto set_center = [&](std::size_t i) {
    double c = 0;
    for (std::size_t j = i + 1; j < d; ++j) c -= rr(i, j) * w[j];
    center[i] = c / rr(i, i);
  };
  auto inner = [&]() {
    const double half = std::sqrt(std::max(0.0, rem[0])) / rr(0, 0);
    double lo = center[0] - half, up = center[0] + half;
    if (box) {
      // Point = b_0 w_0 + p with p from the outer coordinates.
      for (std::size_t i = 0; i < d && lo <= up; ++i) {
        double p = 0;
        for (std::size_t j = 1; j < d; ++j) p += b_(i, j) * w[j];
        const double a = b_(i, 0);
        if (std::fabs(a) < 1e-300) {
          if (std::fabs(p) > hw[i]) up = lo - 1;
          continue;
        }
        double l = (-hw[i] - p) / a, u = (hw[i] - p) / a;
        if (l > u) std::swap(l, u);
        lo = std::max(lo, l);
        up = std::min(up, u);
      }
    }
    visit(w, lo, up);
  };

  if (d == 1) {
    rem[0] = R2;
    center[0] = 0;
    inner();
    return;
  }
  std::size_t i = d - 1;
  rem[i] = R2;
  set_center(i);
  {
    const double half = std::sqrt(rem[i]) / rr(i, i);
    w[i] = std::ceil(center[i] - half);
    hi[i] = std::floor(center[i] + half);
  }
  for (;;) {
    if (w[i] > hi[i]) {
      if (++i == d) return;
      w[i] += 1;
      continue;
    }
    if (++nodes > node_budget) throw BudgetExceeded("lattice enumeration exceeded node budget");
    const double t = rr(i, i) * (w[i] - center[i]);
    const double r_next = rem[i] - t * t;
    const std::size_t j = i - 1;
    rem[j] = r_next;
    set_center(j);
    if (j == 0) {
      inner();
      w[i] += 1;
      continue;
    }
    const double half = std::sqrt(std::max(0.0, r_next)) / rr(j, j);
    w[j] = std::ceil(center[j] - half);
    hi[j] = std::floor(center[j] + half);
    i = j;
  }
}

std::uint64_t LatticeCounter::count(double k) const {
  require(k > 0, "lattice counter: scale must be positive");
  std::uint64_t total = 0;
  walk(k, [&](const double*, double lo, double hi) { total += integers_in(lo, hi); });
  return total;
}

std::uint64_t LatticeCounter::count_primitive() const {
  const double kmax = std::floor(radius_ * (1.0 + boundary_slack) / min_gs_);
  require(kmax < 4e9, "lattice counter: Moebius range too large");
  const std::uint64_t K = static_cast<std::uint64_t>(std::max(1.0, kmax));
  const auto mu = mobius_table(K);
  std::int64_t total = 0;
  for (std::uint64_t k = 1; k <= K; ++k) {
    const int m = (*mu)[k];
    if (m == 0) continue;
    total += m * (static_cast<std::int64_t>(count(static_cast<double>(k))) - 1);
  }
  require(total >= 0, "lattice counter: negative primitive count");
  return static_cast<std::uint64_t>(total);
}

std::vector<IntPoint> LatticeCounter::list(double k, std::uint64_t budget) const {
  std::vector<IntPoint> out;
  walk(k, [&](const double* w, double lo, double hi) {
    const double a = std::ceil(lo), b = std::floor(hi);
    for (double w0 = a; w0 <= b; w0 += 1) {
      if (out.size() >= budget) throw BudgetExceeded("enumerate_points: point budget exceeded");
      IntPoint z(d_, 0);
      for (std::size_t r = 0; r < d_; ++r) {
        double s = u_(r, 0) * w0;
        for (std::size_t c = 1; c < d_; ++c) s += u_(r, c) * w[c];
        z[r] = std::llround(s);
      }
      out.push_back(std::move(z));
    }
  });
  return out;
}

std::vector<IntPoint> enumerate_points(const Matrix<double>& g, double R, const EnumerationOptions& opt) {
  require(g.square() && g.rows() >= 2 && g.rows() % 2 == 0, "enumerate_points: basis must be 2n x 2n");
  const LatticeCounter counter(g, RegionSpec::ball(g.rows() / 2, R));
  return counter.list(1.0, opt.budget);
}

}  // namespace symlat
