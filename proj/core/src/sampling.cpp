#include "symlat/sampling.hpp"

#include <Eigen/Dense>

#include <cmath>
#include <complex>
#include <numbers>

namespace symlat {

std::string to_string(Provenance p) {
  switch (p) {
    case Provenance::exact_haar_n1: return "exact_haar_n1";
    case Provenance::siegel_approx: return "siegel_approx";
    case Provenance::user_supplied: return "user_supplied";
  }
  return "?";
}

Matrix<double> LatticeSample::basis() const { return g.matrix().scaled(std::sqrt(nu)); }

LatticeSample sample_lattice_n1(Rng& rng) { return sample_lattice_n1(rng, 0.0, INFINITY); }

LatticeSample sample_lattice_n1(Rng& rng, double y_lo, double y_hi) {
  require(y_hi > y_lo && y_hi > std::sqrt(3.0) / 2.0, "sample_lattice_n1: empty height range");
  // z = x + iy with density dx dy / y^2 on the standard fundamental domain: 1/y is uniform.
  const double inv_hi = std::isinf(y_hi) ? 0.0 : 1.0 / y_hi;
  const double inv_lo = 1.0 / std::max(y_lo, std::sqrt(3.0) / 2.0);
  double x = 0, y = 0;
  do {
    y = 1.0 / (inv_hi + (inv_lo - inv_hi) * rng.uniform_pos());
    x = rng.uniform(-0.5, 0.5);
  } while (x * x + y * y < 1.0);
  const double theta = rng.uniform(0.0, 2.0 * std::numbers::pi);
  const double c = std::cos(theta), s = std::sin(theta), ry = std::sqrt(y);
  // Rotation times the basis (1, 0)/sqrt(y), (x, y)/sqrt(y) of the lattice Z + zZ.
  const double b00 = 1.0 / ry, b01 = x / ry, b11 = ry;
  Matrix<double> g{{c * b00, c * b01 - s * b11}, {s * b00, s * b01 + c * b11}};
  LatticeSample out;
  out.n = 1;
  out.g = SymplecticMatrix<double>(std::move(g));
  out.provenance = Provenance::exact_haar_n1;
  out.height = y;
  return out;
}

double n1_height_tail(double t) {
  // Haar mass of {y >= t} in the fundamental domain, normalized by its area pi/3.
  const double area = std::numbers::pi / 3.0;
  if (t <= std::sqrt(3.0) / 2.0) return 1.0;
  if (t >= 1.0) return 1.0 / (t * area);
  const double w = std::sqrt(1.0 - t * t);
  return 2.0 * (std::asin(w) + (0.5 - w) / t) / area;
}

namespace {

// Haar-random unitary n x n via QR of a complex Gaussian matrix, embedded as [[A, -B], [B, A]].
Matrix<double> random_unitary_embedding(std::size_t n, Rng& rng) {
  Eigen::MatrixXcd z(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) z(i, j) = std::complex<double>(rng.normal(), rng.normal());
  Eigen::HouseholderQR<Eigen::MatrixXcd> qr(z);
  Eigen::MatrixXcd q = qr.householderQ();
  const Eigen::MatrixXcd r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (std::size_t j = 0; j < n; ++j) {
    const std::complex<double> d = r(j, j);
    const double a = std::abs(d);
    if (a > 0) q.col(j) *= d / a;
  }
  Matrix<double> k(2 * n, 2 * n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      const double A = q(i, j).real(), B = q(i, j).imag();
      k(i, j) = A;
      k(i, n + j) = -B;
      k(n + i, j) = B;
      k(n + i, n + j) = A;
    }
  return k;
}

}  // namespace

LatticeSample sample_lattice_siegel(std::size_t n, Rng& rng) {
  require(n == 2 || n == 3, "sample_lattice_siegel: n must be 2 or 3 (use the exact sampler for n = 1)");
  const double c = 2.0 / std::sqrt(3.0);
  std::vector<double> t(n);
  for (;;) {
    // Simple roots alpha_j = t_j / t_{j+1} (j < n), alpha_n = t_n^2, density ~ alpha^{k_j - 1} on (0, c].
    std::vector<double> alpha(n);
    for (std::size_t j = 1; j <= n; ++j) {
      const double k = j < n ? static_cast<double>(j * (2 * n - j + 1)) : static_cast<double>(n * (n + 1)) / 2.0;
      alpha[j - 1] = c * std::pow(rng.uniform_pos(), 1.0 / k);
    }
    for (std::size_t i = 0; i < n; ++i) {
      double v = std::sqrt(alpha[n - 1]);
      for (std::size_t j = i; j + 1 < n; ++j) v *= alpha[j];
      t[i] = v;
    }
    if (t[0] >= siegel_min_height) break;
  }
  Matrix<double> a = Matrix<double>::identity(2 * n);
  for (std::size_t i = 0; i < n; ++i) {
    a(i, i) = t[i];
    a(n + i, n + i) = 1.0 / t[i];
  }
  // Unipotent part diag(N, N^{-T}) u_S with N unit upper triangular.
  Matrix<double> N = Matrix<double>::identity(n), S(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) N(i, j) = rng.uniform(-0.5, 0.5);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i; j < n; ++j) S(i, j) = S(j, i) = rng.uniform(-0.5, 0.5);
  const Matrix<double> unip = make_generator(GeneratorKind::block_diag, inverse(N).transpose()).matrix() *
                              make_generator(GeneratorKind::upper, S).matrix();
  const Matrix<double> k = random_unitary_embedding(n, rng);
  LatticeSample out;
  out.n = n;
  out.g = SymplecticMatrix<double>(k * a * unip);
  out.provenance = Provenance::siegel_approx;
  out.height = t[0];
  return out;
}

LatticeSample sample_cone(std::size_t n, Rng& rng) {
  LatticeSample s = n == 1 ? sample_lattice_n1(rng) : sample_lattice_siegel(n, rng);
  s.nu = rng.uniform_pos();
  return s;
}

LatticeSample sample_indexed(std::size_t n, std::uint64_t seed, std::uint64_t index, bool cone) {
  Rng rng(seed, index);
  LatticeSample s = cone ? sample_cone(n, rng) : (n == 1 ? sample_lattice_n1(rng) : sample_lattice_siegel(n, rng));
  s.seed = seed;
  s.index = index;
  return s;
}

}  // namespace symlat
