#include "symlat/symplectic.hpp"

#include <algorithm>
#include <cmath>

namespace symlat {

namespace {

template <class T>
SymplecticCheck check_exact(const Matrix<T>& m) {
  SymplecticCheck c;
  if (!m.square() || m.rows() % 2 != 0 || m.rows() == 0) throw InputError("is_symplectic: matrix must be 2n x 2n");
  const std::size_t n = m.rows() / 2;
  const Matrix<T> a = m.block(0, 0, n, n), b = m.block(0, n, n, n);
  const Matrix<T> cc = m.block(n, 0, n, n), d = m.block(n, n, n, n);
  // M^T J M = J  <=>  a^T c, b^T d symmetric and a^T d - c^T b = I.
  const Matrix<T> atc = a.transpose() * cc;
  const Matrix<T> btd = b.transpose() * d;
  const Matrix<T> mixed = a.transpose() * d - cc.transpose() * b;
  if (mixed != Matrix<T>::identity(n)) c.violations.push_back("a^T d - c^T b = I");
  if (atc != atc.transpose()) c.violations.push_back("a^T c symmetric");
  if (btd != btd.transpose()) c.violations.push_back("b^T d symmetric");
  c.ok = c.violations.empty();
  c.residual = c.ok ? 0.0 : 1.0;
  return c;
}

template <class T>
Matrix<T> generator_matrix(GeneratorKind kind, const Matrix<T>& s, const Matrix<T>& inv_t) {
  const std::size_t n = s.rows();
  Matrix<T> m = Matrix<T>::identity(2 * n);
  switch (kind) {
    case GeneratorKind::upper: m.set_block(0, n, s); break;
    case GeneratorKind::lower: m.set_block(n, 0, s); break;
    case GeneratorKind::block_diag:
      m.set_block(0, 0, inv_t);
      m.set_block(n, n, s);
      break;
  }
  return m;
}

template <class T>
void require_symmetric(GeneratorKind kind, const Matrix<T>& s) {
  require(s.square() && s.rows() > 0, "generator payload must be a non-empty square matrix");
  if (kind != GeneratorKind::block_diag) require(s == s.transpose(), "upper/lower generator payload must be symmetric");
}

}  // namespace

SymplecticCheck is_symplectic(const Matrix<Int>& m) { return check_exact(m); }
SymplecticCheck is_symplectic(const Matrix<Rational>& m) { return check_exact(m); }

SymplecticCheck is_symplectic(const Matrix<double>& m, double tol) {
  SymplecticCheck c;
  if (!m.square() || m.rows() % 2 != 0 || m.rows() == 0) throw InputError("is_symplectic: matrix must be 2n x 2n");
  const std::size_t n = m.rows() / 2;
  const Matrix<double> j = standard_form<double>(n);
  const Matrix<double> r = m.transpose() * j * m - j;
  auto block_max = [&](std::size_t r0, std::size_t c0) {
    double v = 0;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t k = 0; k < n; ++k) v = std::max(v, std::fabs(r(r0 + i, c0 + k)));
    return v;
  };
  c.residual = max_abs(r);
  if (block_max(0, n) > tol || block_max(n, 0) > tol) c.violations.push_back("a^T d - c^T b = I");
  if (block_max(0, 0) > tol) c.violations.push_back("a^T c symmetric");
  if (block_max(n, n) > tol) c.violations.push_back("b^T d symmetric");
  c.ok = c.violations.empty();
  return c;
}

std::string to_string(GeneratorKind k) {
  switch (k) {
    case GeneratorKind::upper: return "upper";
    case GeneratorKind::lower: return "lower";
    case GeneratorKind::block_diag: return "block_diag";
  }
  return "?";
}

SymplecticMatrix<Int> make_generator(GeneratorKind kind, const Matrix<Int>& payload) {
  require_symmetric(kind, payload);
  Matrix<Int> inv_t;
  if (kind == GeneratorKind::block_diag) inv_t = inverse_unimodular(payload).transpose();
  return SymplecticMatrix<Int>::trusted(generator_matrix(kind, payload, inv_t));
}

SymplecticMatrix<Rational> make_generator(GeneratorKind kind, const Matrix<Rational>& payload) {
  require_symmetric(kind, payload);
  Matrix<Rational> inv_t;
  if (kind == GeneratorKind::block_diag) {
    require(determinant(payload) != 0, "block_diag payload must be invertible");
    inv_t = inverse(payload).transpose();
  }
  return SymplecticMatrix<Rational>::trusted(generator_matrix(kind, payload, inv_t));
}

SymplecticMatrix<double> make_generator(GeneratorKind kind, const Matrix<double>& payload) {
  require_symmetric(kind, payload);
  Matrix<double> inv_t;
  if (kind == GeneratorKind::block_diag) {
    require(std::fabs(determinant(payload)) > 1e-12, "block_diag payload must be invertible");
    inv_t = inverse(payload).transpose();
  }
  return SymplecticMatrix<double>(generator_matrix(kind, payload, inv_t));
}

namespace {

double norm(const Vec<double>& v) {
  double s = 0;
  for (double x : v) s += x * x;
  return std::sqrt(s);
}

// w - <w, f> e + <w, e> f removes the components along a pair with <e, f> = 1.
void project_out(Vec<double>& w, const Vec<double>& e, const Vec<double>& f) {
  const double wf = symplectic_form(w, f);
  const double we = symplectic_form(w, e);
  for (std::size_t i = 0; i < w.size(); ++i) w[i] += -wf * e[i] + we * f[i];
}

}  // namespace

SymplecticMatrix<double> complete_symplectic_basis(const Vec<double>& v1, const Vec<double>& v2,
                                                   CompletionOrder order) {
  require(v1.size() == v2.size(), "complete_symplectic_basis: dimension mismatch");
  const std::size_t n = half_dim(v1);
  const double s = symplectic_form(v1, v2);
  const double scale = std::max(1.0, norm(v1) * norm(v2));
  if (std::fabs(s) <= 1e-12 * scale)
    throw InputError("complete_symplectic_basis: <v1, v2> = 0 (isotropic completion not provided)");

  std::vector<Vec<double>> es{v1}, fs;
  Vec<double> f1 = v2;
  for (double& x : f1) x /= s;
  fs.push_back(f1);

  std::vector<Vec<double>> pool;
  for (std::size_t k = 0; k < 2 * n; ++k) pool.push_back(basis_vector<double>(2 * n, k));
  if (order == CompletionOrder::reverse) std::reverse(pool.begin(), pool.end());

  auto project_all = [&](std::size_t from_pair) {
    for (auto& w : pool)
      for (std::size_t p = from_pair; p < es.size(); ++p) project_out(w, es[p], fs[p]);
  };
  project_all(0);

  while (es.size() < n) {
    // First surviving candidate becomes e; its best partner (largest pairing) becomes f.
    std::size_t ie = pool.size();
    for (std::size_t k = 0; k < pool.size(); ++k)
      if (norm(pool[k]) >= 1e-12) {
        ie = k;
        break;
      }
    if (ie == pool.size()) throw InputError("complete_symplectic_basis: degenerate completion");
    Vec<double> e = pool[ie];
    const double en = norm(e);
    for (double& x : e) x /= en;
    std::size_t jf = pool.size();
    double best = 0;
    for (std::size_t k = 0; k < pool.size(); ++k) {
      if (k == ie) continue;
      const double p = std::fabs(symplectic_form(e, pool[k]));
      if (p > best + 1e-12) {
        best = p;
        jf = k;
      }
    }
    if (jf == pool.size() || best < 1e-12) throw InputError("complete_symplectic_basis: degenerate completion");
    Vec<double> f = pool[jf];
    const double ef = symplectic_form(e, f);
    for (double& x : f) x /= ef;
    es.push_back(e);
    fs.push_back(f);
    pool.erase(pool.begin() + static_cast<std::ptrdiff_t>(std::max(ie, jf)));
    pool.erase(pool.begin() + static_cast<std::ptrdiff_t>(std::min(ie, jf)));
    project_all(es.size() - 1);
  }

  std::vector<Vec<double>> cols(es);
  cols.insert(cols.end(), fs.begin(), fs.end());
  Matrix<double> g = Matrix<double>::from_columns(cols);
  const SymplecticCheck c = is_symplectic(g, 1e-9 * std::max(1.0, max_abs(g) * max_abs(g)));
  if (!c.ok) throw InputError("complete_symplectic_basis: completion lost symplecticity (ill-conditioned input)");
  return SymplecticMatrix<double>::trusted(std::move(g));
}

}  // namespace symlat
