#pragma once

#include <cmath>
#include <string>
#include <vector>

#include "symlat/matrix.hpp"

namespace symlat {

// Coordinates are (x_1..x_n, y_1..y_n); e^i is index i-1 and f^i is index n+i-1.

template <class T>
std::size_t half_dim(const Vec<T>& v) {
  require(!v.empty() && v.size() % 2 == 0, "vector length must be a positive even number");
  return v.size() / 2;
}

template <class T>
T symplectic_form(const Vec<T>& u, const Vec<T>& v) {
  require(u.size() == v.size(), "symplectic_form: dimension mismatch");
  const std::size_t n = half_dim(u);
  T s(0);
  for (std::size_t i = 0; i < n; ++i) s += u[i] * v[n + i] - u[n + i] * v[i];
  return s;
}

// tau(x, y) = (y, -x), so that <u, v> = [u, tau(v)].
template <class T>
Vec<T> tau(const Vec<T>& v) {
  const std::size_t n = half_dim(v);
  Vec<T> r(2 * n);
  for (std::size_t i = 0; i < n; ++i) {
    r[i] = v[n + i];
    r[n + i] = -v[i];
  }
  return r;
}

template <class T>
Vec<T> basis_vector(std::size_t dim, std::size_t index) {
  Vec<T> v(dim, T(0));
  v.at(index) = T(1);
  return v;
}

// J = [[0, I], [-I, 0]].
template <class T>
Matrix<T> standard_form(std::size_t n) {
  Matrix<T> j(2 * n, 2 * n);
  for (std::size_t i = 0; i < n; ++i) {
    j(i, n + i) = T(1);
    j(n + i, i) = T(-1);
  }
  return j;
}

struct SymplecticCheck {
  bool ok = false;
  std::vector<std::string> violations;  // failed block equations
  double residual = 0.0;                // max |M^T J M - J| entry
  explicit operator bool() const { return ok; }
};

SymplecticCheck is_symplectic(const Matrix<Int>& m);
SymplecticCheck is_symplectic(const Matrix<Rational>& m);
SymplecticCheck is_symplectic(const Matrix<double>& m, double tol = 1e-9);

// -J M^T J, valid for any symplectic M.
template <class T>
Matrix<T> symplectic_inverse(const Matrix<T>& m) {
  const std::size_t n = m.rows() / 2;
  const Matrix<T> j = standard_form<T>(n);
  return -(j * m.transpose() * j);
}

// A 2n x 2n matrix carrying a verified symplectic certificate.
template <class T>
class SymplecticMatrix {
 public:
  SymplecticMatrix() = default;

  // Validates; throws InputError if the matrix is not symplectic.
  explicit SymplecticMatrix(Matrix<T> m) : m_(std::move(m)) {
    require(m_.square() && m_.rows() % 2 == 0 && m_.rows() > 0, "symplectic matrix must be 2n x 2n");
    const SymplecticCheck c = is_symplectic(m_);
    if (!c.ok) {
      std::string msg = "matrix is not symplectic:";
      for (const auto& v : c.violations) msg += " " + v + ";";
      throw InputError(msg);
    }
  }

  static SymplecticMatrix identity(std::size_t n) { return trusted(Matrix<T>::identity(2 * n)); }

  std::size_t n() const { return m_.rows() / 2; }
  ScalarRing scalar_ring() const { return ring_of<T>(); }
  const Matrix<T>& matrix() const { return m_; }
  const T& operator()(std::size_t i, std::size_t j) const { return m_(i, j); }

  SymplecticMatrix operator*(const SymplecticMatrix& o) const { return trusted(m_ * o.m_); }
  Vec<T> operator*(const Vec<T>& v) const { return m_ * v; }
  SymplecticMatrix inverse() const { return trusted(symplectic_inverse(m_)); }
  bool operator==(const SymplecticMatrix& o) const { return m_ == o.m_; }

  // For values produced by closed operations on verified inputs.
  static SymplecticMatrix trusted(Matrix<T> m) {
    SymplecticMatrix s;
    s.m_ = std::move(m);
    return s;
  }

 private:
  Matrix<T> m_;
};

enum class GeneratorKind { upper, lower, block_diag };

std::string to_string(GeneratorKind k);

// upper: [[I, S], [0, I]]; lower: [[I, 0], [S, I]] with S symmetric.
// block_diag: [[g1^{-T}, 0], [0, g1]] with g1 invertible (det +-1 over Int).
SymplecticMatrix<Int> make_generator(GeneratorKind kind, const Matrix<Int>& payload);
SymplecticMatrix<Rational> make_generator(GeneratorKind kind, const Matrix<Rational>& payload);
SymplecticMatrix<double> make_generator(GeneratorKind kind, const Matrix<double>& payload);

// Order in which the remaining standard basis vectors seed the Gram-Schmidt completion.
enum class CompletionOrder { forward, reverse };

// Real symplectic g with g e^1 = v1 and g f^1 = v2 / <v1, v2>.
SymplecticMatrix<double> complete_symplectic_basis(const Vec<double>& v1, const Vec<double>& v2,
                                                   CompletionOrder order = CompletionOrder::forward);

}  // namespace symlat
