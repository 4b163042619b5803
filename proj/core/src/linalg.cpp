#include <Eigen/Dense>

#include <cmath>

#include "symlat/matrix.hpp"

namespace symlat {

std::string to_string(ScalarRing r) {
  switch (r) {
    case ScalarRing::integer: return "integer";
    case ScalarRing::rational: return "rational";
    case ScalarRing::real: return "real";
  }
  return "?";
}

Int parse_int(const std::string& s) {
  Int v;
  if (s.empty() || v.set_str(s, 10) != 0) throw InputError("not an integer: '" + s + "'");
  return v;
}

namespace {

Eigen::MatrixXd to_eigen(const Matrix<double>& m) {
  Eigen::MatrixXd e(m.rows(), m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) e(i, j) = m(i, j);
  return e;
}

Matrix<double> from_eigen(const Eigen::MatrixXd& e) {
  Matrix<double> m(e.rows(), e.cols());
  for (Eigen::Index i = 0; i < e.rows(); ++i)
    for (Eigen::Index j = 0; j < e.cols(); ++j) m(i, j) = e(i, j);
  return m;
}

}  // namespace

Int determinant(const Matrix<Int>& m) {
  require(m.square(), "determinant of a non-square matrix");
  const std::size_t n = m.rows();
  if (n == 0) return 1;
  Matrix<Int> a = m;
  Int sign = 1, prev = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (a(k, k) == 0) {
      std::size_t p = k + 1;
      while (p < n && a(p, k) == 0) ++p;
      if (p == n) return 0;
      for (std::size_t j = 0; j < n; ++j) std::swap(a(k, j), a(p, j));
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j) {
        Int t = a(i, j) * a(k, k) - a(i, k) * a(k, j);
        mpz_divexact(t.get_mpz_t(), t.get_mpz_t(), prev.get_mpz_t());
        a(i, j) = t;
      }
    }
    prev = a(k, k);
  }
  return sign * a(n - 1, n - 1);
}

Rational determinant(const Matrix<Rational>& m) {
  require(m.square(), "determinant of a non-square matrix");
  const std::size_t n = m.rows();
  Matrix<Rational> a = m;
  Rational det = 1;
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t p = k;
    while (p < n && a(p, k) == 0) ++p;
    if (p == n) return 0;
    if (p != k) {
      for (std::size_t j = 0; j < n; ++j) std::swap(a(k, j), a(p, j));
      det = -det;
    }
    det *= a(k, k);
    for (std::size_t i = k + 1; i < n; ++i) {
      if (a(i, k) == 0) continue;
      Rational f = a(i, k) / a(k, k);
      for (std::size_t j = k; j < n; ++j) a(i, j) -= f * a(k, j);
    }
  }
  return det;
}

double determinant(const Matrix<double>& m) {
  require(m.square(), "determinant of a non-square matrix");
  return to_eigen(m).partialPivLu().determinant();
}

Matrix<Rational> inverse(const Matrix<Rational>& m) {
  require(m.square(), "inverse of a non-square matrix");
  const std::size_t n = m.rows();
  Matrix<Rational> a = m;
  Matrix<Rational> inv = Matrix<Rational>::identity(n);
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t p = k;
    while (p < n && a(p, k) == 0) ++p;
    require(p < n, "inverse: singular matrix");
    if (p != k)
      for (std::size_t j = 0; j < n; ++j) {
        std::swap(a(k, j), a(p, j));
        std::swap(inv(k, j), inv(p, j));
      }
    const Rational piv = a(k, k);
    for (std::size_t j = 0; j < n; ++j) {
      a(k, j) /= piv;
      inv(k, j) /= piv;
    }
    for (std::size_t i = 0; i < n; ++i) {
      if (i == k || a(i, k) == 0) continue;
      const Rational f = a(i, k);
      for (std::size_t j = 0; j < n; ++j) {
        a(i, j) -= f * a(k, j);
        inv(i, j) -= f * inv(k, j);
      }
    }
  }
  return inv;
}

Matrix<double> inverse(const Matrix<double>& m) {
  require(m.square(), "inverse of a non-square matrix");
  const auto lu = to_eigen(m).fullPivLu();
  require(lu.isInvertible(), "inverse: singular matrix");
  return from_eigen(lu.inverse());
}

Matrix<Int> inverse_unimodular(const Matrix<Int>& m) {
  const Int det = determinant(m);
  require(det == 1 || det == -1, "matrix is not unimodular (det != +-1)");
  const Matrix<Rational> inv = inverse(to_rational(m));
  Matrix<Int> r(m.rows(), m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) r(i, j) = to_int(inv(i, j));
  return r;
}

Matrix<Rational> to_rational(const Matrix<Int>& m) {
  Matrix<Rational> r(m.rows(), m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) r(i, j) = Rational(m(i, j));
  return r;
}

Matrix<double> to_double(const Matrix<Int>& m) {
  Matrix<double> r(m.rows(), m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) r(i, j) = m(i, j).get_d();
  return r;
}

Matrix<double> to_double(const Matrix<Rational>& m) {
  Matrix<double> r(m.rows(), m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) r(i, j) = m(i, j).get_d();
  return r;
}

double operator_norm(const Matrix<double>& m) {
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(to_eigen(m));
  return svd.singularValues()(0);
}

double max_abs(const Matrix<double>& m) {
  double r = 0;
  for (double x : m.data()) r = std::max(r, std::fabs(x));
  return r;
}

}  // namespace symlat
