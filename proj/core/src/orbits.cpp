#include "symlat/orbits.hpp"

#include <algorithm>

namespace symlat {

bool is_primitive(const Vec<Int>& v) {
  Int g = 0;
  for (const auto& x : v) g = gcd(g, x);
  return g == 1;
}

PrimitivePair PrimitivePair::make(Vec<Int> u, Vec<Int> v) {
  require(u.size() == v.size(), "primitive pair: dimension mismatch");
  half_dim(u);
  require(is_primitive(u), "primitive pair: first vector is not primitive");
  require(is_primitive(v), "primitive pair: second vector is not primitive");
  bool independent = false;
  for (std::size_t i = 0; i < u.size() && !independent; ++i)
    for (std::size_t j = i + 1; j < u.size() && !independent; ++j)
      if (u[i] * v[j] - u[j] * v[i] != 0) independent = true;
  require(independent, "primitive pair: vectors are linearly dependent");
  return PrimitivePair(std::move(u), std::move(v));
}

PrimitivePair PrimitivePair::transformed(const Matrix<Int>& g) const { return make(g * u_, g * v_); }

std::string to_string(OrbitKind k) {
  switch (k) {
    case OrbitKind::generic: return "generic";
    case OrbitKind::unit: return "unit";
    case OrbitKind::planar: return "planar";
    case OrbitKind::isotropic: return "isotropic";
  }
  return "?";
}

std::string to_string(StepKind k) {
  switch (k) {
    case StepKind::upper: return "upper";
    case StepKind::lower: return "lower";
    case StepKind::block_diag: return "block_diag";
    case StepKind::explicit_matrix: return "explicit";
  }
  return "?";
}

OrbitKind kind_for(const Int& s, const Int& d) {
  if (s == 0) return OrbitKind::isotropic;
  if (d == 1) return OrbitKind::unit;
  if (d == abs(s)) return OrbitKind::planar;
  return OrbitKind::generic;
}

Matrix<Int> step_matrix(const Step& step, std::size_t n) {
  switch (step.kind) {
    case StepKind::upper: return make_generator(GeneratorKind::upper, step.payload).matrix();
    case StepKind::lower: return make_generator(GeneratorKind::lower, step.payload).matrix();
    case StepKind::block_diag: return make_generator(GeneratorKind::block_diag, step.payload).matrix();
    case StepKind::explicit_matrix:
      require(step.payload.rows() == 2 * n, "explicit step has wrong size");
      return step.payload;
  }
  return {};
}

Int minors_gcd(const PrimitivePair& p) {
  const auto& u = p.u();
  const auto& v = p.v();
  Int g = 0;
  for (std::size_t i = 0; i < u.size(); ++i)
    for (std::size_t j = i + 1; j < u.size(); ++j) g = gcd(g, u[i] * v[j] - u[j] * v[i]);
  return g;
}

OrbitClass make_orbit_class(std::size_t n, const Int& s, const Int& d, const Int& a) {
  require(n >= 1, "orbit class: n must be positive");
  require(d >= 1, "orbit class: d must be positive");
  if (s == 0) {
    require(n >= 2, "orbit class: s = 0 requires n >= 2");
  } else {
    require(divides(d, s), "orbit class: d must divide s");
    if (n == 1) require(d == abs(s), "orbit class: for n = 1, d = |s|");
  }
  OrbitClass c;
  c.n = n;
  c.s = s;
  c.d = d;
  c.a = mod_nonneg(a, d);
  require(gcd(c.a, d) == 1 || d == 1, "orbit class: gcd(a, d) must be 1");
  if (d == 1) c.a = 0;
  c.kind = kind_for(s, d);
  return c;
}

PrimitivePair canonical_pair(const OrbitClass& c) {
  const std::size_t n = c.n;
  Vec<Int> u(2 * n, Int(0)), v(2 * n, Int(0));
  u[0] = 1;
  v[0] = c.a;
  v[n] = c.s;
  if (!(c.s != 0 && c.d == abs(c.s))) v[2 * n - 1] += c.d;
  return PrimitivePair::make(std::move(u), std::move(v));
}

namespace {

// Applies integer symplectic generators to the columns of [gamma | tracked vectors].
class Reducer {
 public:
  Reducer(std::size_t n, const std::vector<const Vec<Int>*>& vecs) : n_(n), w_(2 * n, 2 * n + vecs.size()) {
    for (std::size_t i = 0; i < 2 * n; ++i) w_(i, i) = 1;
    for (std::size_t k = 0; k < vecs.size(); ++k)
      for (std::size_t i = 0; i < 2 * n; ++i) w_(i, 2 * n + k) = (*vecs[k])[i];
  }

  Int& x(std::size_t vec, std::size_t i) { return w_(i, 2 * n_ + vec); }
  Int& y(std::size_t vec, std::size_t i) { return w_(n_ + i, 2 * n_ + vec); }
  Vec<Int> vec(std::size_t k) const { return w_.column(2 * n_ + k); }
  Matrix<Int> gamma() const { return w_.block(0, 0, 2 * n_, 2 * n_); }
  std::vector<Step>& steps() { return steps_; }

  // x += S y with S = c (E_ij + E_ji), or c E_ii.
  void upper(std::size_t i, std::size_t j, const Int& c, const char* note) {
    if (c == 0) return;
    add_row(i, n_ + j, c);
    if (i != j) add_row(j, n_ + i, c);
    steps_.push_back({StepKind::upper, sym(i, j, c), note});
  }
  // y += S x.
  void lower(std::size_t i, std::size_t j, const Int& c, const char* note) {
    if (c == 0) return;
    add_row(n_ + i, j, c);
    if (i != j) add_row(n_ + j, i, c);
    steps_.push_back({StepKind::lower, sym(i, j, c), note});
  }
  // x += S y for a general symmetric S.
  void upper(const Matrix<Int>& s, const char* note) {
    for (std::size_t i = 0; i < n_; ++i)
      for (std::size_t j = 0; j < n_; ++j)
        if (s(i, j) != 0) add_row(i, n_ + j, s(i, j));
    steps_.push_back({StepKind::upper, s, note});
  }
  // g1 = I + sum_j c_j E_{p j}: y_p += sum c_j y_j, x_j -= c_j x_p.
  void block_elementary(std::size_t p, const std::vector<std::pair<std::size_t, Int>>& cs, const char* note) {
    Matrix<Int> g1 = Matrix<Int>::identity(n_);
    for (const auto& [j, c] : cs) {
      if (c == 0) continue;
      add_row(n_ + p, n_ + j, c);
      add_row(j, p, -c);
      g1(p, j) = c;
    }
    steps_.push_back({StepKind::block_diag, g1, note});
  }
  // Signed permutation g1 (orthogonal, so g1^{-T} = g1): x <- g1 x, y <- g1 y.
  void block_signed_permutation(const Matrix<Int>& g1, const char* note) {
    Matrix<Int> m = Matrix<Int>::identity(2 * n_);
    m.set_block(0, 0, g1);
    m.set_block(n_, n_, g1);
    w_ = m * w_;
    steps_.push_back({StepKind::block_diag, g1, note});
  }
  void explicit_matrix(const Matrix<Int>& m, const char* note) {
    w_ = m * w_;
    steps_.push_back({StepKind::explicit_matrix, m, note});
  }
  // (x_i, y_i) -> (y_i, -x_i).
  void rotate(std::size_t i) {
    upper(i, i, 1, "rotate");
    lower(i, i, -1, "rotate");
    upper(i, i, 1, "rotate");
  }
  // (x_i, y_i) -> (-y_i, x_i).
  void rotate_inverse(std::size_t i) {
    upper(i, i, -1, "rotate");
    lower(i, i, 1, "rotate");
    upper(i, i, -1, "rotate");
  }

  // Euclid on one coordinate pair until y_i = 0.
  void pair_euclid(std::size_t k, std::size_t i) {
    while (y(k, i) != 0) {
      if (x(k, i) == 0) {
        rotate(i);
        return;
      }
      upper(i, i, -div_nonneg(x(k, i), y(k, i)), "euclid");
      if (x(k, i) == 0) {
        rotate(i);
        return;
      }
      lower(i, i, -div_nonneg(y(k, i), x(k, i)), "euclid");
    }
  }

  // Concentrates the window [lo, n) of vector k into +g e^{target}, g = gcd of the window.
  void concentrate(std::size_t k, std::size_t lo, std::size_t target) {
    for (std::size_t i = lo; i < n_; ++i) pair_euclid(k, i);
    for (;;) {
      std::size_t p = n_;
      std::size_t nonzero = 0;
      for (std::size_t i = lo; i < n_; ++i) {
        if (x(k, i) == 0) continue;
        ++nonzero;
        if (p == n_ || abs(x(k, i)) < abs(x(k, p))) p = i;
      }
      if (nonzero == 0) return;
      if (nonzero == 1) {
        const bool negative = x(k, p) < 0;
        if (p == target && !negative) return;
        Matrix<Int> g1 = Matrix<Int>::identity(n_);
        g1(p, p) = 0;
        g1(target, target) = 0;
        g1(target, p) = negative ? -1 : 1;
        if (p != target) g1(p, target) = 1;
        block_signed_permutation(g1, "permute");
        return;
      }
      std::vector<std::pair<std::size_t, Int>> cs;
      const Int xp = x(k, p);
      for (std::size_t j = lo; j < n_; ++j)
        if (j != p && x(k, j) != 0) cs.emplace_back(j, tdiv(x(k, j), xp));
      block_elementary(p, cs, "gl-euclid");
    }
  }

 private:
  Matrix<Int> sym(std::size_t i, std::size_t j, const Int& c) const {
    Matrix<Int> s(n_, n_);
    s(i, j) = c;
    s(j, i) = c;
    return s;
  }
  void add_row(std::size_t dst, std::size_t src, const Int& c) {
    for (std::size_t col = 0; col < w_.cols(); ++col)
      if (w_(src, col) != 0) w_(dst, col) += c * w_(src, col);
  }

  std::size_t n_;
  Matrix<Int> w_;
  std::vector<Step> steps_;
};

}  // namespace

SymplecticMatrix<Int> move_to_e1(const Vec<Int>& u) {
  const std::size_t n = half_dim(u);
  require(is_primitive(u), "move_to_e1: vector is not primitive");
  Reducer r(n, {&u});
  r.concentrate(0, 0, 0);
  return SymplecticMatrix<Int>::trusted(r.gamma());
}

ReductionWitness reduce_pair(const PrimitivePair& p) {
  const std::size_t n = p.n();
  Reducer r(n, {&p.u(), &p.v()});
  r.concentrate(0, 0, 0);

  // Pairs 2..n of the second vector into d' f^n.
  if (n >= 2) {
    bool shaped = r.y(1, n - 1) >= 0;
    for (std::size_t i = 1; i < n && shaped; ++i)
      if (r.x(1, i) != 0 || (i + 1 < n && r.y(1, i) != 0)) shaped = false;
    if (!shaped) {
      r.concentrate(1, 1, n - 1);
      if (r.x(1, n - 1) != 0) r.rotate_inverse(n - 1);
    }
  }
  const Int s = r.y(1, 0);
  const Int d_prime = n >= 2 ? Int(r.y(1, n - 1)) : Int(0);
  const Int d = n >= 2 ? gcd(s, d_prime) : Int(abs(s));

  if (s != 0 && d == abs(s)) {
    if (d_prime != 0) r.block_elementary(n - 1, {{0, -(d_prime / s)}}, "planar");
    const Int a = r.x(1, 0);
    r.upper(0, 0, -(a - mod_nonneg(a, s)) / s, "reduce-a");
  } else {
    if (d_prime != d) {
      const ExtGcd eg = ext_gcd(s, d_prime);  // s k + d' l = d
      const Int& k = eg.x;
      const Int& l = eg.y;
      const Int rr = d_prime / d;
      if (n == 2) {
        Matrix<Int> m{{1, 0, 0, k}, {0, rr, rr * k, rr * l - 1}, {0, 0, 1, 0}, {0, 1, k, l}};
        r.explicit_matrix(m, "gcd-step");
      } else {
        // Embedded on pairs (0, n-2, n-1), followed by u_S with S = r (E_{n-2,n-1} + E_{n-1,n-2}).
        const std::size_t idx[3] = {0, n - 2, n - 1};
        const Int m1[6][6] = {{1, 0, 0, 0, k, 0}, {0, 0, 0, 0, 0, -1}, {0, 0, 0, 0, -1, 0},
                              {0, 0, 0, 1, 0, 0}, {0, 0, 1, 0, l, 0},  {0, 1, 0, k, 0, l}};
        Matrix<Int> m = Matrix<Int>::identity(2 * n);
        for (std::size_t a = 0; a < 6; ++a)
          for (std::size_t b = 0; b < 6; ++b) {
            const std::size_t ra = a < 3 ? idx[a] : n + idx[a - 3];
            const std::size_t cb = b < 3 ? idx[b] : n + idx[b - 3];
            m(ra, cb) = m1[a][b];
          }
        r.explicit_matrix(m, "gcd-step");
        r.upper(n - 2, n - 1, rr, "gcd-step");
      }
    }
    const Int a = r.x(1, 0);
    const Int q = -(a - mod_nonneg(a, d)) / d;
    if (q != 0) {
      Matrix<Int> sm(n, n);
      sm(0, n - 1) += q;
      sm(n - 1, 0) += q;
      sm(n - 1, n - 1) -= q * (s / d);
      r.upper(sm, "reduce-a");
    }
  }

  ReductionWitness w{SymplecticMatrix<Int>::trusted(r.gamma()), PrimitivePair::make(r.vec(0), r.vec(1)),
                     std::move(r.steps()), OrbitClass{}, d_prime};
  w.orbit.n = n;
  w.orbit.s = s;
  w.orbit.d = d;
  w.orbit.a = w.canonical.v()[0];
  w.orbit.kind = kind_for(s, d);
  return w;
}

OrbitClass orbit_invariants(const PrimitivePair& p) { return reduce_pair(p).orbit; }

SameOrbitResult same_orbit(const PrimitivePair& p1, const PrimitivePair& p2) {
  SameOrbitResult res;
  if (p1.n() != p2.n()) return res;
  const ReductionWitness w1 = reduce_pair(p1);
  const ReductionWitness w2 = reduce_pair(p2);
  if (w1.orbit != w2.orbit) return res;
  res.same = true;
  res.witness = w2.gamma.inverse() * w1.gamma;
  return res;
}

SymplecticMatrix<Rational> transporter_T(const OrbitClass& c) {
  require(c.s != 0, "transporter_T: s = 0 has no transporter");
  const std::size_t n = c.n;
  const Rational s(c.s);
  Matrix<Rational> cm = Matrix<Rational>::identity(2 * n);
  cm(0, n) = Rational(c.a) / s;
  if (c.d != abs(c.s)) {
    // Columns of T^{-1}: e^n -> e^n - (d/s) e^1, f^1 -> (a/s) e^1 + f^1 + (d/s) f^n.
    cm(0, n - 1) = -Rational(c.d) / s;
    cm(2 * n - 1, n) = Rational(c.d) / s;
  }
  return SymplecticMatrix<Rational>(cm).inverse();
}

bool verify_witness(const PrimitivePair& p, const ReductionWitness& w) {
  if (!is_symplectic(w.gamma.matrix()).ok) return false;
  if (w.gamma * p.u() != w.canonical.u() || w.gamma * p.v() != w.canonical.v()) return false;
  Matrix<Int> prod = Matrix<Int>::identity(2 * p.n());
  for (const auto& st : w.steps) prod = step_matrix(st, p.n()) * prod;
  if (prod != w.gamma.matrix()) return false;
  if (w.orbit.s != 0 && !divides(w.orbit.d, w.orbit.s)) return false;
  return canonical_pair(w.orbit) == w.canonical;
}

SymplecticMatrix<Int> random_symplectic_word(std::size_t n, std::size_t length, std::mt19937_64& rng,
                                             long max_coeff) {
  std::uniform_int_distribution<std::size_t> pick_kind(0, n >= 2 ? 2 : 1);
  std::uniform_int_distribution<std::size_t> pick_index(0, n - 1);
  std::uniform_int_distribution<long> pick_coeff(1, max_coeff);
  std::uniform_int_distribution<int> coin(0, 1);
  Matrix<Int> g = Matrix<Int>::identity(2 * n);
  for (std::size_t step = 0; step < length; ++step) {
    const long c = pick_coeff(rng) * (coin(rng) ? 1 : -1);
    std::size_t i = pick_index(rng), j = pick_index(rng);
    Matrix<Int> payload(n, n);
    const std::size_t kind = pick_kind(rng);
    GeneratorKind gk;
    if (kind == 2) {
      while (j == i) j = pick_index(rng);
      payload = Matrix<Int>::identity(n);
      payload(i, j) = c;
      gk = GeneratorKind::block_diag;
    } else {
      payload(i, j) = c;
      payload(j, i) = c;
      gk = kind == 0 ? GeneratorKind::upper : GeneratorKind::lower;
    }
    g = make_generator(gk, payload).matrix() * g;
  }
  return SymplecticMatrix<Int>::trusted(std::move(g));
}

PrimitivePair random_primitive_pair(std::size_t n, long bound, std::mt19937_64& rng) {
  std::uniform_int_distribution<long> coord(-bound, bound);
  for (;;) {
    Vec<Int> u(2 * n), v(2 * n);
    for (auto& x : u) x = coord(rng);
    for (auto& x : v) x = coord(rng);
    if (!is_primitive(u) || !is_primitive(v)) continue;
    try {
      return PrimitivePair::make(std::move(u), std::move(v));
    } catch (const InputError&) {
    }
  }
}

}  // namespace symlat
