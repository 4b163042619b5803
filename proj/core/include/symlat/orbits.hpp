#pragma once

#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "symlat/symplectic.hpp"

namespace symlat {

// Ordered pair of primitive, linearly independent vectors in Z^{2n}.
class PrimitivePair {
 public:
  static PrimitivePair make(Vec<Int> u, Vec<Int> v);

  std::size_t n() const { return u_.size() / 2; }
  const Vec<Int>& u() const { return u_; }
  const Vec<Int>& v() const { return v_; }
  PrimitivePair transformed(const Matrix<Int>& g) const;
  bool operator==(const PrimitivePair& o) const { return u_ == o.u_ && v_ == o.v_; }

 private:
  PrimitivePair(Vec<Int> u, Vec<Int> v) : u_(std::move(u)), v_(std::move(v)) {}
  Vec<Int> u_, v_;
};

bool is_primitive(const Vec<Int>& v);

// isotropic: s = 0 (n >= 2 only); unit: d = 1; planar: d = |s| > 1; generic otherwise.
enum class OrbitKind { generic, unit, planar, isotropic };

std::string to_string(OrbitKind k);

struct OrbitClass {
  std::size_t n = 0;
  Int s;  // <u, v>
  Int d;  // gcd of the 2x2 minors of (u v)
  Int a;  // in [0, d)
  OrbitKind kind = OrbitKind::generic;

  bool operator==(const OrbitClass& o) const {
    return n == o.n && s == o.s && d == o.d && a == o.a && kind == o.kind;
  }
  bool operator!=(const OrbitClass& o) const { return !(*this == o); }
};

OrbitKind kind_for(const Int& s, const Int& d);

enum class StepKind { upper, lower, block_diag, explicit_matrix };

std::string to_string(StepKind k);

// One generator application; payload is n x n (upper/lower/block_diag) or 2n x 2n.
struct Step {
  StepKind kind;
  Matrix<Int> payload;
  std::string note;
};

Matrix<Int> step_matrix(const Step& step, std::size_t n);

struct ReductionWitness {
  SymplecticMatrix<Int> gamma;  // gamma * (u, v) = canonical
  PrimitivePair canonical;
  std::vector<Step> steps;
  OrbitClass orbit;
  Int d_prime;  // coefficient of f^n after concentrating pairs 2..n (0 on the planar branch)
};

Int minors_gcd(const PrimitivePair& p);

// Canonical representative: (e^1, a e^1 + s f^1) when d = |s| != 0,
// otherwise (e^1, a e^1 + s f^1 + d f^n).
PrimitivePair canonical_pair(const OrbitClass& c);

// Builds a validated class from (n, s, d, a), reducing a.
OrbitClass make_orbit_class(std::size_t n, const Int& s, const Int& d, const Int& a);

SymplecticMatrix<Int> move_to_e1(const Vec<Int>& u);
ReductionWitness reduce_pair(const PrimitivePair& p);
OrbitClass orbit_invariants(const PrimitivePair& p);

struct SameOrbitResult {
  bool same = false;
  std::optional<SymplecticMatrix<Int>> witness;  // witness * p1 = p2
};

SameOrbitResult same_orbit(const PrimitivePair& p1, const PrimitivePair& p2);

// T fixes e^1 and sends the canonical second vector to s f^1; entries in Z[1/s].
SymplecticMatrix<Rational> transporter_T(const OrbitClass& c);

// Check that a witness reproduces its canonical pair from p and is in canonical shape.
bool verify_witness(const PrimitivePair& p, const ReductionWitness& w);

// Random word of integer generators (u/l with elementary symmetric S, small block moves).
SymplecticMatrix<Int> random_symplectic_word(std::size_t n, std::size_t length, std::mt19937_64& rng,
                                             long max_coeff = 3);
PrimitivePair random_primitive_pair(std::size_t n, long bound, std::mt19937_64& rng);

}  // namespace symlat
