#pragma once

#include <cstdint>
#include <string>

#include "symlat/rng.hpp"
#include "symlat/symplectic.hpp"

namespace symlat {

enum class Provenance { exact_haar_n1, siegel_approx, user_supplied };

std::string to_string(Provenance p);

// Lattice nu^{1/2} g Z^{2n} with g symplectic and nu in (0, 1].
struct LatticeSample {
  std::size_t n = 1;
  SymplecticMatrix<double> g;
  double nu = 1.0;
  Provenance provenance = Provenance::user_supplied;
  std::uint64_t seed = 0;
  std::uint64_t index = 0;
  double height = 0.0;  // y of the fundamental-domain point (n = 1)

  Matrix<double> basis() const;  // nu^{1/2} g
};

// Exact Haar sample of SL(2, R)/SL(2, Z) (nu = 1).
LatticeSample sample_lattice_n1(Rng& rng);
// The same conditioned on the height y lying in [y_lo, y_hi).
LatticeSample sample_lattice_n1(Rng& rng, double y_lo, double y_hi);
// Haar probability that y >= t.
double n1_height_tail(double t);

// Approximate Haar sample from a truncated Siegel set, n in {2, 3} (nu = 1).
LatticeSample sample_lattice_siegel(std::size_t n, Rng& rng);

// Cone sample: unimodular part from the appropriate sampler and nu uniform in (0, 1].
LatticeSample sample_cone(std::size_t n, Rng& rng);

// Sample for stream `index` under `seed`, optionally on the cone.
LatticeSample sample_indexed(std::size_t n, std::uint64_t seed, std::uint64_t index, bool cone);

// Siegel set truncation: t_1 >= siegel_min_height.
inline constexpr double siegel_min_height = 1e-3;

}  // namespace symlat
