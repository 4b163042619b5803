#pragma once

#include <cstdint>
#include <memory>
#include <vector>

#include "symlat/region.hpp"

namespace symlat {

struct ReducedBasis {
  Matrix<double> basis;      // columns b_j = original basis * U
  Matrix<double> transform;  // integer-valued unimodular U
};

// LLL reduction of the columns of a real basis (delta = 0.99).
ReducedBasis lll_reduce(const Matrix<double>& basis, double delta = 0.99);

struct EnumerationOptions {
  std::uint64_t budget = 10'000'000;  // maximum number of listed points
};

using IntPoint = std::vector<long long>;

// All z in Z^d with |g z| <= R, including 0; BudgetExceeded if more than budget points.
std::vector<IntPoint> enumerate_points(const Matrix<double>& g, double R, const EnumerationOptions& opt = {});

// Counts points of L Z^d inside a region: Fincke-Pohst over the enclosing ball with the
// innermost coordinate counted as an interval.
class LatticeCounter {
 public:
  LatticeCounter(const Matrix<double>& basis, const RegionSpec& region);

  // Number of z (including 0) with L z in region / k.
  std::uint64_t count(double k = 1.0) const;
  // Number of primitive z with L z in region, by Moebius inversion over k.
  std::uint64_t count_primitive() const;
  // Lower bound for the shortest nonzero vector (min Gram-Schmidt norm).
  double min_gs_norm() const { return min_gs_; }
  // Enumerate z (original coordinates) with L z in region / k.
  std::vector<IntPoint> list(double k = 1.0, std::uint64_t budget = 10'000'000) const;

  static constexpr std::uint64_t node_budget = 4'000'000'000ULL;

 private:
  template <class Visit>
  void walk(double k, Visit&& visit) const;

  std::size_t d_;
  RegionSpec region_;
  Matrix<double> b_;   // reduced basis in the region's ball/box frame
  Matrix<double> u_;   // unimodular transform back to original coordinates
  std::vector<double> r_;  // upper Cholesky factor, row-major d x d
  double radius_;      // enclosing radius in the transformed frame
  double min_gs_;
};

int mobius(std::uint64_t k);

}  // namespace symlat
