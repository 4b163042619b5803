#pragma once

#include <string>
#include <vector>

#include "symlat/rng.hpp"
#include "symlat/symplectic.hpp"

namespace symlat {

// Ball B(0, R), symplectic ellipsoid g B(0, R), or centered box with given half-widths.
class RegionSpec {
 public:
  enum class Kind { ball, ellipsoid, box };

  static RegionSpec ball(std::size_t n, double radius);
  static RegionSpec ball_with_volume(std::size_t n, double volume);
  static RegionSpec ellipsoid(const SymplecticMatrix<double>& g, double radius);
  static RegionSpec box(std::vector<double> half_widths);
  static RegionSpec cube_with_volume(std::size_t n, double volume);

  Kind kind() const { return kind_; }
  std::size_t n() const { return n_; }
  std::size_t dim() const { return 2 * n_; }
  double radius() const { return radius_; }
  const Matrix<double>& g() const { return g_; }
  const Matrix<double>& g_inv() const { return g_inv_; }
  const std::vector<double>& half_widths() const { return half_widths_; }

  bool contains(const double* x) const;
  bool contains(const Vec<double>& x) const { return contains(x.data()); }
  double volume() const;
  double circumradius() const;
  // Uniform sample from the region.
  void sample(Rng& rng, double* out) const;
  // The same region scaled by c > 0.
  RegionSpec scaled(double c) const;
  std::string describe() const;

 private:
  Kind kind_ = Kind::ball;
  std::size_t n_ = 1;
  double radius_ = 1.0;
  Matrix<double> g_, g_inv_;
  std::vector<double> half_widths_;
  double circumradius_ = 1.0;
};

double unit_ball_volume(std::size_t dim);

// Region grammar: "ball:r=2.5", "ball:vol=1000", "box:vol=1000", "box:w=1,2",
// "ellipse:vol=1000,stretch=4,angle=0.3" (symplectic stretch of the first pair, then rotation).
RegionSpec parse_region(const std::string& text, std::size_t n);

// Ladder grammar: "<shape>:vol=v1;v2;v3[,extra=...]" (or r=r1;r2;...) expands to one region per rung.
std::vector<RegionSpec> parse_family(const std::string& text, std::size_t n);

}  // namespace symlat
