#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "symlat/region.hpp"

namespace symlat {

struct FrameAtX {
  Vec<double> x;
  Vec<double> y_star;          // <x, y_star> = 1
  std::vector<Vec<double>> ys; // 2n-1 vectors spanning {y : <x, y> = 0}; ys[0] = x
  // Rows of the inverse of (y_star | ys): coordinates (s, t) of a point.
  Matrix<double> coords;
};

FrameAtX frame_at(const Vec<double>& x, CompletionOrder order = CompletionOrder::forward);

struct Estimate {
  double value = 0.0;
  double std_error = 0.0;
  std::uint64_t samples = 0;
};

struct QuadratureOptions {
  std::uint64_t samples = 100000;
  std::uint64_t seed = 1;
  CompletionOrder order = CompletionOrder::forward;
};

// G(s) = integral over x in B and t of 1_B(s y*(x) + sum t_i y_i(x)).
Estimate G_integral(double s, const RegionSpec& B, const QuadratureOptions& opt);

// Cone average int_0^1 nu^w G(nu s) d nu; w = 1 is the weight produced by the cone measure.
Estimate G_tilde(double s, const RegionSpec& B, const QuadratureOptions& opt, double weight_exponent = 1.0);

// Closed forms for the disc of radius R in R^2.
double disc_G_exact(double s, double R);
// int_0^c u G(u) du.
double disc_G_moment(double c, double R);
double disc_G_tilde(double s, double R);

// vol(B)^2 * E |<x, y>|_+^{-delta} over independent uniform x, y in B.
Estimate condition_integral(const RegionSpec& B, double delta, const QuadratureOptions& opt);

// int_S int_B |<x, y>|_+^{-delta} / (m(S) m(B)^{1 - delta/2n}).
Estimate kernel_bound_check(const RegionSpec& S, const RegionSpec& B, double delta,
                            const QuadratureOptions& opt);

// Index-set conventions for the dependent-pairs sum.
//   primitive_pm: (k, l) in {(1, 1), (1, -1)}, weighted 1/zeta(2n) (primitive points only)
//   coprime_nonzero: all coprime (k, l) with k, l != 0, |k|, |l| <= K
//   coprime_positive: coprime k, l >= 1, k, l <= K
enum class KLConvention { primitive_pm, coprime_nonzero, coprime_positive };

std::string to_string(KLConvention c);
KLConvention parse_kl_convention(const std::string& s);

struct DependentTerm {
  double value = 0.0;
  double tail_bound = 0.0;  // infinite when the series diverges
  std::uint64_t terms = 0;
};

DependentTerm dependent_pairs_term(const RegionSpec& B, std::uint64_t K,
                                   KLConvention convention = KLConvention::primitive_pm);

// Riemann sum of G over s in [-smax, smax] with spacing h (closed form for n = 1 balls,
// Monte Carlo otherwise).
struct FubiniReport {
  double integral = 0.0;
  double std_error = 0.0;
  double volume_squared = 0.0;
  double relative_error = 0.0;
};

FubiniReport fubini_check(const RegionSpec& B, std::size_t grid_points, const QuadratureOptions& opt,
                          bool closed_form = true);

}  // namespace symlat
