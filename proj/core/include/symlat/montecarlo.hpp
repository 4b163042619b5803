#pragma once

#include <cstdint>
#include <vector>

#include "symlat/experiment.hpp"
#include "symlat/geometry.hpp"
#include "symlat/lattice.hpp"
#include "symlat/sampling.hpp"

namespace symlat {

enum class CountMethod { interval, enumerate };

// Number of z (primitive if requested) with nu^{1/2} g z in B.
std::uint64_t siegel_count(const LatticeSample& sample, const RegionSpec& B, bool primitive,
                           CountMethod method = CountMethod::interval);

// nu^n times the primitive count.
double h_statistic(const LatticeSample& sample, const RegionSpec& B);

struct MonteCarloOptions {
  std::uint64_t samples = 2000;
  std::uint64_t seed = 1;
};

// Cone mean of h against vol(B)/zeta(2n).
ExperimentRecord mean_experiment(std::size_t n, const RegionSpec& B, const MonteCarloOptions& opt);

struct SecondMomentOptions {
  std::uint64_t samples = 20000;
  std::uint64_t seed = 1;
  KLConvention convention = KLConvention::primitive_pm;
  std::uint64_t kl_cutoff = 64;
  double smax_factor = 4.0;               // S_max = smax_factor * circumradius^2
  std::uint64_t gtilde_samples = 20000;   // per s when no closed form applies
  bool unit_determinant = true;           // also report the nu = 1 variance
  bool stratified = true;                 // n = 1: stratify the cusp height with Neyman allocation
};

// Monte Carlo E[(h - vol/zeta)^2] over the cone versus
// sum_{s != 0} a(|s|) G~(s) + dependent pairs - (vol/zeta)^2.
ExperimentRecord second_moment_experiment(std::size_t n, const RegionSpec& B, const SecondMomentOptions& opt);

struct FormulaSide {
  double independent = 0.0;   // sum_{s != 0} a(|s|) G~(s)
  double independent_se = 0.0;
  double tail = 0.0;          // contribution of |s| > S_max
  double dependent = 0.0;
  double dependent_tail = 0.0;
  double mean_sq = 0.0;       // (vol/zeta)^2
  double prediction = 0.0;    // independent + dependent - mean_sq
  std::uint64_t smax = 0;
};

FormulaSide second_moment_formula(std::size_t n, const RegionSpec& B, const SecondMomentOptions& opt);

struct DiscrepancyOptions {
  std::uint64_t lattices = 50;
  std::uint64_t seed = 1;
};

double discrepancy(std::uint64_t primitive_count, double volume, double covolume, std::size_t n);

// D per rung and log-log slope for each sampled lattice; aggregate median slope.
ExperimentRecord discrepancy_series(std::size_t n, const std::vector<RegionSpec>& family,
                                    const DiscrepancyOptions& opt);
// Same for a fixed lattice basis.
ExperimentRecord discrepancy_series(const LatticeSample& lattice, const std::vector<RegionSpec>& family);

// Sample listing: one row per sample with the basis entries.
ExperimentRecord sample_experiment(std::size_t n, std::uint64_t count, std::uint64_t seed, bool cone);

}  // namespace symlat
