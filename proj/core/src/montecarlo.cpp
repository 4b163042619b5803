#include "symlat/montecarlo.hpp"

#include <chrono>
#include <cmath>
#include <numeric>

#include "symlat/arithmetic.hpp"
#include "symlat/parallel.hpp"
#include "symlat/stats.hpp"
#include "symlat/zeta.hpp"

namespace symlat {

std::uint64_t siegel_count(const LatticeSample& sample, const RegionSpec& B, bool primitive, CountMethod method) {
  require(sample.n == B.n(), "siegel_count: lattice and region dimensions differ");
  require(sample.nu > 0 && sample.nu <= 1, "siegel_count: nu must lie in (0, 1]");
  const Matrix<double> basis = sample.basis();
  if (method == CountMethod::interval) {
    const LatticeCounter counter(basis, B);
    return primitive ? counter.count_primitive() : counter.count();
  }
  std::uint64_t total = 0;
  std::vector<double> x(B.dim());
  for (const IntPoint& z : enumerate_points(basis, B.circumradius())) {
    for (std::size_t i = 0; i < x.size(); ++i) {
      double s = 0;
      for (std::size_t j = 0; j < x.size(); ++j) s += basis(i, j) * static_cast<double>(z[j]);
      x[i] = s;
    }
    if (!B.contains(x)) continue;
    if (primitive) {
      long long g = 0;
      for (long long c : z) g = std::gcd(g, c);
      if (g != 1) continue;
    }
    ++total;
  }
  return total;
}

double h_statistic(const LatticeSample& sample, const RegionSpec& B) {
  return std::pow(sample.nu, static_cast<double>(sample.n)) * static_cast<double>(siegel_count(sample, B, true));
}

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

void common_parameters(ExperimentRecord& r, std::size_t n, const RegionSpec& B, std::uint64_t samples,
                       std::uint64_t seed) {
  r.add_parameter("n", std::to_string(n));
  r.add_parameter("region", B.describe());
  r.add_parameter("volume", format_double(B.volume()));
  r.add_parameter("samples", std::to_string(samples));
  r.add_parameter("seed", std::to_string(seed));
  r.add_parameter("sampler", n == 1 ? "exact_haar_n1" : "siegel_approx");
}

}  // namespace

ExperimentRecord mean_experiment(std::size_t n, const RegionSpec& B, const MonteCarloOptions& opt) {
  require(n == B.n(), "mean_experiment: region dimension does not match n");
  require(opt.samples >= 2, "mean_experiment: need at least 2 samples");
  const auto t0 = Clock::now();
  std::vector<LatticeSample> samples(opt.samples);
  std::vector<double> h(opt.samples);
  std::vector<std::uint64_t> counts(opt.samples);
  parallel_for(opt.samples, [&](std::size_t i) {
    samples[i] = sample_indexed(n, opt.seed, i, true);
    counts[i] = siegel_count(samples[i], B, true);
    h[i] = std::pow(samples[i].nu, static_cast<double>(n)) * static_cast<double>(counts[i]);
  });
  ExperimentRecord r;
  r.id = "mc-mean";
  common_parameters(r, n, B, opt.samples, opt.seed);
  r.columns = {"sample", "nu", "height", "count", "h"};
  for (std::size_t i = 0; i < opt.samples; ++i)
    r.rows.push_back({static_cast<std::int64_t>(i), samples[i].nu, samples[i].height,
                      static_cast<std::int64_t>(counts[i]), h[i]});
  const Moments m = Moments::of(h);
  const double z = zeta(2.0 * n);
  const double target = B.volume() / z;
  r.add_aggregate("mean", m.mean);
  r.add_aggregate("variance", m.variance);
  r.add_aggregate("std_error", m.std_error);
  r.add_aggregate("target", target);
  r.add_aggregate("ratio", m.mean / target);
  r.add_aggregate("deviation", std::fabs(m.mean / target - 1.0));
  r.wall_clock_seconds = seconds_since(t0);
  return r;
}

FormulaSide second_moment_formula(std::size_t n, const RegionSpec& B, const SecondMomentOptions& opt) {
  require(n == B.n(), "second_moment_formula: region dimension does not match n");
  require(opt.smax_factor >= 1.0, "second_moment_formula: smax factor must be >= 1");
  const int ni = static_cast<int>(n);
  const double z = zeta(2.0 * ni);
  const double vol = B.volume();
  const double rc = B.circumradius();
  FormulaSide f;
  f.smax = static_cast<std::uint64_t>(std::ceil(opt.smax_factor * rc * rc));
  const ArithmeticTable table(ni, std::max<std::uint64_t>(f.smax, 2));
  const bool closed = n == 1 && B.kind() != RegionSpec::Kind::box;

  std::vector<double> gt(f.smax + 1, 0.0), gse(f.smax + 1, 0.0);
  if (closed) {
    for (std::uint64_t s = 1; s <= f.smax; ++s) gt[s] = disc_G_tilde(static_cast<double>(s), B.radius());
  } else {
    parallel_for(f.smax, [&](std::size_t i) {
      const std::uint64_t s = i + 1;
      QuadratureOptions q;
      q.samples = opt.gtilde_samples;
      q.seed = opt.seed ^ (0x5bd1e995ULL * s);
      const Estimate e = G_tilde(static_cast<double>(s), B, q);
      gt[s] = e.value;
      gse[s] = e.std_error;
    });
  }
  CompensatedSum indep, head;
  double var = 0;
  for (std::uint64_t s = 1; s <= f.smax; ++s) {
    const double a = table.a_rational(s) / z;
    indep.add(2.0 * a * gt[s]);  // s and -s
    var += 4.0 * a * a * gse[s] * gse[s];
    head.add(table.a_rational(s) / (static_cast<double>(s) * s));
  }
  // For s >= circumradius^2, G~(s) = C / s^2 with C = int_0^{R^2} u G(u) du.
  const double C = closed ? disc_G_moment(B.radius() * B.radius(), B.radius())
                          : gt[f.smax] * static_cast<double>(f.smax) * static_cast<double>(f.smax);
  const double tail_sum = (zeta(2.0) / zeta(2.0 * ni + 1.0) - head.value()) / z;
  f.tail = 2.0 * C * tail_sum;
  f.independent = indep.value() + f.tail;
  f.independent_se = std::sqrt(var);
  const DependentTerm dep = dependent_pairs_term(B, opt.kl_cutoff, opt.convention);
  f.dependent = dep.value / (ni + 1.0);  // cone average of nu^{2n} vol(B / sqrt(nu)) = vol / (n + 1)
  f.dependent_tail = dep.tail_bound / (ni + 1.0);
  f.mean_sq = (vol / z) * (vol / z);
  f.prediction = f.independent + f.dependent - f.mean_sq;
  return f;
}

namespace {

struct MomentSample {
  double nu = 0, height = 0, h = 0, dev = 0, unit_dev = 0;
};

MomentSample moment_sample(LatticeSample s, const RegionSpec& B, double target, bool unit) {
  MomentSample m;
  m.nu = s.nu;
  m.height = s.height;
  m.h = h_statistic(s, B);
  m.dev = (m.h - target) * (m.h - target);
  if (unit) {
    s.nu = 1.0;
    const double c = static_cast<double>(siegel_count(s, B, true));
    m.unit_dev = (c - target) * (c - target);
  }
  return m;
}

struct Stratum {
  double lo = 0, hi = 0, mass = 0;
  std::vector<MomentSample> samples;
};

// Height strata [0, 1), [1, 4), [4, 16), ... up to 64 circumradius^2, then the rest of the cusp.
std::vector<Stratum> height_strata(double rc2) {
  std::vector<double> cuts{0.0, 1.0};
  const double top = 64.0 * std::max(rc2, 1.0);
  while (cuts.back() < top) cuts.push_back(cuts.back() * 4.0);
  cuts.push_back(INFINITY);
  std::vector<Stratum> out;
  for (std::size_t k = 0; k + 1 < cuts.size(); ++k) {
    Stratum st;
    st.lo = cuts[k];
    st.hi = cuts[k + 1];
    st.mass = n1_height_tail(st.lo) - (std::isinf(st.hi) ? 0.0 : n1_height_tail(st.hi));
    out.push_back(st);
  }
  return out;
}

struct Pooled {
  double mean = 0, se = 0;
};

template <class Get>
Pooled pool(const std::vector<Stratum>& strata, Get get) {
  Pooled p;
  double var = 0;
  for (const auto& st : strata) {
    std::vector<double> xs;
    for (const auto& m : st.samples) xs.push_back(get(m));
    const Moments mo = Moments::of(xs);
    p.mean += st.mass * mo.mean;
    var += st.mass * st.mass * mo.variance / static_cast<double>(xs.size());
  }
  p.se = std::sqrt(var);
  return p;
}

}  // namespace

ExperimentRecord second_moment_experiment(std::size_t n, const RegionSpec& B, const SecondMomentOptions& opt) {
  require(n == B.n(), "second_moment_experiment: region dimension does not match n");
  const auto t0 = Clock::now();
  const double z = zeta(2.0 * n);
  const double target = B.volume() / z;
  const bool stratified = opt.stratified && n == 1;

  std::vector<Stratum> strata;
  if (stratified) {
    strata = height_strata(B.circumradius() * B.circumradius());
    const std::uint64_t pilot = std::max<std::uint64_t>(opt.samples / (10 * strata.size()), 20);
    require(opt.samples >= 2 * pilot * strata.size(), "second_moment_experiment: too few samples for the strata");
    auto draw = [&](std::size_t k, std::size_t from, std::size_t to) {
      auto& st = strata[k];
      st.samples.resize(to);
      parallel_for(to - from, [&](std::size_t i) {
        const std::uint64_t j = from + i;
        Rng rng(opt.seed, (static_cast<std::uint64_t>(k) << 40) | j);
        LatticeSample s = sample_lattice_n1(rng, st.lo, st.hi);
        s.nu = rng.uniform_pos();
        st.samples[j] = moment_sample(s, B, target, opt.unit_determinant);
      });
    };
    for (std::size_t k = 0; k < strata.size(); ++k) draw(k, 0, pilot);
    // Neyman allocation of the remaining budget from the pilot spread of the squared deviation.
    std::vector<double> w(strata.size());
    double wsum = 0;
    for (std::size_t k = 0; k < strata.size(); ++k) {
      std::vector<double> xs;
      for (const auto& m : strata[k].samples) xs.push_back(m.dev);
      w[k] = strata[k].mass * std::sqrt(Moments::of(xs).variance);
      wsum += w[k];
    }
    const std::uint64_t rest = opt.samples - pilot * strata.size();
    std::uint64_t given = 0;
    for (std::size_t k = 0; k < strata.size(); ++k) {
      std::uint64_t extra = wsum > 0 ? static_cast<std::uint64_t>(std::floor(rest * w[k] / wsum)) : rest / strata.size();
      if (k + 1 == strata.size()) extra = rest - given;
      given += extra;
      draw(k, pilot, pilot + extra);
    }
  } else {
    require(opt.samples >= 2, "second_moment_experiment: need at least 2 samples");
    Stratum st;
    st.lo = 0;
    st.hi = INFINITY;
    st.mass = 1.0;
    st.samples.resize(opt.samples);
    parallel_for(opt.samples, [&](std::size_t i) {
      st.samples[i] = moment_sample(sample_indexed(n, opt.seed, i, true), B, target, opt.unit_determinant);
    });
    strata.push_back(std::move(st));
  }

  const FormulaSide f = second_moment_formula(n, B, opt);
  ExperimentRecord r;
  r.id = "mc-second-moment";
  common_parameters(r, n, B, opt.samples, opt.seed);
  r.add_parameter("kl_convention", to_string(opt.convention));
  r.add_parameter("kl_cutoff", std::to_string(opt.kl_cutoff));
  r.add_parameter("smax_factor", format_double(opt.smax_factor));
  r.add_parameter("estimator", stratified ? "height_stratified" : "plain");
  r.columns = {"stratum", "sample", "weight", "nu", "height", "h", "sq_dev", "unit_sq_dev"};
  for (std::size_t k = 0; k < strata.size(); ++k) {
    const double weight = strata[k].mass / static_cast<double>(strata[k].samples.size());
    for (std::size_t i = 0; i < strata[k].samples.size(); ++i) {
      const auto& m = strata[k].samples[i];
      r.rows.push_back({static_cast<std::int64_t>(k), static_cast<std::int64_t>(i), weight, m.nu, m.height, m.h,
                        m.dev, m.unit_dev});
    }
  }
  const Pooled dev = pool(strata, [](const MomentSample& m) { return m.dev; });
  const Pooled mh = pool(strata, [](const MomentSample& m) { return m.h; });
  r.add_aggregate("strata", static_cast<std::int64_t>(strata.size()));
  r.add_aggregate("mean_h", mh.mean);
  r.add_aggregate("mean_h_std_error", mh.se);
  r.add_aggregate("mc_second_moment", dev.mean);
  r.add_aggregate("mc_std_error", dev.se);
  r.add_aggregate("formula_independent", f.independent);
  r.add_aggregate("formula_independent_se", f.independent_se);
  r.add_aggregate("formula_tail", f.tail);
  r.add_aggregate("formula_dependent", f.dependent);
  r.add_aggregate("formula_dependent_tail", f.dependent_tail);
  r.add_aggregate("mean_squared", f.mean_sq);
  r.add_aggregate("formula_prediction", f.prediction);
  r.add_aggregate("smax", static_cast<std::int64_t>(f.smax));
  r.add_aggregate("ratio", dev.mean / f.prediction);
  if (opt.unit_determinant) {
    const Pooled u = pool(strata, [](const MomentSample& m) { return m.unit_dev; });
    r.add_aggregate("unit_second_moment", u.mean);
    r.add_aggregate("unit_std_error", u.se);
  }
  r.wall_clock_seconds = seconds_since(t0);
  return r;
}

double discrepancy(std::uint64_t primitive_count, double volume, double covolume, std::size_t n) {
  require(volume > 0 && covolume > 0, "discrepancy: volume and covolume must be positive");
  return std::fabs(static_cast<double>(primitive_count) / volume - 1.0 / (covolume * zeta(2.0 * n)));
}

namespace {

struct LatticeSeries {
  std::vector<std::uint64_t> counts;
  std::vector<double> D;
  double slope = 0.0;
};

LatticeSeries run_series(const LatticeSample& lattice, const std::vector<RegionSpec>& family) {
  require(family.size() >= 4, "discrepancy_series: need at least 4 rungs");
  const double covol = std::pow(lattice.nu, static_cast<double>(lattice.n));
  LatticeSeries s;
  std::vector<double> vols, ds;
  double prev = 0;
  for (const RegionSpec& B : family) {
    require(B.n() == lattice.n, "discrepancy_series: region dimension does not match lattice");
    require(B.volume() > prev, "discrepancy_series: family volumes must increase");
    prev = B.volume();
    const std::uint64_t c = siegel_count(lattice, B, true);
    const double D = discrepancy(c, B.volume(), covol, lattice.n);
    s.counts.push_back(c);
    s.D.push_back(D);
    if (D > 0) {
      vols.push_back(B.volume());
      ds.push_back(D);
    }
  }
  s.slope = vols.size() >= 2 ? loglog_slope(vols, ds) : 0.0;
  return s;
}

void family_parameters(ExperimentRecord& r, const std::vector<RegionSpec>& family) {
  std::string vols;
  for (const auto& B : family) vols += (vols.empty() ? "" : ";") + format_double(B.volume());
  r.add_parameter("family", family.empty() ? "" : family.front().describe());
  r.add_parameter("volumes", vols);
}

}  // namespace

ExperimentRecord discrepancy_series(std::size_t n, const std::vector<RegionSpec>& family, const DiscrepancyOptions& opt) {
  require(opt.lattices >= 1, "discrepancy_series: need at least one lattice");
  const auto t0 = Clock::now();
  std::vector<LatticeSeries> series(opt.lattices);
  parallel_for(opt.lattices, [&](std::size_t i) {
    series[i] = run_series(sample_indexed(n, opt.seed, i, false), family);
  });
  ExperimentRecord r;
  r.id = "mc-discrepancy";
  r.add_parameter("n", std::to_string(n));
  r.add_parameter("lattices", std::to_string(opt.lattices));
  r.add_parameter("seed", std::to_string(opt.seed));
  r.add_parameter("sampler", n == 1 ? "exact_haar_n1" : "siegel_approx");
  family_parameters(r, family);
  r.columns = {"lattice", "volume", "count", "discrepancy", "slope"};
  std::vector<double> slopes;
  for (std::size_t i = 0; i < series.size(); ++i) {
    for (std::size_t k = 0; k < family.size(); ++k)
      r.rows.push_back({static_cast<std::int64_t>(i), family[k].volume(), static_cast<std::int64_t>(series[i].counts[k]),
                        series[i].D[k], series[i].slope});
    slopes.push_back(series[i].slope);
  }
  r.add_aggregate("median_slope", median(slopes));
  r.add_aggregate("mean_slope", Moments::of(slopes).mean);
  r.wall_clock_seconds = seconds_since(t0);
  return r;
}

ExperimentRecord discrepancy_series(const LatticeSample& lattice, const std::vector<RegionSpec>& family) {
  const auto t0 = Clock::now();
  const LatticeSeries s = run_series(lattice, family);
  ExperimentRecord r;
  r.id = "mc-discrepancy-fixed";
  r.add_parameter("n", std::to_string(lattice.n));
  r.add_parameter("provenance", to_string(lattice.provenance));
  family_parameters(r, family);
  r.columns = {"volume", "count", "discrepancy"};
  for (std::size_t k = 0; k < family.size(); ++k)
    r.rows.push_back({family[k].volume(), static_cast<std::int64_t>(s.counts[k]), s.D[k]});
  r.add_aggregate("slope", s.slope);
  r.wall_clock_seconds = seconds_since(t0);
  return r;
}

ExperimentRecord sample_experiment(std::size_t n, std::uint64_t count, std::uint64_t seed, bool cone) {
  const auto t0 = Clock::now();
  std::vector<LatticeSample> samples(count);
  parallel_for(count, [&](std::size_t i) { samples[i] = sample_indexed(n, seed, i, cone); });
  ExperimentRecord r;
  r.id = "mc-sample";
  r.add_parameter("n", std::to_string(n));
  r.add_parameter("samples", std::to_string(count));
  r.add_parameter("seed", std::to_string(seed));
  r.add_parameter("cone", cone ? "true" : "false");
  r.columns = {"sample", "provenance", "nu", "height", "residual"};
  const std::size_t d = 2 * n;
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j) r.columns.push_back("g" + std::to_string(i) + "_" + std::to_string(j));
  double worst = 0;
  for (std::size_t k = 0; k < count; ++k) {
    const auto& s = samples[k];
    const double res = is_symplectic(s.g.matrix()).residual;
    worst = std::max(worst, res);
    std::vector<Cell> row{static_cast<std::int64_t>(k), to_string(s.provenance), s.nu, s.height, res};
    for (double v : s.g.matrix().data()) row.emplace_back(v);
    r.rows.push_back(std::move(row));
  }
  r.add_aggregate("max_symplectic_residual", worst);
  r.wall_clock_seconds = seconds_since(t0);
  return r;
}

}  // namespace symlat
