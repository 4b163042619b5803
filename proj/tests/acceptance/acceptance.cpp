// Acceptance suite: one PASS/FAIL line per criterion.
//   symlat_acceptance                 run every criterion
//   symlat_acceptance --criterion k   run criterion k only

#include <array>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <numeric>
#include <set>
#include <sstream>
#include <string>
#include <tuple>
#include <vector>

#include <unistd.h>

#include "CLI11.hpp"
#include "helpers.hpp"
#include "oracles.hpp"
#include "symlat/arithmetic.hpp"
#include "symlat/experiment.hpp"
#include "symlat/geometry.hpp"
#include "symlat/montecarlo.hpp"
#include "symlat/orbits.hpp"
#include "symlat/parallel.hpp"
#include "symlat/region.hpp"
#include "symlat/stats.hpp"
#include "symlat/zeta.hpp"

using namespace symlat;
using testing_support::big;

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
};

std::string fmt(double x, int prec = 4) {
  std::ostringstream os;
  os.precision(prec);
  os << x;
  return os.str();
}

// ---------------------------------------------------------------- 1. orbit classification

// Integer 4 x 4 symplectic matrices acting on (x1, x2, y1, y2).
using M4 = std::array<std::array<int, 4>, 4>;

bool preserves_form(const M4& m) {
  // m^T J m = J with J = [[0, I], [-I, 0]].
  auto form = [](const std::array<int, 4>& a, const std::array<int, 4>& b) {
    return a[0] * b[2] + a[1] * b[3] - a[2] * b[0] - a[3] * b[1];
  };
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) {
      std::array<int, 4> ci{}, cj{}, ei{}, ej{};
      for (int k = 0; k < 4; ++k) {
        ci[k] = m[k][i];
        cj[k] = m[k][j];
      }
      ei[i] = 1;
      ej[j] = 1;
      if (form(ci, cj) != form(ei, ej)) return false;
    }
  return true;
}

std::vector<M4> box_moves() {
  auto id = [] {
    M4 m{};
    for (int i = 0; i < 4; ++i) m[i][i] = 1;
    return m;
  };
  std::vector<M4> g;
  M4 m = id();
  m[0][2] = 1;  // x1 += y1
  g.push_back(m);
  m = id();
  m[1][3] = 1;
  g.push_back(m);
  m = id();
  m[0][3] = m[1][2] = 1;
  g.push_back(m);
  m = id();
  m[2][0] = 1;  // y1 += x1
  g.push_back(m);
  m = id();
  m[3][1] = 1;
  g.push_back(m);
  m = id();
  m[2][1] = m[3][0] = 1;
  g.push_back(m);
  m = id();
  m[0][1] = 1;  // diag(A, A^{-T}) with A = [[1, 1], [0, 1]]
  m[3][2] = -1;
  g.push_back(m);
  m = M4{};
  m[0][1] = m[1][0] = m[2][3] = m[3][2] = 1;  // swap the two planes
  g.push_back(m);
  m = id();
  m[0][0] = m[2][2] = 0;  // quarter turn in the (x1, y1) plane
  m[0][2] = 1;
  m[2][0] = -1;
  g.push_back(m);
  return g;
}

struct UnionFind {
  std::vector<std::int32_t> parent;
  explicit UnionFind(std::size_t n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
  std::int32_t find(std::int32_t x) {
    while (parent[x] != x) {
      parent[x] = parent[parent[x]];
      x = parent[x];
    }
    return x;
  }
  void unite(std::int32_t a, std::int32_t b) {
    a = find(a);
    b = find(b);
    if (a != b) parent[std::max(a, b)] = std::min(a, b);
  }
};

Outcome criterion_orbits() {
  std::ostringstream d;
  bool ok = true;

  // Random words.
  std::size_t words = 0, witnesses = 0, bad_inv = 0, bad_wit = 0, bad_sym = 0;
  for (std::size_t n : {2u, 3u}) {
    std::mt19937_64 rng(7000 + n);
    for (int k = 0; k < 10000; ++k) {
      const PrimitivePair p = random_primitive_pair(n, 4, rng);
      const auto gamma = random_symplectic_word(n, 1 + rng() % 12, rng, 3);
      bad_sym += !is_symplectic(gamma.matrix()).ok;
      const PrimitivePair q = p.transformed(gamma.matrix());
      const ReductionWitness wp = reduce_pair(p), wq = reduce_pair(q);
      ++words;
      witnesses += 2;
      bad_inv += wp.orbit != wq.orbit || !(wp.canonical == wq.canonical);
      bad_inv += oracle::pairing(testing_support::to_ll(p.u()), testing_support::to_ll(p.v())) != wp.orbit.s.get_si();
      bad_inv += oracle::minors_gcd(testing_support::to_ll(p.u()), testing_support::to_ll(p.v())) !=
                 wp.orbit.d.get_si();
      bad_wit += !verify_witness(p, wp) + !verify_witness(q, wq);
    }
  }
  ok = ok && bad_inv == 0 && bad_wit == 0 && bad_sym == 0;
  d << "words=" << words << " invariant_breaks=" << bad_inv << " witnesses=" << witnesses
    << " failed_witnesses=" << bad_wit;

  // Brute-force orbit search: union-find over all pairs in the exploration box [-4, 4]^8 under
  // integer symplectic moves; pairs in the entry box [-3, 3]^8 are classified.
  const std::vector<M4> moves = box_moves();
  for (const auto& m : moves) ok = ok && preserves_form(m);
  constexpr int n = 2, B = 4, E = 3, W = 2 * B + 1;
  std::size_t states = 1;
  for (int i = 0; i < 8; ++i) states *= W;
  UnionFind uf(states);
  using St = std::array<int, 8>;
  auto encode = [&](const St& s) -> std::int64_t {
    std::int64_t k = 0;
    for (int i = 0; i < 8; ++i) {
      if (std::abs(s[i]) > B) return -1;
      k = k * W + (s[i] + B);
    }
    return k;
  };
  for (std::size_t k = 0; k < states; ++k) {
    St s;
    std::size_t t = k;
    for (int i = 7; i >= 0; --i) {
      s[i] = static_cast<int>(t % W) - B;
      t /= W;
    }
    for (const auto& m : moves) {
      St r{};
      for (int h = 0; h < 2; ++h)
        for (int i = 0; i < 4; ++i) {
          int a = 0;
          for (int j = 0; j < 4; ++j) a += m[i][j] * s[4 * h + j];
          r[4 * h + i] = a;
        }
      const std::int64_t k2 = encode(r);
      if (k2 >= 0) uf.unite(static_cast<std::int32_t>(k), static_cast<std::int32_t>(k2));
    }
  }

  using Key = std::tuple<long, long, long>;
  std::map<std::int32_t, std::set<Key>> comp_classes;
  std::map<Key, std::set<std::int32_t>> class_comps;
  std::size_t pairs = 0;
  constexpr int WE = 2 * E + 1;
  std::size_t entry = 1;
  for (int i = 0; i < 8; ++i) entry *= WE;
  for (std::size_t k = 0; k < entry; ++k) {
    St s;
    std::size_t t = k;
    for (int i = 7; i >= 0; --i) {
      s[i] = static_cast<int>(t % WE) - E;
      t /= WE;
    }
    std::vector<long long> u(s.begin(), s.begin() + 4), v(s.begin() + 4, s.end());
    if (oracle::gcd_all(u) != 1 || oracle::gcd_all(v) != 1 || oracle::minors_gcd(u, v) == 0) continue;
    ++pairs;
    const OrbitClass c =
        orbit_invariants(PrimitivePair::make(testing_support::to_int_vec(u), testing_support::to_int_vec(v)));
    const Key key{c.s.get_si(), c.d.get_si(), c.a.get_si()};
    const std::int32_t root = uf.find(static_cast<std::int32_t>(encode(s)));
    comp_classes[root].insert(key);
    class_comps[key].insert(root);
  }
  std::size_t mixed = 0, explored = 0, split_explored = 0, split_other = 0;
  for (const auto& [root, cs] : comp_classes) mixed += cs.size() > 1;
  // An orbit counts as fully explored when |s| <= n E^2, half the largest pairing in the entry box.
  for (const auto& [key, roots] : class_comps) {
    if (std::abs(std::get<0>(key)) <= n * E * E) {
      ++explored;
      split_explored += roots.size() > 1;
    } else {
      split_other += roots.size() > 1;
    }
  }
  ok = ok && mixed == 0 && split_explored == 0 && explored > 0;
  d << "; box pairs=" << pairs << " classes=" << class_comps.size() << " components=" << comp_classes.size()
    << " mixed_components=" << mixed << " explored_classes=" << explored << " split_explored=" << split_explored
    << " (unexplored split=" << split_other << ")";
  return {ok, d.str()};
}

// ---------------------------------------------------------------- 2. index and order formulas

Outcome criterion_index() {
  std::ostringstream d;
  bool ok = true;
  int checked = 0;
  for (const auto& [q, expect] : oracle::sl2_index) {
    const IndexReport r = stabilizer_index(2, big(q), big(1), true);
    const bool good = r.oracle_value && *r.oracle_value == big(expect) && r.formula_value == big(expect) &&
                      brute_index_sl2(static_cast<std::uint64_t>(q)) == big(expect);
    ok = ok && good && r.match;
    ++checked;
  }
  d << "sl2 index q=2..6 (" << checked << " exact)";
  int orders = 0;
  auto check_order = [&](int n, int q, long long expect) {
    const Int brute = sp_order_brute(n, static_cast<std::uint64_t>(q));
    const Int formula = sp_order_mod_q(n, static_cast<std::uint64_t>(q));
    ok = ok && brute == big(expect) && formula == big(expect) &&
         static_cast<long long>(oracle::sp_order_formula(n, q)) == expect;
    ++orders;
  };
  for (const auto& [q, expect] : oracle::sp2_order) check_order(1, q, expect);
  check_order(2, 2, oracle::sp4_order_mod2);
  check_order(2, 3, oracle::sp4_order_mod3);
  d << "; sp orders " << orders << " exact incl. |Sp(4,Z/2)|=" << sp_order_mod_q(2, 2).get_str();
  int chain = 0, chain_bad = 0;
  for (int m = 1; m <= 4; ++m)
    for (std::uint64_t q = 2; q <= 20; ++q) {
      const SqOrders s = sq_orders(m, q);
      const bool good = s.S_q == s.S_q_unsimplified && s.implied_index == stabilizer_index_formula(m + 1, big(q)) &&
                        s.implied_index * s.S_q * s.kernel == sp_order_mod_q(m, q * q);
      chain_bad += !good;
      ++chain;
    }
  ok = ok && chain_bad == 0;
  d << "; sq chain " << chain - chain_bad << "/" << chain;
  return {ok, d.str()};
}

// ---------------------------------------------------------------- 3. L-function identity

Outcome criterion_lfun() {
  std::ostringstream d;
  bool ok = true;
  for (int n : {1, 2}) {
    const double sigma = 2.0 * n + 1.0;
    std::vector<double> errs;
    for (std::uint64_t N : {1000ull, 10000ull, 100000ull}) errs.push_back(lfun_check(n, sigma, N).relative_error);
    const double r1 = errs[0] / errs[1], r2 = errs[1] / errs[2];
    const bool good = errs[2] < 1e-4 && r1 > 10.0 / 3 && r1 < 30 && r2 > 10.0 / 3 && r2 < 30;
    ok = ok && good;
    d << (n == 1 ? "" : "; ") << "n=" << n << " err(1e5)=" << fmt(errs[2]) << " decade ratios " << fmt(r1, 3) << ","
      << fmt(r2, 3);
  }
  return {ok, d.str()};
}

// ---------------------------------------------------------------- 4. summatory asymptotic

Outcome criterion_summatory() {
  std::ostringstream d;
  bool ok = true;
  for (int n : {1, 2}) {
    const ArithmeticTable table(n, 1000000);
    const SummatoryReport r = summatory_A(table, 1000000);
    const auto env = ratio_envelope(table, {1000, 10000, 100000, 1000000});
    bool decreasing = true;
    for (std::size_t i = 1; i < env.size(); ++i) decreasing = decreasing && env[i] < env[i - 1];
    ok = ok && std::fabs(r.ratio - 1.0) < 0.01 && decreasing;
    d << (n == 1 ? "" : "; ") << "n=" << n << " r(1e6)=" << fmt(r.ratio, 8) << " envelope";
    for (double e : env) d << " " << fmt(e, 3);
  }
  return {ok, d.str()};
}

// ---------------------------------------------------------------- 5. boundedness

Outcome criterion_bounded() {
  std::ostringstream d;
  bool ok = true;
  for (int n : {1, 2, 3}) {
    const ArithmeticTable table(n, 1000000);
    std::uint64_t violations = 0, oracle_mismatch = 0;
    for (std::uint64_t s = 1; s <= 1000000; ++s) violations += table[s].conv > table[s].a_den;
    for (std::uint64_t s = 1; s <= 3000; ++s)
      oracle_mismatch += table[s].conv != static_cast<u128>(oracle::conv(static_cast<long long>(s), n));
    ok = ok && violations == 0 && oracle_mismatch == 0;
    d << (n == 1 ? "" : "; ") << "n=" << n << " violations=" << violations << " oracle_mismatch(s<=3000)="
      << oracle_mismatch;
  }
  return {ok, d.str()};
}

// ---------------------------------------------------------------- 6. G(s) oracle

Outcome criterion_G() {
  std::ostringstream d;
  bool ok = true;
  QuadratureOptions opt;
  opt.samples = 400000;
  int cases = 0, within = 0;
  double worst_z = 0, worst_rel_se = 0;
  std::uint64_t seed = 600;
  for (double R : {1.0, 2.0, 3.0, 5.0})
    for (double f : {0.05, 0.2, 0.4, 0.6, 0.75}) {
      const double s = f * R * R;
      opt.seed = ++seed;
      const Estimate e = G_integral(s, RegionSpec::ball(1, R), opt);
      const double ref = oracle::disc_G(s, R);
      const double z = std::fabs(e.value - ref) / e.std_error;
      worst_z = std::max(worst_z, z);
      worst_rel_se = std::max(worst_rel_se, e.std_error / e.value);
      within += z <= 3.0;
      ++cases;
    }
  ok = ok && within == cases && worst_rel_se <= 0.01;
  d << cases << " cases, within 3 SE: " << within << " (max z " << fmt(worst_z, 3) << ", max rel SE "
    << fmt(worst_rel_se, 3) << ")";

  int zeros = 0, nonzero = 0;
  opt.samples = 20000;
  for (double R : {1.0, 2.0, 3.0})
    for (double f : {1.0001, 1.5, 4.0}) {
      const double s = f * R * R;
      const Estimate e = G_integral(s, RegionSpec::ball(1, R), opt);
      const Estimate m = G_integral(-s, RegionSpec::ball(1, R), opt);
      (e.value == 0.0 && m.value == 0.0 && disc_G_exact(s, R) == 0.0 ? zeros : nonzero)++;
    }
  ok = ok && nonzero == 0;
  d << "; support |s|>R^2: " << zeros << "/" << zeros + nonzero << " exactly zero";

  const auto disc = RegionSpec::ball(1, 2.0);
  const FubiniReport closed = fubini_check(disc, 4000, opt, true);
  QuadratureOptions mc;
  mc.samples = 4000;
  mc.seed = 61;
  const FubiniReport sampled = fubini_check(disc, 200, mc, false);
  ok = ok && closed.relative_error < 0.01 && sampled.relative_error < 0.01;
  d << "; Fubini rel err closed " << fmt(closed.relative_error, 3) << " MC " << fmt(sampled.relative_error, 3);
  return {ok, d.str()};
}

// ---------------------------------------------------------------- 7. Siegel mean

Outcome criterion_mean() {
  std::ostringstream d;
  bool ok = true;
  MonteCarloOptions opt;
  opt.samples = 2000;
  opt.seed = 1;
  for (const char* shape : {"ball:vol=1000", "ellipse:vol=1000,stretch=4,angle=0.7", "box:vol=1000"}) {
    const ExperimentRecord r = mean_experiment(1, parse_region(shape, 1), opt);
    const double dev = r.aggregate_double("deviation");
    ok = ok && dev < 0.02;
    d << (d.tellp() ? "; " : "") << shape << " ratio " << fmt(r.aggregate_double("ratio"), 5);
  }
  return {ok, d.str()};
}

// ---------------------------------------------------------------- 8. second moment

Outcome criterion_second_moment() {
  std::ostringstream d;
  bool ok = true;
  SecondMomentOptions opt;
  opt.samples = 20000;
  opt.seed = 1;
  opt.convention = KLConvention::primitive_pm;
  for (double vol : {100.0, 1000.0}) {
    const ExperimentRecord r = second_moment_experiment(1, RegionSpec::ball_with_volume(1, vol), opt);
    const double ratio = r.aggregate_double("ratio");
    ok = ok && std::fabs(ratio - 1.0) < 0.10;
    d << (vol == 100.0 ? "" : "; ") << "vol=" << vol << " mc/formula=" << fmt(ratio, 4) << " (SE "
      << fmt(r.aggregate_double("mc_std_error") / r.aggregate_double("formula_prediction"), 2) << ")";
  }
  std::vector<double> vols, moments;
  opt.unit_determinant = false;
  for (double vol = 100.0; vol <= 1600.0; vol *= 2.0) {
    const ExperimentRecord r = second_moment_experiment(1, RegionSpec::ball_with_volume(1, vol), opt);
    vols.push_back(vol);
    moments.push_back(r.aggregate_double("mc_second_moment"));
  }
  const double exponent = loglog_slope(vols, moments);
  ok = ok && exponent < 2.0;
  d << "; growth exponent over vol=100..1600 " << fmt(exponent, 4);
  return {ok, d.str()};
}

// ---------------------------------------------------------------- 9. admissibility integrals

Outcome criterion_admissibility() {
  std::ostringstream d;
  const double delta = 0.5;
  QuadratureOptions opt;
  opt.samples = 200000;
  std::vector<double> vols, vals;
  for (double R : {4.0, 8.0, 16.0, 32.0}) {
    const auto B = RegionSpec::ball(1, R);
    opt.seed = 900 + static_cast<std::uint64_t>(R);
    vols.push_back(B.volume());
    vals.push_back(condition_integral(B, delta, opt).value);
  }
  const double exponent = loglog_slope(vols, vals);
  const double bound = 2.0 - delta / 2.0;
  bool ok = exponent <= bound + 0.05;
  d << "condition exponent " << fmt(exponent, 4) << " (bound " << bound << " + 0.05)";

  // Ratio along B-sizes with S = 4B (m(S) >= m(B) throughout); asserted non-increasing.
  std::vector<double> sizes, ratios;
  for (double r : {2.0, 4.0, 8.0, 16.0}) {
    const auto Bk = RegionSpec::ball(1, r);
    opt.seed = 950 + static_cast<std::uint64_t>(r);
    sizes.push_back(Bk.volume());
    ratios.push_back(kernel_bound_check(Bk.scaled(4.0), Bk, delta, opt).value);
  }
  const double trend = loglog_slope(sizes, ratios);
  ok = ok && trend <= 0.0;
  d << "; kernel ratio (S = 4B) vs m(B):";
  for (double x : ratios) d << " " << fmt(x, 4);
  d << " (log-log trend " << fmt(trend, 3) << ")";
  // Informational: fixed S of radius 32, where the ratio saturates from below.
  const auto S = RegionSpec::ball(1, 32.0);
  d << "; fixed S:";
  for (double r : {2.0, 4.0, 8.0, 16.0}) {
    opt.seed = 970 + static_cast<std::uint64_t>(r);
    d << " " << fmt(kernel_bound_check(S, RegionSpec::ball(1, r), delta, opt).value, 4);
  }
  return {ok, d.str()};
}

// ---------------------------------------------------------------- 10. discrepancy decay

Outcome criterion_discrepancy() {
  DiscrepancyOptions opt;
  opt.lattices = 50;
  opt.seed = 1;
  const auto family = parse_family("ball:vol=1e2;1e3;1e4;1e5", 1);
  const ExperimentRecord r = discrepancy_series(1, family, opt);
  const double median = r.aggregate_double("median_slope");
  return {median <= -0.2, "50 lattices, disc ladder 1e2..1e5, median slope " + fmt(median, 4)};
}

// ---------------------------------------------------------------- 11. determinism

std::string bytes_of(const ExperimentRecord& r) { return csv_text(r) + manifest_text(r); }

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  return std::string(std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>());
}

Outcome criterion_determinism() {
  std::ostringstream d;
  bool ok = true;
  using Maker = std::function<ExperimentRecord()>;
  const auto disc = RegionSpec::ball_with_volume(1, 300.0);
  const std::vector<std::pair<std::string, Maker>> library{
      {"mean", [&] { return mean_experiment(1, disc, {300, 5}); }},
      {"mean-n2", [&] { return mean_experiment(2, RegionSpec::ball_with_volume(2, 100.0), {40, 5}); }},
      {"second-moment",
       [&] {
         SecondMomentOptions o;
         o.samples = 2000;
         o.seed = 5;
         return second_moment_experiment(1, disc, o);
       }},
      {"second-moment-box",
       [&] {
         SecondMomentOptions o;
         o.samples = 2000;
         o.gtilde_samples = 2000;
         o.seed = 5;
         return second_moment_experiment(1, RegionSpec::cube_with_volume(1, 50.0), o);
       }},
      {"discrepancy", [&] { return discrepancy_series(1, parse_family("ball:vol=1e2;1e3;1e4;1e5", 1), {12, 5}); }},
      {"sample", [&] { return sample_experiment(2, 30, 5, true); }},
  };
  int runs = 0;
  for (const auto& [name, make] : library) {
    set_num_threads(1);
    const std::string a = bytes_of(make());
    set_num_threads(3);
    const std::string b = bytes_of(make());
    const std::string c = bytes_of(make());
    if (a != b || b != c) {
      ok = false;
      d << "library " << name << " differs; ";
    }
    ++runs;
  }
  set_num_threads(0);
  d << runs << " library experiments identical across 1/3 threads and reruns";

#ifdef SYMLAT_CLI_PATH
  const std::vector<std::string> commands{
      "orbits classify --n 2 1 0 0 0 / 1 0 6 2 / 1 2 0 1 / 0 1 3 -1",
      "orbits reduce --n 2 1 0 0 0 / 1 0 6 2",
      "orbits same-orbit --n 2 1 0 0 0 / 1 0 6 2 / 1 1 0 0 / 1 1 6 2",
      "arith table --n 2 --max 50",
      "arith check-lfun --n 1 --max 1000",
      "arith index --n 2 --s 6 --d 3 --brute",
      "arith order --n 2 --q 2",
      "geom gs --samples 5000 --s 0.5,1 --region ball:r=2",
      "geom gs --samples 5000 --s 1 --region ball:r=2 --tilde",
      "geom condition --delta 0.5 --family ball:r=2;4;8;16 --samples 5000",
      "geom fubini-check --region ball:r=2 --grid 40 --monte-carlo --samples 2000",
      "mc sample --n 1 --samples 20 --cone",
      "mc mean --n 1 --samples 200 --region ball:vol=300",
      "mc second-moment --samples 500 --region ball:vol=300",
      "mc discrepancy --n 1 --family ball:vol=1e2;1e3;1e4;1e5 --lattices 8",
  };
  const auto dir = std::filesystem::temp_directory_path() / ("symlat_accept_" + std::to_string(::getpid()));
  std::filesystem::create_directories(dir);
  int cli_ok = 0;
  for (std::size_t i = 0; i < commands.size(); ++i) {
    std::string outputs[3];
    bool ran = true;
    const unsigned threads[3] = {1, 3, 1};
    for (int t = 0; t < 3; ++t) {
      const auto csv = dir / ("run" + std::to_string(i) + "_" + std::to_string(t) + ".csv");
      const std::string cmd = std::string("\"") + SYMLAT_CLI_PATH + "\" --seed 9 --threads " +
                              std::to_string(threads[t]) + " --out \"" + csv.string() + "\" " +
                              [&] {
                                // Quote ';' lists for the shell.
                                std::string c = commands[i], q;
                                std::istringstream words(c);
                                for (std::string w; words >> w;)
                                  q += (q.empty() ? "" : " ") + (w.find(';') != std::string::npos ? "'" + w + "'" : w);
                                return q;
                              }() +
                              " > /dev/null 2>&1";
      ran = ran && std::system(cmd.c_str()) == 0;
      outputs[t] = slurp(csv) + slurp(manifest_path(csv));
    }
    if (ran && !outputs[0].empty() && outputs[0] == outputs[1] && outputs[1] == outputs[2]) {
      ++cli_ok;
    } else {
      ok = false;
      d << "; CLI '" << commands[i] << "' " << (ran ? "differs" : "failed");
    }
  }
  std::filesystem::remove_all(dir);
  d << "; " << cli_ok << "/" << commands.size() << " CLI subcommands byte-identical (CSV + manifest)";
#endif
  return {ok, d.str()};
}

struct Criterion {
  const char* title;
  Outcome (*run)();
};

const Criterion criteria[] = {
    {"orbit classification", criterion_orbits},
    {"index and order formulas", criterion_index},
    {"L-function identity", criterion_lfun},
    {"summatory asymptotic", criterion_summatory},
    {"boundedness of phi*X", criterion_bounded},
    {"G(s) oracle", criterion_G},
    {"Siegel mean", criterion_mean},
    {"second moment", criterion_second_moment},
    {"admissibility integrals", criterion_admissibility},
    {"discrepancy decay", criterion_discrepancy},
    {"determinism", criterion_determinism},
};

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"symlat acceptance suite"};
  int only = 0;
  app.add_option("--criterion", only, "Run a single criterion (1-11)")->check(CLI::Range(1, 11));
  CLI11_PARSE(app, argc, argv);

  bool all = true;
  for (int k = 1; k <= 11; ++k) {
    if (only != 0 && k != only) continue;
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = criteria[k - 1].run();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    std::cout << (o.pass ? "PASS" : "FAIL") << " criterion " << k << " (" << criteria[k - 1].title << "): " << o.detail
              << " [" << fmt(secs, 3) << " s]" << std::endl;
    all = all && o.pass;
  }
  return all ? 0 : 1;
}
