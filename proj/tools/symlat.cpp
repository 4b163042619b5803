#include <cstdio>
#include <fstream>
#include <functional>
#include <iostream>
#include <iterator>
#include <sstream>

#include "CLI11.hpp"
#include "symlat/arithmetic.hpp"
#include "symlat/error.hpp"
#include "symlat/experiment.hpp"
#include "symlat/geometry.hpp"
#include "symlat/montecarlo.hpp"
#include "symlat/orbits.hpp"
#include "symlat/parallel.hpp"
#include "symlat/stats.hpp"
#include "symlat/zeta.hpp"

using namespace symlat;

namespace {

using Runner = std::function<ExperimentRecord()>;

std::int64_t as_i64(std::uint64_t v) { return static_cast<std::int64_t>(v); }
std::string str(const Int& v) { return v.get_str(); }

// Integer tokens from positional arguments, an input file, or stdin; "/" separators are ignored.
std::vector<Int> read_tokens(const std::vector<std::string>& args, const std::string& input) {
  std::vector<std::string> words;
  auto split = [&](std::istream& in) {
    std::string w;
    while (in >> w) words.push_back(w);
  };
  if (!args.empty()) {
    for (const auto& a : args) {
      std::istringstream in(a);
      split(in);
    }
  } else if (!input.empty() && input != "-") {
    std::ifstream in(input);
    if (!in) throw InputError("cannot read input file " + input);
    split(in);
  } else {
    split(std::cin);
  }
  std::vector<Int> out;
  for (auto w : words) {
    std::string cleaned;
    for (char c : w)
      if (c != '/' && c != ',') cleaned += c;
    if (!cleaned.empty()) out.push_back(parse_int(cleaned));
  }
  return out;
}

std::vector<PrimitivePair> read_pairs(const std::vector<std::string>& args, const std::string& input, std::size_t n) {
  const std::vector<Int> t = read_tokens(args, input);
  require(!t.empty(), "no integer vectors supplied");
  if (n == 0) {
    require(t.size() % 4 == 0, "token count must be 4n for a single pair");
    n = t.size() / 4;
  }
  const std::size_t w = 4 * n;
  require(t.size() % w == 0, "token count is not a multiple of 4n = " + std::to_string(w));
  std::vector<PrimitivePair> pairs;
  for (std::size_t k = 0; k < t.size(); k += w) {
    Vec<Int> u(t.begin() + k, t.begin() + k + 2 * n), v(t.begin() + k + 2 * n, t.begin() + k + w);
    pairs.push_back(PrimitivePair::make(u, v));
  }
  return pairs;
}

void add_class_cells(std::vector<Cell>& row, const OrbitClass& c) {
  row.insert(row.end(), {as_i64(c.n), str(c.s), str(c.d), str(c.a), to_string(c.kind)});
}

std::string flatten(const Matrix<Int>& m) {
  std::string s;
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) s += (s.empty() ? "" : " ") + m(i, j).get_str();
  return s;
}

struct Globals {
  std::uint64_t seed = 1;
  std::string out;
  std::size_t threads = 0;
};

void emit(const ExperimentRecord& r, const Globals& g, const std::string& echo) {
  if (g.out.empty() || g.out == "-") {
    std::cout << csv_text(r);
    std::cout.flush();
  } else {
    emit_csv(r, g.out, echo);
  }
}

// Resolved configuration of the selected subcommand as loadable dotted keys. The output path and
// thread count are excluded so that the manifest depends only on the experiment.
std::string config_echo(const CLI::App& app, const Globals& g) {
  std::string echo = "seed=" + std::to_string(g.seed) + "\n";
  const CLI::App* leaf = &app;
  std::string prefix;
  while (!leaf->get_subcommands().empty()) {
    leaf = leaf->get_subcommands().front();
    prefix += leaf->get_name() + ".";
  }
  std::istringstream lines(leaf->config_to_str(true, false));
  for (std::string line; std::getline(lines, line);)
    if (!line.empty() && line.front() != '[') echo += prefix + line + "\n";
  return echo;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"symlat: symplectic lattice orbits, arithmetic coefficients, hypersurface integrals and Monte Carlo"};
  app.require_subcommand(1);
  app.fallthrough();
  app.failure_message(CLI::FailureMessage::help);
  app.allow_config_extras(CLI::config_extras_mode::error);
  app.set_config("--config", "", "INI config file with one [section] per subcommand path, e.g. [mc.mean]")
      ->configurable(false);

  Globals g;
  app.add_option("--seed", g.seed, "Base RNG seed")->capture_default_str();
  app.add_option("--out", g.out, "Output CSV path (a .manifest sidecar is written next to it); stdout if omitted");
  app.add_option("--threads", g.threads, "Worker threads (0 = hardware concurrency)")->configurable(false);

  Runner run;

  // ---------------------------------------------------------------- orbits
  auto* orbits = app.add_subcommand("orbits", "Sp(2n, Z) orbits of primitive vector pairs");
  orbits->require_subcommand(1);
  std::size_t orb_n = 0;
  std::vector<std::string> orb_args;
  std::string orb_input;
  auto add_orbit_io = [&](CLI::App* sc) {
    sc->add_option("--n", orb_n, "Half dimension (default: all tokens form one pair)");
    sc->add_option("--input", orb_input, "File with whitespace-separated integers ('-' for stdin)");
    sc->add_option("vectors", orb_args, "Integers u_1..u_2n v_1..v_2n per pair; '/' is ignored");
  };
  auto* classify = orbits->add_subcommand("classify", "Orbit invariants (s, d, a) per pair");
  add_orbit_io(classify);
  classify->callback([&] {
    run = [&] {
      ExperimentRecord r;
      r.id = "orbits-classify";
      r.columns = {"pair", "n", "s", "d", "a", "kind"};
      const auto pairs = read_pairs(orb_args, orb_input, orb_n);
      for (std::size_t i = 0; i < pairs.size(); ++i) {
        std::vector<Cell> row{as_i64(i)};
        add_class_cells(row, orbit_invariants(pairs[i]));
        r.rows.push_back(std::move(row));
      }
      return r;
    };
  });
  auto* reduce = orbits->add_subcommand("reduce", "Reduction witness gamma with gamma (u, v) canonical");
  add_orbit_io(reduce);
  reduce->callback([&] {
    run = [&] {
      ExperimentRecord r;
      r.id = "orbits-reduce";
      r.columns = {"pair", "n", "s", "d", "a", "kind", "d_prime", "steps", "verified", "witness"};
      const auto pairs = read_pairs(orb_args, orb_input, orb_n);
      for (std::size_t i = 0; i < pairs.size(); ++i) {
        const ReductionWitness w = reduce_pair(pairs[i]);
        std::vector<Cell> row{as_i64(i)};
        add_class_cells(row, w.orbit);
        row.insert(row.end(), {str(w.d_prime), as_i64(w.steps.size()),
                               std::string(verify_witness(pairs[i], w) ? "true" : "false"),
                               flatten(w.gamma.matrix())});
        r.rows.push_back(std::move(row));
      }
      return r;
    };
  });
  auto* same = orbits->add_subcommand("same-orbit", "Compare consecutive pairs (p1 p2 p3 p4 ...: p1~p2, p3~p4)");
  add_orbit_io(same);
  same->callback([&] {
    run = [&] {
      ExperimentRecord r;
      r.id = "orbits-same-orbit";
      r.columns = {"comparison", "n", "s1", "d1", "a1", "s2", "d2", "a2", "same", "witness"};
      const auto pairs = read_pairs(orb_args, orb_input, orb_n);
      require(pairs.size() % 2 == 0, "same-orbit needs an even number of pairs");
      for (std::size_t i = 0; i + 1 < pairs.size(); i += 2) {
        const OrbitClass c1 = orbit_invariants(pairs[i]), c2 = orbit_invariants(pairs[i + 1]);
        const SameOrbitResult res = same_orbit(pairs[i], pairs[i + 1]);
        r.rows.push_back({as_i64(i / 2), as_i64(c1.n), str(c1.s), str(c1.d), str(c1.a), str(c2.s), str(c2.d),
                          str(c2.a), std::string(res.same ? "true" : "false"),
                          res.witness ? flatten(res.witness->matrix()) : std::string()});
      }
      return r;
    };
  });

  // ---------------------------------------------------------------- arith
  auto* arith = app.add_subcommand("arith", "Arithmetic coefficients, group orders and indices");
  arith->require_subcommand(1);
  int ar_n = 2;
  std::uint64_t ar_max = 1000;
  auto* table = arith->add_subcommand("table", "Per-s table of phi, X, phi*X and a(s) zeta(2n)");
  table->add_option("--n", ar_n, "Half dimension")->required()->check(CLI::Range(1, 16));
  table->add_option("--max", ar_max, "Largest s")->required()->check(CLI::Range(1, 100000000));
  table->callback([&] {
    run = [&] {
      const ArithmeticTable t(ar_n, ar_max);
      ExperimentRecord r;
      r.id = "arith-table";
      r.add_parameter("n", std::to_string(ar_n));
      r.add_parameter("max", std::to_string(ar_max));
      r.columns = {"s", "phi", "X", "conv", "a_rational"};
      for (std::uint64_t s = 1; s <= ar_max; ++s) {
        const auto& rec = t[s];
        r.rows.push_back({as_i64(s), to_string(rec.phi), to_string(rec.X), to_string(rec.conv), rec.a_rational()});
      }
      const SummatoryReport A = summatory_A(t, ar_max);
      r.add_aggregate("A", A.A);
      r.add_aggregate("ratio", A.ratio);
      return r;
    };
  });
  double lf_sigma = 0;
  auto* lfun = arith->add_subcommand("check-lfun", "Partial Dirichlet sums of phi*X against zeta(sigma-2n+1)/zeta(sigma)");
  lfun->add_option("--n", ar_n, "Half dimension")->required()->check(CLI::Range(1, 16));
  lfun->add_option("--sigma", lf_sigma, "Real exponent >= 2n + 1 (default 2n + 1)");
  lfun->add_option("--max", ar_max, "Truncation N")->required()->check(CLI::Range(1, 100000000));
  lfun->callback([&] {
    run = [&] {
      const double sigma = lf_sigma > 0 ? lf_sigma : 2.0 * ar_n + 1.0;
      const LfunReport rep = lfun_check(ar_n, sigma, ar_max);
      ExperimentRecord r;
      r.id = "arith-check-lfun";
      r.columns = {"n", "sigma", "N", "partial_sum", "target", "relative_error", "zeta_error_bound"};
      r.rows.push_back({std::int64_t{ar_n}, sigma, as_i64(ar_max), rep.partial_sum, rep.target, rep.relative_error,
                        rep.zeta_error_bound});
      return r;
    };
  });
  std::string ix_s, ix_d;
  bool brute = false;
  auto* index = arith->add_subcommand("index", "Index of the stabilizer S(s, d, a) in Sp(2n, Z)");
  index->add_option("--n", ar_n, "Half dimension")->required()->check(CLI::Range(1, 16));
  index->add_option("--s", ix_s, "Symplectic pairing s")->required();
  index->add_option("--d", ix_d, "Minor gcd d (divides s)")->required();
  index->add_flag("--brute", brute, "Also enumerate SL(2, Z/q^2) (n = 2, q <= 8)");
  index->callback([&] {
    run = [&] {
      const IndexReport rep = stabilizer_index(ar_n, parse_int(ix_s), parse_int(ix_d), brute);
      ExperimentRecord r;
      r.id = "arith-index";
      r.columns = {"n", "s", "d", "q", "formula", "oracle", "match"};
      r.rows.push_back({std::int64_t{ar_n}, str(rep.s), str(rep.d), str(rep.q), str(rep.formula_value),
                        rep.oracle_value ? str(*rep.oracle_value) : std::string(),
                        std::string(rep.match ? "true" : "false")});
      return r;
    };
  });
  std::uint64_t ord_q = 2;
  auto* order = arith->add_subcommand("order", "|Sp(2n, Z/q)| by formula and optionally by enumeration");
  order->add_option("--n", ar_n, "Half dimension")->required()->check(CLI::Range(1, 16));
  order->add_option("--q", ord_q, "Modulus q >= 2")->required()->check(CLI::Range(2, 1000000));
  order->add_flag("--brute", brute, "Enumerate Sp(2n, Z/q) (q^{2n} <= 1e5)");
  order->callback([&] {
    run = [&] {
      const Int f = sp_order_mod_q(ar_n, ord_q);
      std::string oracle;
      bool match = true;
      if (brute) {
        const Int b = sp_order_brute(ar_n, ord_q);
        oracle = str(b);
        match = b == f;
      }
      ExperimentRecord r;
      r.id = "arith-order";
      r.columns = {"n", "q", "formula", "oracle", "match"};
      r.rows.push_back({std::int64_t{ar_n}, as_i64(ord_q), str(f), oracle, std::string(match ? "true" : "false")});
      return r;
    };
  });

  // ---------------------------------------------------------------- geom
  auto* geom = app.add_subcommand("geom", "Hypersurface integrals G, G~ and admissibility integrals");
  geom->require_subcommand(1);
  std::size_t ge_n = 1;
  std::string ge_region = "ball:r=1";
  std::string ge_family;
  std::uint64_t ge_samples = 100000;
  bool ge_reverse = false;
  auto add_geom_common = [&](CLI::App* sc) {
    sc->add_option("--n", ge_n, "Half dimension")->check(CLI::Range(1, 3))->capture_default_str();
    sc->add_option("--samples", ge_samples, "Monte Carlo samples")->capture_default_str();
  };
  std::vector<double> gs_s;
  bool gs_tilde = false;
  auto* gs = geom->add_subcommand("gs", "Monte Carlo G(s) (or G~(s) with --tilde)");
  add_geom_common(gs);
  gs->add_option("--s", gs_s, "Values of s (nonzero)")->required()->delimiter(',');
  gs->add_option("--region", ge_region, "Region spec, e.g. ball:r=2, box:w=1,2, ellipse:vol=100,stretch=3")
      ->capture_default_str();
  gs->add_flag("--tilde", gs_tilde, "Cone-averaged G~(s) = int_0^1 nu G(nu s) d nu");
  gs->add_flag("--reverse-frame", ge_reverse, "Complete the frame in reversed basis order");
  gs->callback([&] {
    run = [&] {
      const RegionSpec B = parse_region(ge_region, ge_n);
      QuadratureOptions q;
      q.samples = ge_samples;
      q.seed = g.seed;
      q.order = ge_reverse ? CompletionOrder::reverse : CompletionOrder::forward;
      ExperimentRecord r;
      r.id = gs_tilde ? "geom-gs-tilde" : "geom-gs";
      r.add_parameter("n", std::to_string(ge_n));
      r.add_parameter("region", B.describe());
      r.columns = {"s", "estimate", "stderr", "samples", "seed"};
      for (double s : gs_s) {
        const Estimate e = gs_tilde ? G_tilde(s, B, q) : G_integral(s, B, q);
        r.rows.push_back({s, e.value, e.std_error, as_i64(e.samples), as_i64(g.seed)});
      }
      return r;
    };
  });
  double cond_delta = 0.5;
  auto* cond = geom->add_subcommand("condition", "vol(B)^2 E|<x,y>|_+^{-delta}; --family adds a fitted exponent");
  add_geom_common(cond);
  cond->add_option("--delta", cond_delta, "Exponent delta in (0, 2n)")->capture_default_str();
  auto* cond_region = cond->add_option("--region", ge_region, "Region spec");
  cond->add_option("--family", ge_family, "Ladder, e.g. ball:r=4;8;16;32")->excludes(cond_region);
  cond->callback([&] {
    run = [&] {
      const std::vector<RegionSpec> regions =
          ge_family.empty() ? std::vector<RegionSpec>{parse_region(ge_region, ge_n)} : parse_family(ge_family, ge_n);
      QuadratureOptions q;
      q.samples = ge_samples;
      q.seed = g.seed;
      ExperimentRecord r;
      r.id = "geom-condition";
      r.add_parameter("n", std::to_string(ge_n));
      r.add_parameter("delta", format_double(cond_delta));
      r.columns = {"region", "volume", "estimate", "stderr", "samples", "seed"};
      std::vector<double> vols, ests;
      for (const auto& B : regions) {
        const Estimate e = condition_integral(B, cond_delta, q);
        r.rows.push_back({B.describe(), B.volume(), e.value, e.std_error, as_i64(e.samples), as_i64(g.seed)});
        vols.push_back(B.volume());
        ests.push_back(e.value);
      }
      if (regions.size() >= 2) {
        r.add_aggregate("fitted_exponent", loglog_slope(vols, ests));
        r.add_aggregate("bound", 2.0 - cond_delta / (2.0 * ge_n));
      }
      return r;
    };
  });
  std::size_t fb_grid = 2000;
  bool fb_mc = false;
  auto* fub = geom->add_subcommand("fubini-check", "Riemann sum of G over s against vol(B)^2");
  add_geom_common(fub);
  fub->add_option("--region", ge_region, "Region spec")->capture_default_str();
  fub->add_option("--grid", fb_grid, "Grid points in [-R^2, R^2]")->capture_default_str();
  fub->add_flag("--monte-carlo", fb_mc, "Use Monte Carlo G even where a closed form exists");
  fub->callback([&] {
    run = [&] {
      const RegionSpec B = parse_region(ge_region, ge_n);
      QuadratureOptions q;
      q.samples = ge_samples;
      q.seed = g.seed;
      const FubiniReport rep = fubini_check(B, fb_grid, q, !fb_mc);
      ExperimentRecord r;
      r.id = "geom-fubini-check";
      r.add_parameter("n", std::to_string(ge_n));
      r.add_parameter("region", B.describe());
      r.columns = {"grid", "integral", "stderr", "volume_squared", "relative_error"};
      r.rows.push_back({as_i64(fb_grid), rep.integral, rep.std_error, rep.volume_squared, rep.relative_error});
      return r;
    };
  });

  // ---------------------------------------------------------------- mc
  auto* mc = app.add_subcommand("mc", "Random symplectic lattices and lattice point statistics");
  mc->require_subcommand(1);
  std::size_t mc_n = 1;
  std::uint64_t mc_samples = 2000;
  std::string mc_region = "ball:vol=1000";
  auto add_mc_n = [&](CLI::App* sc) {
    sc->add_option("--n", mc_n, "Half dimension (1 exact sampler; 2, 3 approximate)")
        ->check(CLI::Range(1, 3))
        ->capture_default_str();
  };
  bool mc_cone = false;
  auto* msample = mc->add_subcommand("sample", "List sampled lattices");
  add_mc_n(msample);
  msample->add_option("--samples", mc_samples, "Number of lattices")->capture_default_str();
  msample->add_flag("--cone", mc_cone, "Also draw the cone scale nu");
  msample->callback([&] { run = [&] { return sample_experiment(mc_n, mc_samples, g.seed, mc_cone); }; });

  auto* mmean = mc->add_subcommand("mean", "Cone mean of h against vol(B)/zeta(2n)");
  add_mc_n(mmean);
  mmean->add_option("--samples", mc_samples, "Cone samples")->capture_default_str();
  mmean->add_option("--region", mc_region, "Region spec")->capture_default_str();
  mmean->callback([&] {
    run = [&] {
      MonteCarloOptions o;
      o.samples = mc_samples;
      o.seed = g.seed;
      return mean_experiment(mc_n, parse_region(mc_region, mc_n), o);
    };
  });

  SecondMomentOptions smo;
  std::string kl = to_string(smo.convention);
  auto* msecond = mc->add_subcommand("second-moment", "Cone second moment against the pair-orbit formula");
  add_mc_n(msecond);
  msecond->add_option("--samples", smo.samples, "Cone samples")->capture_default_str();
  msecond->add_option("--region", mc_region, "Region spec")->capture_default_str();
  msecond->add_option("--smax", smo.smax_factor, "S_max as a multiple of circumradius^2 (>= 1)")
      ->capture_default_str();
  msecond->add_option("--kl-convention", kl, "Dependent pairs: primitive_pm, coprime_nonzero, coprime_positive")
      ->capture_default_str();
  msecond->add_option("--kl-cutoff", smo.kl_cutoff, "Cutoff K for the (k, l) sum")->capture_default_str();
  msecond->add_option("--gtilde-samples", smo.gtilde_samples, "Samples per s when G~ has no closed form")
      ->capture_default_str();
  msecond->callback([&] {
    run = [&] {
      smo.seed = g.seed;
      smo.convention = parse_kl_convention(kl);
      return second_moment_experiment(mc_n, parse_region(mc_region, mc_n), smo);
    };
  });

  DiscrepancyOptions dso;
  std::string mc_family = "ball:vol=1e2;1e3;1e4;1e5";
  auto* mdisc = mc->add_subcommand("discrepancy", "Primitive-count discrepancy along a region ladder");
  add_mc_n(mdisc);
  mdisc->add_option("--family", mc_family, "Ladder, e.g. ball:vol=1e2;1e3;1e4;1e5")->capture_default_str();
  mdisc->add_option("--lattices", dso.lattices, "Sampled lattices")->capture_default_str();
  mdisc->callback([&] {
    run = [&] {
      dso.seed = g.seed;
      return discrepancy_series(mc_n, parse_family(mc_family, mc_n), dso);
    };
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  }

  try {
    set_num_threads(g.threads);
    const ExperimentRecord r = run();
    emit(r, g, config_echo(app, g));
  } catch (const InputError& e) {
    std::cerr << "symlat: invalid input: " << e.what() << "\n";
    return 2;
  } catch (const BudgetExceeded& e) {
    std::cerr << "symlat: budget exceeded: " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "symlat: error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
