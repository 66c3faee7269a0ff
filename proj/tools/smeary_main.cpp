// Command-line front end: kernel tables, critical radii, spectral reports,
// constructive densities, the dimension-sweep simulation, and the invariant
// verification suite.

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "smeary/constructions.hpp"
#include "smeary/density.hpp"
#include "smeary/kernels.hpp"
#include "smeary/monte_carlo.hpp"
#include "smeary/quadrature.hpp"
#include "smeary/rng.hpp"
#include "smeary/spectra.hpp"
#include "smeary/taylor.hpp"

namespace {

using nlohmann::json;
using namespace smeary;

std::string fmt(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

void write_output(const std::string& path, const std::string& content) {
  if (path.empty() || path == "-") {
    std::cout << content;
    return;
  }
  std::ofstream os(path);
  if (!os) throw domain_error("cannot open output file: " + path);
  os << content;
}

// ---------------------------------------------------------------- roots ----

int cmd_roots(const std::string& m_range, const std::string& out) {
  int m_lo = 0, m_hi = 0;
  if (std::sscanf(m_range.c_str(), "%d:%d", &m_lo, &m_hi) != 2 || m_lo < 2 ||
      m_hi < m_lo)
    throw domain_error("roots: --m-range must be lo:hi with 2 <= lo <= hi");
  std::ostringstream os;
  os << "m,R_m,R_m_residual,S_m,S_m_residual\n";
  for (int m = m_lo; m <= m_hi; ++m) {
    const RootResult rm = find_hessian_zero(m);
    os << m << "," << fmt(rm.value) << "," << fmt(rm.residual) << ",";
    if (m >= 4) {
      const RootResult sm = find_quartic_zero(m);
      os << fmt(sm.value) << "," << fmt(sm.residual);
    } else {
      os << ",";
    }
    os << "\n";
  }
  write_output(out, os.str());
  return 0;
}

// -------------------------------------------------------------- kernels ----

int cmd_kernels(const std::string& what, int m, int grid, double R,
                double alpha, const std::string& out) {
  if (what == "taylor") {
    const RadialCoeffs rc = radial_coeffs(R);
    const TaylorCoeffs tc = taylor_coeffs(R, alpha);
    json j;
    j["R"] = R;
    j["alpha"] = alpha;
    j["C"] = {tc.c0, tc.c1, tc.c2, tc.c3, tc.c4};
    j["A3"] = rc.a3;
    j["B3"] = rc.b3;
    j["A4"] = rc.a4;
    j["A2"] = rc.a2;
    j["A0"] = rc.a0;
    write_output(out, j.dump(2) + "\n");
    return 0;
  }
  if (what != "table")
    throw domain_error("kernels: --what must be 'table' or 'taylor'");
  if (m < 2 || grid < 2)
    throw domain_error("kernels: need --m >= 2 and --grid >= 2");
  std::ostringstream os;
  os << "R,b_m,h_m\n";
  const double lo = kRFloor, hi = M_PI - kRCeiling;
  for (int i = 0; i < grid; ++i) {
    const double r = lo + (hi - lo) * i / (grid - 1);
    os << fmt(r) << "," << fmt(hessian_kernel(m, r)) << ","
       << fmt(quartic_kernel(m, r)) << "\n";
  }
  write_output(out, os.str());
  return 0;
}

// -------------------------------------------------------------- spectra ----

json report_to_json(const SpectralReport& rep) {
  return {{"hess_eigs", rep.hess_eigs},
          {"quartic_scalar", rep.quartic_scalar},
          {"trace", rep.trace},
          {"classification", classification_name(rep.classification)},
          {"lambda_max_below_2", lambda_max_check(rep)}};
}

int cmd_spectra(const std::string& density_path, int m,
                const std::string& out) {
  std::ifstream is(density_path);
  if (!is) throw domain_error("spectra: cannot read " + density_path);
  json cfg = json::parse(is);
  if (m == 0 && cfg.contains("m")) m = cfg.at("m").get<int>();
  if (m < 2) throw domain_error("spectra: need --m >= 2 (or an m field)");
  const RadialDensity radial = RadialDensity::from_json(cfg.at("radial"));
  AngularModel angular = angular_uniform(m);
  if (cfg.contains("angular")) angular = angular_from_json(cfg["angular"], m);

  SpectralReport rep;
  if (angular.kind == AngularModel::Kind::Uniform) {
    const double lambda = hessian_rot(radial, m);
    rep.hess_eigs.assign(m, lambda);
    rep.trace = m * lambda;
    rep.quartic_scalar = quartic_rot(radial, m);
    rep.classification = classify(rep.hess_eigs, rep.quartic_scalar);
  } else {
    rep = hessian_product(radial, angular, m);
  }
  write_output(out, report_to_json(rep).dump(2) + "\n");
  return 0;
}

// ------------------------------------------------------------ construct ----

int cmd_construct_smeary(int m, double eps, const std::string& out) {
  const SmearyRecipe rec = build_smeary_rot(m, eps);
  write_output(out, rec.to_json().dump(2) + "\n");
  return 0;
}

int cmd_construct_directional(int m, double eps, const std::string& out) {
  const DirectionalRecipe rec = build_directional(m, eps);
  write_output(out, rec.to_json().dump(2) + "\n");
  return 0;
}

// ------------------------------------------------------------- simulate ----

std::vector<int> parse_int_list(const std::string& s) {
  std::vector<int> v;
  std::stringstream ss(s);
  std::string tok;
  while (std::getline(ss, tok, ',')) v.push_back(std::stoi(tok));
  if (v.empty()) throw domain_error("empty integer list");
  return v;
}

int cmd_simulate(const std::string& dims, const std::string& ns, int reps,
                 double r_eps, std::uint64_t seed, const std::string& out,
                 const std::string& svg, bool serial, bool init_random) {
  ExperimentConfig cfg;
  cfg.dims = parse_int_list(dims);
  cfg.ns = parse_int_list(ns);
  cfg.reps = reps;
  cfg.r_eps = r_eps;
  cfg.master_seed = seed;
  cfg.parallel = !serial;
  cfg.init_random = init_random;
  const ExperimentResult result = experiment_curse(cfg);
  {
    std::ostringstream os;
    write_experiment_csv(os, result);
    write_output(out, os.str());
  }
  if (!svg.empty()) {
    std::ostringstream os;
    write_experiment_svg(os, result);
    write_output(svg, os.str());
  }
  for (const ModulationRecord& r : result.records)
    if (r.failed)
      std::cerr << json{{"warning",
                         {{"cell", {r.m, r.n, r.rep}}, {"message", r.error}}}}
                       .dump()
                << "\n";
  return 0;
}

// --------------------------------------------------------------- verify ----

struct Verifier {
  int failures = 0;
  void check(const std::string& name, bool ok, const std::string& detail = "") {
    if (ok) {
      std::cout << "[ok]   " << name << "\n";
    } else {
      ++failures;
      std::cout << "[FAIL] " << name
                << (detail.empty() ? "" : (": " + detail)) << "\n";
    }
  }
};

double fd_derivative(const std::function<double(double)>& f, int k, double h) {
  // central differences, order-2 stencils for k = 0..4
  switch (k) {
    case 0:
      return f(0.0);
    case 1:
      return (f(h) - f(-h)) / (2 * h);
    case 2:
      return (f(h) - 2 * f(0.0) + f(-h)) / (h * h);
    case 3:
      return (f(2 * h) - 2 * f(h) + 2 * f(-h) - f(-2 * h)) / (2 * h * h * h);
    case 4:
      return (f(2 * h) - 4 * f(h) + 6 * f(0.0) - 4 * f(-h) + f(-2 * h)) /
             (h * h * h * h);
  }
  return 0.0;
}

double fd_richardson(const std::function<double(double)>& f, int k, double h) {
  const double d1 = fd_derivative(f, k, h);
  const double d2 = fd_derivative(f, k, h / 2);
  return (4.0 * d2 - d1) / 3.0;
}

RadialDensity random_density(Rng& rng, double lo, double hi) {
  std::vector<RadialDensity::Bump> bs;
  const int nb = 1 + static_cast<int>(rng.uniform() * 3);
  for (int i = 0; i < nb; ++i) {
    const double c = lo + (hi - lo) * (0.15 + 0.7 * rng.uniform());
    const double w = std::min({c - lo, hi - c, (hi - lo) * 0.15}) *
                     (0.3 + 0.7 * rng.uniform());
    bs.push_back({c, std::max(w, 1e-4), 0.2 + rng.uniform()});
  }
  return RadialDensity::bumps(bs);
}

int cmd_verify() {
  Verifier v;
  Rng rng(20240817u);

  // geometry round trips
  {
    double worst = 0.0;
    for (int i = 0; i < 1000; ++i) {
      const int m = 2 + static_cast<int>(rng.uniform() * 5);
      std::vector<double> th = sample_sphere_uniform(m - 1, rng);
      TangentVector u;
      u.comps.resize(m);
      const double R = rng.uniform() * (M_PI - 1e-3);
      for (int j = 0; j < m; ++j) u.comps[j] = R * th[j];
      const TangentVector back = log_north(exp_north(u));
      double err = 0.0;
      for (int j = 0; j < m; ++j)
        err = std::max(err, std::abs(back.comps[j] - u.comps[j]));
      worst = std::max(worst, err);
    }
    v.check("exp/log round trip at N (1000 random)", worst < 1e-10,
            "worst " + fmt(worst));
  }

  // Taylor coefficients against the finite-difference oracle
  {
    bool ok = true;
    std::string detail;
    for (double R : {0.3, 0.8, M_PI / 2, 2.0, 2.8}) {
      for (double alpha : {-1.0, -0.5, 0.0, 0.5, 1.0}) {
        const TaylorCoeffs tc = taylor_coeffs(R, alpha);
        const double cs[5] = {tc.c0, tc.c1, tc.c2, tc.c3, tc.c4};
        auto f = [R, alpha](double t) {
          const double c = std::cos(t) * std::cos(R) +
                           std::sin(t) * std::sin(R) * alpha;
          const double d = std::acos(std::min(1.0, std::max(-1.0, c)));
          return d * d;
        };
        double fact = 1.0;
        for (int k = 0; k <= 4; ++k) {
          if (k > 0) fact *= k;
          // fine steps: near R = 2.8 the oracle's own truncation error at
          // h = 0.05 exceeds the gate
          const double want = fd_richardson(f, k, k == 4 ? 0.0125 : 0.00625);
          const double got = fact * cs[k];
          const double tol = (k == 4) ? 1e-4 : 1e-6;
          if (std::abs(got - want) >
              tol * std::max(1.0, std::abs(want))) {
            ok = false;
            detail = "R=" + fmt(R) + " alpha=" + fmt(alpha) +
                     " k=" + std::to_string(k);
          }
        }
      }
    }
    v.check("Taylor coefficients match derivative oracle (5x5 grid)", ok,
            detail);
  }

  // endpoint identities and closed forms
  {
    bool ok = true;
    for (int m = 2; m <= 64; ++m)
      ok = ok && std::abs(quartic_kernel(m, M_PI / 2) -
                          (1.0 - m) / (3.0 * m * (m + 2.0))) < 1e-10;
    v.check("quartic kernel value at pi/2, m = 2..64", ok);
    bool cf = true;
    for (int i = 1; i <= 500; ++i) {
      const double R = 0.05 + (M_PI - 0.1) * i / 501.0;
      const double h3 = (2.0 / 45.0) * (R / std::tan(R) - 1.0);
      cf = cf && std::abs(quartic_kernel(3, R) - h3) < 1e-10;
      const double s = std::sin(R), c = std::cos(R);
      const double h2 = (R * c * (3 + 2 * s * s) - s * (3 + s * s)) /
                        (96.0 * s * s * s);
      cf = cf && std::abs(quartic_kernel(2, R) - h2) < 1e-10;
    }
    v.check("closed forms for h_2 and h_3 on 500-point grids", cf);
  }

  // roots
  {
    const double r2 = find_hessian_zero(2).value;
    v.check("R_2 value", std::abs(r2 - 2.02875783811043) < 1e-10, fmt(r2));
    bool ord = true;
    for (int m = 4; m <= 200; ++m)
      ord = ord &&
            find_hessian_zero(m).value < find_quartic_zero(m).value;
    v.check("R_m < S_m for m in [4, 200]", ord);
    bool asym = true;
    for (int m : {100, 200, 400}) {
      const double rm = find_hessian_zero(m).value;
      const double sm = find_quartic_zero(m).value;
      asym = asym && std::abs((rm - M_PI / 2) * M_PI * (m - 1) / 2 - 1) < 0.1;
      asym = asym && std::abs((sm - M_PI / 2) * M_PI * m / 8 - 1) < 0.1;
    }
    v.check("R_m and S_m asymptotics at m in {100, 200, 400}", asym);
  }

  // moment identities
  {
    bool ok = true;
    for (int m = 2; m <= 12; ++m) {
      const double m2 = funk_hecke_mean([](double t) { return t * t; }, m);
      const double m4 =
          funk_hecke_mean([](double t) { return t * t * t * t; }, m);
      ok = ok && std::abs(m2 - 1.0 / m) < 1e-10 &&
           std::abs(m4 - 3.0 / (m * (m + 2.0))) < 1e-10;
    }
    v.check("spherical moment identities, m = 2..12", ok);
  }

  // obstructions and the spectral bound
  {
    bool pd = true, tr = true, bound = true;
    for (int i = 0; i < 50; ++i) {
      const int m = 2 + static_cast<int>(rng.uniform() * 7);
      const RadialDensity d = random_density(rng, 0.05, M_PI / 2);
      const double lambda = hessian_rot(d, m);
      pd = pd && lambda > 0;
      bound = bound && lambda < 2.0;
      const double rm = find_hessian_zero(m).value;
      const RadialDensity d2 = random_density(rng, 0.05, rm);
      tr = tr && m * hessian_rot(d2, m) > 0;
      bound = bound && hessian_rot(d2, m) < 2.0;
    }
    v.check("hemispherical support gives positive-definite Hessian", pd);
    v.check("support inside R_m gives positive trace", tr);
    v.check("lambda_max < 2 on randomized densities", bound);
  }

  // constructions
  {
    // thin annuli admit no smeary density: the builder must refuse at
    // eps = 0.2 and succeed from the minimal workable dimension at 0.8
    bool refused = false;
    try {
      build_smeary_rot(min_admissible_dim(0.2), 0.2);
    } catch (const domain_error&) {
      refused = true;
    }
    v.check("smeary builder refuses infeasible eps = 0.2", refused);
    int m_min = min_admissible_dim(0.8);
    SmearyRecipe rec;
    for (; m_min < 64; ++m_min) {
      try {
        rec = build_smeary_rot(m_min, 0.8);
        break;
      } catch (const domain_error&) {
      }
    }
    v.check("smeary recipe at minimal workable m for eps = 0.8",
            std::abs(rec.report.hess_eigs[0]) <= 1e-8 &&
                rec.report.quartic_scalar > 0 &&
                std::abs(rec.density.normalizer(m_min) - 1.0) <= 1e-10 &&
                rec.density.lo() > M_PI / 2 &&
                rec.density.hi() < M_PI / 2 + 0.8,
            "m = " + std::to_string(m_min));
    const DirectionalRecipe dr = build_directional(2, 0.3);
    const double mu_ref = (dr.angular.lambda_par - dr.angular.lambda_perp) /
                          (1.0 - dr.angular.lambda_perp);
    v.check("directional recipe at m = 2",
            dr.report.classification == Classification::Rank1PSD &&
                std::abs(dr.report.hess_eigs[1]) <= 1e-8 &&
                std::abs(dr.report.hess_eigs[0] / 2 - mu_ref) <= 1e-8 &&
                dr.kernel_quartic > 0);
    const HighModulation hm = build_high_modulation(2, 0.1);
    v.check("high-modulation bump, target 0.1",
            hm.lambda > 0 && hm.lambda <= 0.1 && hm.implied_m_inf >= 400);
  }

  // modulation theory
  {
    const RadialDensity cap = RadialDensity::uniform(1e-9, 1.0);
    bool mono = true;
    TheoryRow prev = theory_row(2, cap);
    for (int m = 3; m <= 200; ++m) {
      const TheoryRow row = theory_row(m, cap);
      mono = mono && row.s_m < prev.s_m && row.m_inf > prev.m_inf;
      prev = row;
    }
    v.check("s_m decreasing, m_inf increasing, m = 2..200", mono);
    const double limit = 1.0 / std::pow(1.0 / std::tan(1.0), 2);
    const TheoryRow t400 = theory_row(400, cap);
    v.check("m_inf(400) near the dimension limit",
            std::abs(t400.m_inf / limit - 1.0) < 0.05);
  }

  // Monte-Carlo determinism and sanity (small scale)
  {
    const RadialDensity cap = RadialDensity::uniform(1e-9, M_PI / 2 - 1e-4);
    const auto a = modulation_samples(2, 200, 8, cap, 99u);
    const auto b = modulation_samples_serial(2, 200, 8, cap, 99u);
    bool same = a.size() == b.size();
    double mean = 0.0;
    for (std::size_t i = 0; i < a.size() && same; ++i) {
      same = a[i].z_n == b[i].z_n && a[i].seed == b[i].seed && !a[i].failed;
      mean += a[i].z_n;
    }
    mean /= a.size();
    v.check("parallel and serial replicate paths agree bit-exactly", same);
    v.check("small-scale modulation estimate is positive", mean > 0,
            fmt(mean));
  }

  std::cout << (v.failures == 0 ? "verify: all checks passed\n"
                                : "verify: FAILURES\n");
  return v.failures == 0 ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "Analytic and Monte-Carlo machinery for smeariness of Fréchet means "
      "on spheres"};
  app.require_subcommand(1);

  // roots
  std::string roots_range = "2:200", roots_out;
  auto* roots = app.add_subcommand("roots", "critical radii R_m and S_m");
  roots->add_option("--m-range", roots_range, "dimension range lo:hi");
  roots->add_option("--out", roots_out, "output file (default stdout)");

  // kernels
  std::string k_what = "table", k_out;
  int k_m = 2, k_grid = 0;
  double k_R = 1.0, k_alpha = 0.0;
  auto* kernels = app.add_subcommand("kernels", "kernel tables and Taylor data");
  kernels->add_option("--what", k_what, "'table' or 'taylor'");
  kernels->add_option("--m", k_m, "dimension");
  kernels->add_option("--grid", k_grid, "number of radii for the table");
  kernels->add_option("--R", k_R, "radius for --what taylor");
  kernels->add_option("--alpha", k_alpha, "direction cosine for --what taylor");
  kernels->add_option("--out", k_out, "output file (default stdout)");

  // spectra
  std::string s_density, s_out;
  int s_m = 0;
  auto* spectra = app.add_subcommand("spectra", "spectral report for a density");
  spectra->add_option("--density", s_density, "density config JSON")
      ->required();
  spectra->add_option("--m", s_m, "dimension (overrides the config)");
  spectra->add_option("--out", s_out, "output file (default stdout)");

  // construct
  auto* construct = app.add_subcommand("construct", "constructive densities");
  construct->require_subcommand(1);
  int cs_m = 0, cd_m = 0;
  double cs_eps = 0.2, cd_eps = 0.3;
  std::string cs_out, cd_out;
  auto* csm = construct->add_subcommand("smeary", "two-annulus density");
  csm->add_option("--m", cs_m, "dimension")->required();
  csm->add_option("--eps", cs_eps, "annulus width bound");
  csm->add_option("--out", cs_out, "recipe file (default stdout)");
  auto* cdir = construct->add_subcommand("directional", "rank-one density");
  cdir->add_option("--m", cd_m, "dimension")->required();
  cdir->add_option("--eps", cd_eps, "support width bound");
  cdir->add_option("--out", cd_out, "recipe file (default stdout)");

  // simulate
  std::string sim_dims = "2,3,5,10,50,100,200", sim_ns = "1000,2000,3000";
  std::string sim_out, sim_svg, sim_init = "north";
  int sim_reps = 3;
  double sim_reps_eps = M_PI / 2 - 1e-4;
  std::uint64_t sim_seed = 1;
  bool sim_serial = false;
  auto* simulate = app.add_subcommand("simulate", "dimension-sweep experiment");
  simulate->add_option("--dims", sim_dims, "comma-separated dimensions");
  simulate->add_option("--ns", sim_ns, "comma-separated sample sizes");
  simulate->add_option("--reps", sim_reps, "replicates per cell");
  simulate->add_option("--r-eps", sim_reps_eps, "cap radius");
  simulate->add_option("--seed", sim_seed, "master seed");
  simulate->add_option("--out", sim_out, "CSV output file (default stdout)");
  simulate->add_option("--svg", sim_svg, "SVG plot file");
  simulate->add_option("--init", sim_init, "'north' or 'random' start point");
  simulate->add_flag("--serial", sim_serial, "disable the parallel path");

  // verify
  app.add_subcommand("verify", "run the invariant suite");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);
    app.exit(e);
    return 64;
  }

  try {
    if (roots->parsed()) return cmd_roots(roots_range, roots_out);
    if (kernels->parsed())
      return cmd_kernels(k_what, k_m, k_grid, k_R, k_alpha, k_out);
    if (spectra->parsed()) return cmd_spectra(s_density, s_m, s_out);
    if (construct->parsed()) {
      if (csm->parsed()) return cmd_construct_smeary(cs_m, cs_eps, cs_out);
      if (cdir->parsed())
        return cmd_construct_directional(cd_m, cd_eps, cd_out);
    }
    if (simulate->parsed()) {
      if (sim_init != "north" && sim_init != "random")
        throw domain_error("simulate: --init must be 'north' or 'random'");
      return cmd_simulate(sim_dims, sim_ns, sim_reps, sim_reps_eps, sim_seed,
                          sim_out, sim_svg, sim_serial, sim_init == "random");
    }
    if (app.get_subcommand("verify")->parsed()) return cmd_verify();
  } catch (const domain_error& e) {
    std::cerr << json{{"error", {{"type", "domain"}, {"message", e.what()}}}}
                     .dump()
              << "\n";
    return 1;
  } catch (const numeric_error& e) {
    std::cerr << json{{"error", {{"type", "numeric"}, {"message", e.what()}}}}
                     .dump()
              << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << json{{"error", {{"type", "internal"}, {"message", e.what()}}}}
                     .dump()
              << "\n";
    return 2;
  }
  return 0;
}
