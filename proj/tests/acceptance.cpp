// End-to-end acceptance gate. Each numbered check prints exactly one
// PASS/FAIL line; the process exits nonzero if any check fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include "oracle.hpp"
#include "smeary/constructions.hpp"
#include "smeary/kernels.hpp"
#include "smeary/monte_carlo.hpp"
#include "smeary/quadrature.hpp"
#include "smeary/spectra.hpp"
#include "smeary/taylor.hpp"

using namespace smeary;

namespace {

int g_failures = 0;

void report(int idx, const std::string& name, bool ok,
            const std::string& detail) {
  std::printf("[%s] criterion %2d: %s%s%s\n", ok ? "PASS" : "FAIL", idx,
              name.c_str(), detail.empty() ? "" : " -- ", detail.c_str());
  std::fflush(stdout);
  if (!ok) ++g_failures;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
      .count();
}

std::string fmt(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6g", x);
  return buf;
}

// --------------------------------------------------------------------------

void criterion_1() {
  const auto t0 = std::chrono::steady_clock::now();
  bool ok = true;
  std::string detail;
  for (double R : {0.3, 0.8, M_PI / 2, 2.0, 2.8}) {
    for (double alpha : {-1.0, -0.5, 0.0, 0.5, 1.0}) {
      const TaylorCoeffs tc = taylor_coeffs(R, alpha);
      const double cs[5] = {tc.c0, tc.c1, tc.c2, tc.c3, tc.c4};
      const auto f = oracle::line_restriction(R, alpha);
      double fact = 1.0;
      for (int k = 0; k <= 4; ++k) {
        if (k > 0) fact *= k;
        // near R = 2.8 the higher derivatives of f are large enough that
        // coarse steps leave the truncation error of the oracle itself
        // above the gate; these steps keep oracle truncation + roundoff
        // at least an order of magnitude below each tolerance
        const double want =
            oracle::fd_richardson(f, k, k == 4 ? 0.0125 : 0.00625);
        const double tol = (k == 4) ? 1e-4 : 1e-6;
        if (std::abs(fact * cs[k] - want) >
            tol * std::max(1.0, std::abs(want))) {
          ok = false;
          detail = "R=" + fmt(R) + " alpha=" + fmt(alpha) +
                   " k=" + std::to_string(k);
        }
      }
    }
  }
  const double dt = seconds_since(t0);
  ok = ok && dt < 5.0;
  report(1, "Taylor coefficients match the derivative oracle on the 5x5 grid",
         ok, detail.empty() ? (fmt(dt) + " s") : detail);
}

void criterion_2() {
  bool ok = true;
  for (int m = 2; m <= 64; ++m)
    ok = ok && std::abs(quartic_kernel(m, M_PI / 2) -
                        (1.0 - m) / (3.0 * m * (m + 2.0))) < 1e-10;
  const double h = 1e-5;
  auto slope = [&](int m) {
    return (quartic_kernel(m, M_PI / 2 + h) -
            quartic_kernel(m, M_PI / 2 - h)) /
           (2 * h);
  };
  ok = ok && slope(6) < 0 && std::abs(slope(7)) < 1e-9 && slope(8) > 0;
  report(2, "quartic kernel endpoint values and slope sign flip across m = 7",
         ok, "");
}

void criterion_3() {
  bool ok = true;
  for (int i = 0; i < 500; ++i) {
    const double R = 0.05 + (M_PI - 0.1) * (i + 0.5) / 500.0;
    ok = ok && std::abs(quartic_kernel(3, R) -
                        (2.0 / 45.0) * (R / std::tan(R) - 1.0)) < 1e-10;
    const double s = std::sin(R), c = std::cos(R);
    const double h2 =
        (R * c * (3 + 2 * s * s) - s * (3 + s * s)) / (96.0 * s * s * s);
    ok = ok && std::abs(quartic_kernel(2, R) - h2) < 1e-10;
  }
  report(3, "closed forms for h_2 and h_3 on 500-point grids", ok, "");
}

void criterion_4() {
  const auto t0 = std::chrono::steady_clock::now();
  // independent coarse-grained bisection oracle for R_2
  double lo = M_PI / 2, hi = M_PI - 1e-6;
  for (int i = 0; i < 200; ++i) {
    const double mid = 0.5 * (lo + hi);
    if (1.0 + mid / std::tan(mid) > 0)
      lo = mid;
    else
      hi = mid;
  }
  bool ok = std::abs(find_hessian_zero(2).value - 0.5 * (lo + hi)) < 1e-10;
  for (int m = 4; m <= 200; ++m)
    ok = ok && find_hessian_zero(m).value < find_quartic_zero(m).value;
  for (int m = 100; m <= 400; m += 30) {
    const double rm = find_hessian_zero(m).value;
    const double sm = find_quartic_zero(m).value;
    ok = ok && std::abs((rm - M_PI / 2) * M_PI * (m - 1) / 2.0 - 1.0) < 0.1;
    ok = ok && std::abs((sm - M_PI / 2) * M_PI * m / 8.0 - 1.0) < 0.1;
  }
  const double dt = seconds_since(t0);
  ok = ok && dt < 10.0;
  report(4, "critical radii: R_2 oracle, ordering, asymptotics", ok,
         fmt(dt) + " s");
}

void criterion_5() {
  bool ok = true;
  for (int m = 2; m <= 12; ++m) {
    ok = ok && std::abs(funk_hecke_mean([](double t) { return t * t; }, m) -
                        1.0 / m) < 1e-10;
    ok = ok &&
         std::abs(funk_hecke_mean([](double t) { return std::pow(t, 4); }, m) -
                  3.0 / (m * (m + 2.0))) < 1e-10;
  }
  report(5, "spherical moment identities via Funk-Hecke quadrature", ok, "");
}

void criterion_6() {
  const auto t0 = std::chrono::steady_clock::now();
  Rng rng(60001u);
  bool ok = true;
  for (int i = 0; i < 200; ++i) {
    const int m = 2 + static_cast<int>(rng.uniform() * 8);
    const RadialDensity hemi = oracle::random_density(rng, 0.02, M_PI / 2);
    ok = ok && hessian_rot(hemi, m) > 0;
  }
  for (int i = 0; i < 200; ++i) {
    const int m = 2 + static_cast<int>(rng.uniform() * 8);
    const double rm = find_hessian_zero(m).value;
    const RadialDensity ball = oracle::random_density(rng, 0.02, rm);
    ok = ok && m * hessian_rot(ball, m) > 0;
  }
  const double dt = seconds_since(t0);
  ok = ok && dt < 30.0;
  report(6, "hemispherical and sharp-ball Hessian obstructions (400 random "
            "densities)",
         ok, fmt(dt) + " s");
}

void criterion_7() {
  bool ok = true;
  std::string detail;
  try {
    // For eps = 0.2 the annulus admits no zero-Hessian positive-quartic
    // density in any dimension (two-atom extreme-measure bound: the outer
    // ratio h_m/(-b_m) never reaches the inner ratio (-h_m)/b_m for eps
    // below ~0.68); the tool must refuse and report the smallest workable
    // eps for the requested m.
    bool threw = false;
    try {
      build_smeary_rot(min_admissible_dim(0.2), 0.2);
    } catch (const domain_error& e) {
      threw = std::string(e.what()).find("minimal feasible epsilon") !=
              std::string::npos;
    }
    ok = ok && threw;

    // At eps = 0.8 the construction goes through from the minimal
    // dimension the tool accepts; verify the full property suite there.
    const double eps = 0.8;
    int m = min_admissible_dim(eps);
    SmearyRecipe rec;
    for (;; ++m) {
      if (m >= 64) throw numeric_error("no workable dimension below 64");
      try {
        rec = build_smeary_rot(m, eps);
        break;
      } catch (const domain_error&) {
      }
    }
    ok = ok && min_feasible_eps(m) < eps && min_feasible_eps(m - 1) > eps;
    ok = ok && std::abs(rec.report.hess_eigs[0]) <= 1e-8 &&
         rec.report.quartic_scalar > 0 &&
         std::abs(rec.density.normalizer(m) - 1.0) <= 1e-10 &&
         rec.density.lo() > M_PI / 2 && rec.density.hi() < M_PI / 2 + eps &&
         rec.report.classification ==
             Classification::ZeroHessianQuarticPositive;
    detail = "eps 0.2 infeasible in every dimension (refused); built at "
             "minimal workable m = " +
             std::to_string(m) + " for eps = 0.8, |hess| = " +
             fmt(std::abs(rec.report.hess_eigs[0])) +
             ", quartic = " + fmt(rec.report.quartic_scalar);
  } catch (const std::exception& e) {
    ok = false;
    detail = e.what();
  }
  report(7, "two-annulus density: zero Hessian, positive quartic", ok, detail);
}

void criterion_8() {
  bool ok = true;
  std::string detail;
  try {
    for (int m : {2, 3, 5}) {
      const DirectionalRecipe rec = build_directional(m, 0.3);
      ok = ok && rec.report.hess_eigs[0] > 1e-8;
      for (int i = 1; i < m; ++i)
        ok = ok && std::abs(rec.report.hess_eigs[i]) <= 1e-8;
      const double mu_ref =
          (rec.angular.lambda_par - rec.angular.lambda_perp) /
          (1.0 - rec.angular.lambda_perp);
      ok = ok && std::abs(rec.report.hess_eigs[0] / 2.0 - mu_ref) <= 1e-8;
      ok = ok && std::abs(angular_moment(rec.kappa, m, 1)) <= 1e-12 &&
           std::abs(angular_moment(rec.kappa, m, 3)) <= 1e-12;
      ok = ok && rec.kernel_quartic > 0;
      if (!ok && detail.empty()) detail = "m = " + std::to_string(m);
    }
  } catch (const std::exception& e) {
    ok = false;
    detail = e.what();
  }
  report(8, "rank-one product density at m in {2, 3, 5}", ok, detail);
}

void criterion_9() {
  Rng rng(90001u);
  bool ok = true;
  int done = 0;
  while (done < 50) {
    const int m = 2 + static_cast<int>(rng.uniform() * 6);
    const double cap = (m >= 4) ? find_quartic_zero(m).value : (M_PI - 0.05);
    const double rm = find_hessian_zero(m).value;
    const double c1 = 0.2 + rng.uniform() * (rm - 0.4);
    const double w1 = std::min(0.05 + 0.1 * rng.uniform(), (rm - c1) * 0.8);
    const double c2 = rm + (cap - rm) * (0.2 + 0.6 * rng.uniform());
    const double w2 = std::min(
        {0.02 + 0.05 * rng.uniform(), (cap - c2) * 0.8, (c2 - rm) * 0.8});
    if (w1 <= 1e-4 || w2 <= 1e-4) continue;
    RadialDensity::Bump b1{c1, w1, 1.0}, b2{c2, w2, 1.0};
    auto ib = [&](const RadialDensity::Bump& b) {
      RadialDensity d = RadialDensity::bumps({b});
      return integrate(
          [&](double R) {
            return d.weight(R) * hessian_kernel(m, R) * volume_weight(R, m);
          },
          b.center - b.halfwidth, b.center + b.halfwidth, 1e-15);
    };
    const double i1 = ib(b1), i2 = ib(b2);
    if (!(i1 > 0 && i2 < 0)) continue;
    b2.amplitude = i1 / (-i2);
    const RadialDensity d = RadialDensity::bumps({b1, b2});
    ok = ok && std::abs(hessian_rot(d, m)) < 1e-8 && quartic_rot(d, m) < 0;
    ++done;
  }
  report(9, "zero-Hessian calibrations inside S_m give negative quartic (50 "
            "random)",
         ok, "");
}

void criterion_10() {
  const RadialDensity cap = RadialDensity::uniform(1e-9, 1.0);
  bool ok = true;
  TheoryRow prev = theory_row(2, cap);
  for (int m = 3; m <= 199; ++m) {
    const TheoryRow row = theory_row(m, cap);
    ok = ok && row.s_m < prev.s_m && row.m_inf > prev.m_inf;
    prev = row;
  }
  const double limit_factor = std::pow(1.0 / std::tan(1.0), 2);
  ok = ok && std::abs(theory_row(400, cap).m_inf * limit_factor - 1.0) < 0.05;
  report(10, "modulation theory: s_m decreasing, m_inf increasing, limit", ok,
         "");
}

void criterion_11() {
  const auto t0 = std::chrono::steady_clock::now();
  bool ok = true;
  std::string detail;
  const RadialDensity cap = RadialDensity::uniform(1e-9, M_PI / 2 - 1e-4);

  double prev_mean = 0.0;
  for (int m : {2, 3, 5}) {
    const TheoryRow th = theory_row(m, cap);
    const auto recs = modulation_samples(m, 1000, 200, cap, 4242u);
    double mean = 0.0;
    int good = 0;
    for (const auto& r : recs)
      if (!r.failed) {
        mean += r.z_n;
        ++good;
      }
    ok = ok && good == 200;
    mean /= good;
    ok = ok && std::abs(mean / th.m_inf - 1.0) < 0.15;
    ok = ok && mean > prev_mean;
    prev_mean = mean;
    detail += "m=" + std::to_string(m) + ": " + fmt(mean) + " vs " +
              fmt(th.m_inf) + "; ";
  }
  const double dt_small = seconds_since(t0);
  ok = ok && dt_small < 300.0;

  // full grid end-to-end with schema-valid CSV and SVG
  const auto t1 = std::chrono::steady_clock::now();
  ExperimentConfig cfg;
  cfg.master_seed = 31337u;
  const ExperimentResult res = experiment_curse(cfg);
  std::ostringstream csv, svg;
  write_experiment_csv(csv, res);
  write_experiment_svg(svg, res);
  const std::size_t want_rows =
      cfg.dims.size() * cfg.ns.size() * cfg.reps + cfg.dims.size();
  std::size_t lines = 0;
  for (char ch : csv.str())
    if (ch == '\n') ++lines;
  ok = ok && res.records.size() == cfg.dims.size() * cfg.ns.size() * cfg.reps;
  ok = ok && lines == want_rows + 1;
  ok = ok && csv.str().rfind("kind,m,n,rep,z_n,s_m,lambda_m,m_inf\n", 0) == 0;
  ok = ok && svg.str().find("</svg>") != std::string::npos;
  for (const auto& r : res.records) ok = ok && !r.failed;
  const double dt_full = seconds_since(t1);
  ok = ok && dt_full < 1200.0;
  report(11, "Monte-Carlo modulation versus theory and full-grid run", ok,
         detail + "grid " + fmt(dt_full) + " s");
}

void criterion_12() {
  Rng rng(120001u);
  bool ok = true;
  for (int i = 0; i < 100; ++i) {
    const int m = 2 + static_cast<int>(rng.uniform() * 8);
    const RadialDensity d = oracle::random_density(rng, 0.02, M_PI - 0.02);
    SpectralReport rep;
    rep.hess_eigs.assign(m, hessian_rot(d, m));
    ok = ok && lambda_max_check(rep);
  }
  std::string detail;
  try {
    const HighModulation hm = build_high_modulation(2, 0.1);
    ok = ok && hm.lambda > 0 && hm.lambda <= 0.1 && hm.implied_m_inf >= 400;
    detail = "lambda = " + fmt(hm.lambda) +
             ", implied m_inf = " + fmt(hm.implied_m_inf);
  } catch (const std::exception& e) {
    ok = false;
    detail = e.what();
  }
  report(12, "spectral bound lambda_max < 2 and high-modulation target", ok,
         detail);
}

}  // namespace

int main() {
  criterion_1();
  criterion_2();
  criterion_3();
  criterion_4();
  criterion_5();
  criterion_6();
  criterion_7();
  criterion_8();
  criterion_9();
  criterion_10();
  criterion_11();
  criterion_12();
  if (g_failures == 0) {
    std::printf("acceptance: all 12 criteria passed\n");
    return 0;
  }
  std::printf("acceptance: %d criteria FAILED\n", g_failures);
  return 1;
}
