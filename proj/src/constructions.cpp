#include "smeary/constructions.hpp"

#include <cmath>
#include <string>

#include "smeary/kernels.hpp"
#include "smeary/quadrature.hpp"
#include "smeary/taylor.hpp"

namespace smeary {

namespace {

double bump_integral(const RadialDensity::Bump& b, int m,
                     const std::function<double(double)>& f) {
  // Tight tolerance: these integrals calibrate the mixing weights, and the
  // Hessian residual of the calibrated density inherits their absolute
  // error divided by the (small) bump mass.
  RadialDensity d = RadialDensity::bumps({b});
  return integrate(
      [&](double R) { return d.weight(R) * f(R) * volume_weight(R, m); },
      b.center - b.halfwidth, b.center + b.halfwidth, 1e-15);
}

double bump_mass(const RadialDensity::Bump& b, int m) {
  return bump_integral(b, m, [](double) { return 1.0; });
}

// R cot R is strictly decreasing on (0, pi) from 1 to -inf; solves
// R cot R = target by bisection.
double solve_r_cot_r(double target) {
  if (target >= 1.0) throw domain_error("solve_r_cot_r: target must be < 1");
  double lo = 1e-6, hi = M_PI - 1e-6;
  for (int i = 0; i < 200 && hi - lo > 1e-14; ++i) {
    const double mid = 0.5 * (lo + hi);
    if (mid / std::tan(mid) > target)
      lo = mid;
    else
      hi = mid;
  }
  return 0.5 * (lo + hi);
}

// Pointwise calibration ratios. Any mixture with E[b_m] = 0 splits its mass
// between the inner region (b_m > 0, h_m < 0) and the outer region
// (b_m < 0, h_m > 0); by the extreme-point reduction its quartic sign is
// decided by comparing h_m/(-b_m) outside against (-h_m)/b_m inside. The
// scans below locate the best placement on each side.
struct RatioScan {
  double value = 0;  // extremal ratio
  double arg = 0;    // where it is attained
};

RatioScan inner_ratio_min(int m, double r_m) {
  const double hi = 0.5 * (M_PI / 2 + r_m);
  RatioScan best{1e300, hi};
  for (int i = 1; i <= 2000; ++i) {
    const double R = M_PI / 2 + (hi - M_PI / 2) * i / 2000.0;
    const double b = hessian_kernel(m, R);
    if (b <= 0.0) continue;
    const double ratio = -quartic_kernel(m, R) / b;
    if (ratio < best.value) best = {ratio, R};
  }
  return best;
}

RatioScan outer_ratio_max(int m, double s_m, double eps) {
  const double hi = std::min(M_PI / 2 + eps, M_PI - 2e-3);
  RatioScan best{-1e300, s_m};
  if (hi <= s_m) return best;
  for (int i = 1; i < 2000; ++i) {
    const double R = s_m + (hi - s_m) * i / 2000.0;
    const double b = hessian_kernel(m, R);
    if (b >= 0.0) continue;
    const double ratio = quartic_kernel(m, R) / (-b);
    if (ratio > best.value) best = {ratio, R};
  }
  return best;
}

}  // namespace

int min_admissible_dim(double epsilon) {
  if (!(epsilon > 0.0 && epsilon < M_PI / 2))
    throw domain_error("min_admissible_dim: epsilon must lie in (0, pi/2)");
  for (int m = 4; m <= 100000; ++m) {
    const double sm = find_quartic_zero(m).value;
    if (sm < M_PI / 2 + epsilon) return m;  // R_m < S_m holds for all m >= 4
  }
  throw numeric_error("min_admissible_dim: no admissible m found");
}

double min_feasible_eps(int m) {
  const double r_m = find_hessian_zero(m).value;
  const double s_m = find_quartic_zero(m).value;
  const double inner = inner_ratio_min(m, r_m).value;
  double lo = s_m - M_PI / 2, hi = M_PI / 2 - 1e-3;
  if (!(outer_ratio_max(m, s_m, hi).value > inner))
    throw numeric_error(
        "min_feasible_eps: no feasible epsilon below pi/2 for m = " +
        std::to_string(m));
  for (int i = 0; i < 60 && hi - lo > 1e-12; ++i) {
    const double mid = 0.5 * (lo + hi);
    if (outer_ratio_max(m, s_m, mid).value > inner)
      hi = mid;
    else
      lo = mid;
  }
  return hi;
}

SmearyRecipe build_smeary_rot(int m, double epsilon) {
  if (!(epsilon > 0.0 && epsilon < M_PI / 2))
    throw domain_error("build_smeary_rot: epsilon must lie in (0, pi/2)");
  const int m_min = min_admissible_dim(epsilon);
  if (m < m_min)
    throw domain_error("build_smeary_rot: m = " + std::to_string(m) +
                       " too small for epsilon = " + std::to_string(epsilon) +
                       "; minimal admissible m is " + std::to_string(m_min));
  SmearyRecipe rec;
  rec.m = m;
  rec.epsilon = epsilon;
  rec.r_m = find_hessian_zero(m).value;
  rec.s_m = find_quartic_zero(m).value;

  // Feasibility: zero Hessian forces mass on both sides of R_m, and the
  // quartic of any such mixture is positive iff the best outer ratio
  // h_m/(-b_m) beats the best inner ratio (-h_m)/b_m (two-atom extreme
  // measures are optimal). When it does not, no density in the annulus
  // works and we say so rather than thrash the calibration loop.
  const RatioScan inner = inner_ratio_min(m, rec.r_m);
  const RatioScan outer = outer_ratio_max(m, rec.s_m, epsilon);
  rec.inner_ratio = inner.value;
  rec.outer_ratio = outer.value;
  if (!(outer.value > inner.value))
    throw domain_error(
        "build_smeary_rot: no density supported in (pi/2, pi/2 + " +
        std::to_string(epsilon) +
        ") has zero Hessian and positive quartic at m = " +
        std::to_string(m) + "; minimal feasible epsilon is " +
        std::to_string(min_feasible_eps(m)));

  double csup = 0.0;
  for (int i = 0; i <= 512; ++i) {
    const double R = M_PI / 2 + (rec.r_m - M_PI / 2) * i / 512.0;
    csup = std::max(csup, std::abs(quartic_kernel(m, R)));
  }
  rec.c_bound = m * csup;

  // Bumps in the extremal-ratio regions: phi1 hugs pi/2 inside
  // (pi/2, (pi/2+R_m)/2), where b_m > 0, h_m < 0 and the inner ratio
  // approaches its infimum; phi2 is centered on the outer-ratio argmax in
  // J inside (S_m, pi/2+epsilon), where b_m < 0 and h_m > 0.
  const double mid1 = 0.5 * (M_PI / 2 + rec.r_m);
  rec.eta = M_PI / 2 + epsilon - rec.s_m;
  double w1 = 0.25 * (mid1 - M_PI / 2);
  double w2 = 0.45 * std::min(outer.arg - rec.s_m,
                              M_PI / 2 + epsilon - outer.arg);

  auto bm = [m](double R) { return hessian_kernel(m, R); };
  auto hm = [m](double R) { return quartic_kernel(m, R); };

  // Calibrate a I1 + b I2 = 0; if the quartic ratio condition fails at the
  // current widths, halve both supports (amplitude scaling cannot fix it —
  // both sides of the condition are scale invariant). Shrinking drives the
  // bump-averaged ratios to the pointwise extremes, which satisfy the
  // condition strictly by the feasibility check above.
  for (int step = 0; step < 60; ++step) {
    rec.phi1 = {M_PI / 2 + 1.25 * w1, w1, 1.0};
    rec.phi2 = {outer.arg, w2, 1.0};
    rec.i1 = bump_integral(rec.phi1, m, bm);
    rec.j1 = bump_integral(rec.phi1, m, hm);
    rec.i2 = bump_integral(rec.phi2, m, bm);
    rec.j2 = bump_integral(rec.phi2, m, hm);
    if (rec.j2 / (-rec.i2) > (-rec.j1) / rec.i1) break;
    w1 *= 0.5;
    w2 *= 0.5;
    if (step == 59)
      throw numeric_error(
          "build_smeary_rot: quartic ratio condition unattainable; I1 = " +
          std::to_string(rec.i1) + ", I2 = " + std::to_string(rec.i2) +
          ", J1 = " + std::to_string(rec.j1) + ", J2 = " +
          std::to_string(rec.j2));
  }
  if (!(rec.i1 > 0.0 && rec.i2 < 0.0 && rec.j1 < 0.0 && rec.j2 > 0.0))
    throw numeric_error("build_smeary_rot: unexpected signs of I/J integrals");

  rec.a = 1.0;
  rec.b = rec.i1 / (-rec.i2);
  const double mass = rec.a * bump_mass(rec.phi1, m) +
                      rec.b * bump_mass(rec.phi2, m);
  rec.a /= mass;
  rec.b /= mass;
  rec.i1 *= rec.a;
  rec.i2 *= rec.b;
  rec.j1 *= rec.a;
  rec.j2 *= rec.b;

  RadialDensity::Bump p1 = rec.phi1;
  p1.amplitude = rec.a;
  RadialDensity::Bump p2 = rec.phi2;
  p2.amplitude = rec.b;
  rec.density = RadialDensity::bumps({p1, p2});

  const double lambda = hessian_rot(rec.density, m);
  const double quartic = quartic_rot(rec.density, m);
  rec.report.hess_eigs.assign(m, lambda);
  rec.report.quartic_scalar = quartic;
  rec.report.trace = m * lambda;
  rec.report.classification = classify(rec.report.hess_eigs, quartic);
  return rec;
}

double check_not_global(const SmearyRecipe& recipe) {
  const double delta = recipe.density.lo() - M_PI / 2;
  if (!(delta > 0.0))
    throw domain_error(
        "check_not_global: density support must be bounded away from pi/2 "
        "(delta > 0)");
  return meridian_profile(recipe.density, recipe.m, 0.0) -
         meridian_profile(recipe.density, recipe.m, M_PI / 2);
}

DirectionalRecipe build_directional(int m, double epsilon) {
  if (m < 2) throw domain_error("build_directional: m must be >= 2");
  if (!(epsilon > 0.0 && epsilon < M_PI / 2))
    throw domain_error("build_directional: epsilon must lie in (0, pi/2)");
  DirectionalRecipe rec;
  rec.m = m;
  rec.epsilon = epsilon;

  // delta0: largest window half-width with |A0 + (R cot R)/12 - t^2/4|
  // <= t^2/8 for |t| <= delta0 (t = R - pi/2).
  double delta0 = 0.0;
  for (int i = 1; i <= 400; ++i) {
    const double t = i * 1e-3;
    bool ok = true;
    for (double sgn : {-1.0, 1.0}) {
      const double R = M_PI / 2 + sgn * t;
      const double q = radial_coeffs(R).a0 + (R / std::tan(R)) / 12.0;
      if (std::abs(q - t * t / 4.0) > t * t / 8.0) ok = false;
    }
    if (!ok) break;
    delta0 = t;
  }
  const double delta = std::min(epsilon, delta0) / 2.0;
  rec.delta = delta;

  // Radial bumps on either side of pi/2, each normalized to unit nu_m-mass
  // so that s(p) = p s_plus + (1 - p) s_minus is linear in p.
  rec.g_plus = {M_PI / 2 - 0.75 * delta, 0.25 * delta, 1.0};
  rec.g_minus = {M_PI / 2 + 0.75 * delta, 0.25 * delta, 1.0};
  auto rcot = [](double R) { return R / std::tan(R); };
  const double mp = bump_mass(rec.g_plus, m);
  const double mm = bump_mass(rec.g_minus, m);
  const double s_plus = bump_integral(rec.g_plus, m, rcot) / mp;
  const double s_minus = bump_integral(rec.g_minus, m, rcot) / mm;
  rec.s0 = s_minus;
  rec.s1 = s_plus;
  if (!(s_minus < 0.0 && s_plus > 0.0))
    throw numeric_error("build_directional: bisection bracket failure, "
                        "s(0) = " + std::to_string(s_minus) +
                        ", s(1) = " + std::to_string(s_plus));

  // Window bound M = sup |A2 R^2| + |A4 R^4| for the quartic lower bound
  // I >= delta^2/32 - 2 M lambda_perp.
  double M = 0.0;
  for (int i = 0; i <= 64; ++i) {
    const double R = M_PI / 2 - delta + 2.0 * delta * i / 64.0;
    const RadialCoeffs rc = radial_coeffs(R);
    const double R2 = R * R;
    M = std::max(M, std::abs(rc.a2 * R2) + std::abs(rc.a4 * R2 * R2));
  }

  // Concentrate the angular factor. The exponent guard caps kappa at 700;
  // if the analytic bound 2 M lambda_perp < delta^2/64 is out of reach
  // under the cap, the directly computed kernel quartic below still
  // certifies positivity.
  double kappa = 64.0;
  AngularModel ang = angular_moments(kappa, m);
  const double lperp_cal = -s_minus / (1.0 - s_minus);
  while ((ang.lambda_perp >= lperp_cal ||
          2.0 * M * ang.lambda_perp >= delta * delta / 64.0) &&
         kappa < 700.0) {
    kappa = std::min(700.0, kappa * 2.0);
    ang = angular_moments(kappa, m);
  }
  if (ang.lambda_perp >= lperp_cal)
    throw numeric_error(
        "build_directional: kappa search hit the overflow guard before "
        "lambda_perp < -s(0)/(1-s(0))");
  rec.kappa = kappa;
  rec.angular = ang;

  // Bisect p* with mu_perp(p*) = s(p) + (1 - s(p)) lambda_perp = 0.
  auto mu_perp = [&](double p) {
    const double s = p * s_plus + (1.0 - p) * s_minus;
    return s + (1.0 - s) * ang.lambda_perp;
  };
  double lo = 0.0, hi = 1.0;
  for (int i = 0; i < 200 && hi - lo > 1e-16; ++i) {
    const double mid = 0.5 * (lo + hi);
    if (mu_perp(mid) < 0.0)
      lo = mid;
    else
      hi = mid;
  }
  rec.p_star = 0.5 * (lo + hi);

  RadialDensity::Bump bp = rec.g_plus;
  bp.amplitude = rec.p_star / mp;
  RadialDensity::Bump bm = rec.g_minus;
  bm.amplitude = (1.0 - rec.p_star) / mm;
  rec.density = RadialDensity::bumps({bp, bm});

  rec.mu_par = (ang.lambda_par - ang.lambda_perp) / (1.0 - ang.lambda_perp);
  rec.report = hessian_product(rec.density, ang, m);
  rec.kernel_quartic = rec.report.quartic_scalar;
  if (!(rec.kernel_quartic > 0.0))
    throw numeric_error(
        "build_directional: kernel quartic not positive (I = " +
        std::to_string(rec.kernel_quartic) + ")");
  return rec;
}

HighModulation build_high_modulation(int m, double lambda_target) {
  if (m < 2) throw domain_error("build_high_modulation: m must be >= 2");
  if (!(lambda_target > 0.0 && lambda_target < 2.0))
    throw domain_error(
        "build_high_modulation: lambda_target must lie in (0, 2)");
  // Narrow bump at R~ with 2(a + (1-a)/m) just below the target, where
  // a = R~ cot R~; widen the margin until the finite-width value complies.
  double achieved = 0.0;
  for (double margin = 0.9; margin > 0.4; margin *= 0.9) {
    const double a_star =
        (0.5 * margin * lambda_target - 1.0 / m) / (1.0 - 1.0 / m);
    const double r_tilde = solve_r_cot_r(a_star);
    RadialDensity d =
        RadialDensity::bumps({{r_tilde, 1e-3, 1.0}}).normalized(m);
    const double lambda = hessian_rot(d, m);
    if (lambda > 0.0 && lambda <= lambda_target) {
      HighModulation hm;
      hm.density = d;
      hm.lambda = lambda;
      hm.implied_m_inf = 4.0 / (lambda * lambda);
      hm.report.hess_eigs.assign(m, lambda);
      hm.report.trace = m * lambda;
      hm.report.quartic_scalar = quartic_rot(d, m);
      hm.report.classification =
          classify(hm.report.hess_eigs, hm.report.quartic_scalar);
      return hm;
    }
    achieved = lambda;
  }
  throw numeric_error(
      "build_high_modulation: target unreachable; achieved lambda = " +
      std::to_string(achieved));
}

namespace {

nlohmann::json bump_json(const RadialDensity::Bump& b) {
  return {{"center", b.center},
          {"halfwidth", b.halfwidth},
          {"amplitude", b.amplitude}};
}

RadialDensity::Bump bump_from_json(const nlohmann::json& j) {
  return {j.at("center").get<double>(), j.at("halfwidth").get<double>(),
          j.at("amplitude").get<double>()};
}

nlohmann::json report_json(const SpectralReport& r) {
  return {{"hess_eigs", r.hess_eigs},
          {"quartic_scalar", r.quartic_scalar},
          {"trace", r.trace},
          {"classification", classification_name(r.classification)}};
}

}  // namespace

nlohmann::json SmearyRecipe::to_json() const {
  nlohmann::json j;
  j["m"] = m;
  j["epsilon"] = epsilon;
  j["eta"] = eta;
  j["R_m"] = r_m;
  j["S_m"] = s_m;
  j["phi1"] = bump_json(phi1);
  j["phi2"] = bump_json(phi2);
  j["a"] = a;
  j["b"] = b;
  j["I1"] = i1;
  j["I2"] = i2;
  j["J1"] = j1;
  j["J2"] = j2;
  j["C"] = c_bound;
  j["inner_ratio"] = inner_ratio;
  j["outer_ratio"] = outer_ratio;
  j["radial"] = density.to_json();
  j["angular"] = {{"kind", "uniform"}};
  j["report"] = report_json(report);
  return j;
}

SmearyRecipe SmearyRecipe::from_json(const nlohmann::json& j) {
  SmearyRecipe rec;
  rec.m = j.at("m").get<int>();
  rec.epsilon = j.at("epsilon").get<double>();
  rec.eta = j.at("eta").get<double>();
  rec.r_m = j.at("R_m").get<double>();
  rec.s_m = j.at("S_m").get<double>();
  rec.phi1 = bump_from_json(j.at("phi1"));
  rec.phi2 = bump_from_json(j.at("phi2"));
  rec.a = j.at("a").get<double>();
  rec.b = j.at("b").get<double>();
  rec.i1 = j.at("I1").get<double>();
  rec.i2 = j.at("I2").get<double>();
  rec.j1 = j.at("J1").get<double>();
  rec.j2 = j.at("J2").get<double>();
  rec.c_bound = j.value("C", 0.0);
  rec.inner_ratio = j.value("inner_ratio", 0.0);
  rec.outer_ratio = j.value("outer_ratio", 0.0);
  rec.density = RadialDensity::from_json(j.at("radial"));
  const double lambda = hessian_rot(rec.density, rec.m);
  const double quartic = quartic_rot(rec.density, rec.m);
  rec.report.hess_eigs.assign(rec.m, lambda);
  rec.report.quartic_scalar = quartic;
  rec.report.trace = rec.m * lambda;
  rec.report.classification = classify(rec.report.hess_eigs, quartic);
  return rec;
}

nlohmann::json DirectionalRecipe::to_json() const {
  nlohmann::json j;
  j["m"] = m;
  j["epsilon"] = epsilon;
  j["delta"] = delta;
  j["kappa"] = kappa;
  j["p_star"] = p_star;
  j["g_plus"] = bump_json(g_plus);
  j["g_minus"] = bump_json(g_minus);
  j["s0"] = s0;
  j["s1"] = s1;
  j["mu_par"] = mu_par;
  j["kernel_quartic"] = kernel_quartic;
  j["radial"] = density.to_json();
  j["angular"] = angular_to_json(angular);
  j["report"] = report_json(report);
  return j;
}

}  // namespace smeary
