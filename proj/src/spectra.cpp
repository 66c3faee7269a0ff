#include "smeary/spectra.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "smeary/kernels.hpp"
#include "smeary/quadrature.hpp"
#include "smeary/taylor.hpp"

namespace smeary {

namespace {

double r_cot_r(double R) { return R / std::tan(R); }

// Normalized expectation of f(cos theta) over S^{m-1} via the theta
// substitution, which absorbs the (1-t^2)^{(m-3)/2} endpoint singularity.
double angular_mean(const std::function<double(double)>& f, int m) {
  auto w = [m](double th) { return std::pow(std::sin(th), m - 2); };
  const double z = integrate(w, 0.0, M_PI);
  return integrate([&](double th) { return f(std::cos(th)) * w(th); }, 0.0,
                   M_PI) /
         z;
}

}  // namespace

const char* classification_name(Classification c) {
  switch (c) {
    case Classification::PositiveDefinite:
      return "PositiveDefinite";
    case Classification::Rank1PSD:
      return "Rank1PSD";
    case Classification::ZeroHessianQuarticPositive:
      return "ZeroHessianQuarticPositive";
    case Classification::ZeroHessianQuarticNegative:
      return "ZeroHessianQuarticNegative";
  }
  return "?";
}

Classification classify(const std::vector<double>& hess_eigs,
                        double quartic_scalar, double tol) {
  if (hess_eigs.empty()) throw domain_error("classify: empty spectrum");
  int npos = 0, nzero = 0;
  for (double e : hess_eigs) {
    if (e < -tol)
      throw domain_error(
          "classify: indefinite Hessian (eigenvalue " + std::to_string(e) +
          " < -tol): not a local minimum candidate");
    if (e > tol)
      ++npos;
    else
      ++nzero;
  }
  if (nzero == 0) return Classification::PositiveDefinite;
  if (npos == 1 && nzero == static_cast<int>(hess_eigs.size()) - 1)
    return Classification::Rank1PSD;
  if (npos == 0) {
    if (quartic_scalar > tol)
      return Classification::ZeroHessianQuarticPositive;
    if (quartic_scalar < -tol)
      return Classification::ZeroHessianQuarticNegative;
    throw domain_error("classify: zero Hessian with quartic inside tolerance");
  }
  throw domain_error("classify: degenerate spectrum outside the taxonomy (" +
                     std::to_string(npos) + " positive, " +
                     std::to_string(nzero) + " null eigenvalues)");
}

double sphere_volume(int m) {
  if (m < 0) throw domain_error("sphere_volume: m must be >= 0");
  return 2.0 * std::pow(M_PI, 0.5 * (m + 1)) / std::tgamma(0.5 * (m + 1));
}

double spherical_moment(int m, int order) {
  if (m < 2) throw domain_error("spherical_moment: m must be >= 2");
  if (order == 2) return 1.0 / m;
  if (order == 4) return 3.0 / (m * (m + 2.0));
  throw domain_error("spherical_moment: order must be 2 or 4");
}

double spherical_moment_vol(int m, int order) {
  return sphere_volume(m - 1) * spherical_moment(m, order);
}

double funk_hecke(const std::function<double(double)>& f, int m) {
  if (m < 2) throw domain_error("funk_hecke: m must be >= 2");
  return sphere_volume(m - 1) * angular_mean(f, m);
}

double funk_hecke_mean(const std::function<double(double)>& f, int m) {
  if (m < 2) throw domain_error("funk_hecke_mean: m must be >= 2");
  return angular_mean(f, m);
}

double hessian_rot(const RadialDensity& radial, int m) {
  if (m < 2) throw domain_error("hessian_rot: m must be >= 2");
  const double s = radial.mean(m, r_cot_r);
  return 2.0 * (s + (1.0 - s) / m);
}

double quartic_rot(const RadialDensity& radial, int m) {
  if (m < 2) throw domain_error("quartic_rot: m must be >= 2");
  return 24.0 *
         radial.mean(m, [m](double R) { return quartic_kernel(m, R); });
}

SpectralReport hessian_product(const RadialDensity& radial,
                               const AngularModel& angular, int m) {
  if (angular.m != m)
    throw domain_error("hessian_product: angular model built for m = " +
                       std::to_string(angular.m) + ", measure has m = " +
                       std::to_string(m));
  const double s = radial.mean(m, r_cot_r);
  SpectralReport rep;
  rep.hess_eigs.push_back(2.0 * (s + (1.0 - s) * angular.lambda_par));
  for (int i = 1; i < m; ++i)
    rep.hess_eigs.push_back(2.0 * (s + (1.0 - s) * angular.lambda_perp));
  rep.trace = 0.0;
  for (double e : rep.hess_eigs) rep.trace += e;
  rep.quartic_scalar = quartic_on_kernel(radial, angular, m);
  rep.classification = classify(rep.hess_eigs, rep.quartic_scalar);
  return rep;
}

double meridian_profile(const RadialDensity& radial, int m, double r) {
  if (!(r >= 0.0 && r < M_PI))
    throw domain_error("meridian_profile: r outside [0, pi)");
  const double cr = std::cos(r), sr = std::sin(r);
  return radial.mean(m, [&](double R) {
    const double cR = std::cos(R), sR = std::sin(R);
    return angular_mean(
        [&](double t) {
          const double c = std::min(1.0, std::max(-1.0, cr * cR + sr * sR * t));
          const double d = std::acos(c);
          return d * d;
        },
        m);
  });
}

double quartic_on_kernel(const RadialDensity& radial,
                         const AngularModel& angular, int m) {
  const double lp = angular.lambda_perp;
  const double bp = angular.beta_perp;
  return 24.0 * radial.mean(m, [&](double R) {
    const RadialCoeffs rc = radial_coeffs(R);
    const double R2 = R * R;
    return rc.a0 + lp * rc.a2 * R2 + bp * rc.a4 * R2 * R2;
  });
}

bool lambda_max_check(const SpectralReport& report) {
  const double mx =
      *std::max_element(report.hess_eigs.begin(), report.hess_eigs.end());
  return mx < 2.0 - 1e-12;
}

}  // namespace smeary
