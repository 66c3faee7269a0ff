#pragma once

// Hessian and fourth-derivative data of the lifted Fréchet function at the
// north pole for rotationally symmetric and product (radial x angular)
// measures, spherical-moment identities via Funk-Hecke reduction, and the
// meridian Fréchet profile.

#include <vector>

#include "smeary/density.hpp"

namespace smeary {

enum class Classification {
  PositiveDefinite,
  Rank1PSD,
  ZeroHessianQuarticPositive,
  ZeroHessianQuarticNegative,
};

const char* classification_name(Classification c);

struct SpectralReport {
  std::vector<double> hess_eigs;  // eigenvalues of the Hessian at N
  double quartic_scalar = 0;      // ||w||^4 coefficient (or kernel-restricted)
  double trace = 0;
  Classification classification = Classification::PositiveDefinite;
};

// Classifies by eigenvalue signs at the given tolerance. Throws domain_error
// for an indefinite Hessian (eigenvalue < -tol): not a local-minimum
// candidate.
Classification classify(const std::vector<double>& hess_eigs,
                        double quartic_scalar, double tol = 1e-8);

// Surface measure of S^m.
double sphere_volume(int m);

// Normalized contraction constants of the uniform sphere: 1/m for order 2,
// 3/(m(m+2)) for order 4.
double spherical_moment(int m, int order);

// vol(S^{m-1}) times the normalized moment.
double spherical_moment_vol(int m, int order);

// Integral over S^{m-1} of f(<Theta, e>) for a fixed unit e:
// vol(S^{m-1}) * normalized 1-D integral of f against (1-t^2)^{(m-3)/2},
// computed with the t = cos(theta) substitution.
double funk_hecke(const std::function<double(double)>& f, int m);

// Expectation of f(t) for t = <Theta, e> under the uniform S^{m-1} measure.
double funk_hecke_mean(const std::function<double(double)>& f, int m);

// Rotationally symmetric measure: Hessian = lambda * I_m with
// lambda = 2 (s + (1-s)/m), s = E_{nu_m}[R cot R].
double hessian_rot(const RadialDensity& radial, int m);

// ||w||^4 coefficient of the fourth derivative: 24 E_{nu_m}[h_m].
double quartic_rot(const RadialDensity& radial, int m);

// Product measure radial x angular: eigenvalues 2(s + (1-s) lambda_par)
// (once) and 2(s + (1-s) lambda_perp) (m-1 times); quartic_scalar is the
// kernel-subspace coefficient from quartic_on_kernel.
SpectralReport hessian_product(const RadialDensity& radial,
                               const AngularModel& angular, int m);

// Fréchet profile along a meridian: expected squared distance from the
// point at meridian angle r to a rotationally symmetric measure.
double meridian_profile(const RadialDensity& radial, int m, double r);

// Kernel-restricted quartic coefficient for a product measure:
// 24 E_{nu_m}[A0 + lambda_perp A2 R^2 + beta_perp A4 R^4].
double quartic_on_kernel(const RadialDensity& radial,
                         const AngularModel& angular, int m);

// True iff the largest Hessian eigenvalue is < 2 - 1e-12.
bool lambda_max_check(const SpectralReport& report);

}  // namespace smeary
