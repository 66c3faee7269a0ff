#pragma once

// Constructive densities: the rotationally symmetric two-annulus density
// with vanishing Hessian and positive quartic, the rank-one product density
// that is flat in all but one direction, and narrow-bump densities with
// arbitrarily small Hessian (arbitrarily high variance modulation).

#include <json.hpp>

#include "smeary/density.hpp"
#include "smeary/spectra.hpp"

namespace smeary {

struct SmearyRecipe {
  int m = 0;
  double epsilon = 0;
  double eta = 0;               // window with h_m > 0 right of S_m
  RadialDensity::Bump phi1;     // inner annulus bump, b_m > 0 there
  RadialDensity::Bump phi2;     // outer annulus bump in J subset (S_m, S_m+eta)
  double a = 0, b = 0;          // mixing weights, a I1 + b I2 = 0
  double i1 = 0, i2 = 0;        // integrals of phi_i b_m (sin R)^{m-1}
  double j1 = 0, j2 = 0;        // integrals of phi_i h_m (sin R)^{m-1}
  double r_m = 0, s_m = 0;      // kernel roots for this m
  double c_bound = 0;           // m * sup |h_m| on [pi/2, R_m]
  double inner_ratio = 0;       // min over (pi/2,(pi/2+R_m)/2] of -h_m/b_m
  double outer_ratio = 0;       // max over (S_m, pi/2+eps) of h_m/(-b_m)
  RadialDensity density;        // calibrated, mass-1 radial density
  SpectralReport report;

  nlohmann::json to_json() const;
  static SmearyRecipe from_json(const nlohmann::json& j);

  SmearyRecipe() : density(RadialDensity::uniform(1.0, 2.0)) {}
};

struct DirectionalRecipe {
  int m = 0;
  double epsilon = 0;
  double delta = 0;             // half-window around pi/2
  double kappa = 0;             // angular concentration
  double p_star = 0;            // mixing weight between g- and g+
  RadialDensity::Bump g_plus;   // bump below pi/2 (R cot R > 0)
  RadialDensity::Bump g_minus;  // bump above pi/2 (R cot R < 0)
  double s0 = 0, s1 = 0;        // s(p) at p = 0 and p = 1
  double mu_par = 0;            // (lambda_par - lambda_perp)/(1 - lambda_perp)
  double kernel_quartic = 0;    // quartic coefficient on the flat subspace
  RadialDensity density;
  AngularModel angular;
  SpectralReport report;

  nlohmann::json to_json() const;

  DirectionalRecipe() : density(RadialDensity::uniform(1.0, 2.0)) {}
};

// Smallest m for which pi/2 < R_m < S_m < pi/2 + epsilon.
int min_admissible_dim(double epsilon);

// Smallest epsilon for which some density supported in (pi/2, pi/2+epsilon]
// has zero Hessian and positive quartic at dimension m. By the extreme-point
// (two-atom) reduction this is where
//   max_{R in (S_m, pi/2+eps)} h_m(R)/(-b_m(R))
// first exceeds min_{R in (pi/2, (pi/2+R_m)/2]} (-h_m(R))/b_m(R).
// Decreasing in m, with limit ~0.68; in particular no epsilon below that
// admits such a density in any dimension.
double min_feasible_eps(int m);

// Builds the two-annulus density for the given m. Errors below the
// admissible dimension threshold (naming it), and errors when epsilon is
// below min_feasible_eps(m) (naming that too) — zero Hessian with positive
// quartic is then impossible for any density in the annulus. On success the
// result has |Hessian| <= 1e-8, quartic > 0, mass 1, support inside
// (pi/2, pi/2 + epsilon).
SmearyRecipe build_smeary_rot(int m, double epsilon);

// Phi_m(0) - Phi_m(pi/2) for the recipe's density; positive means N is not
// the global Fréchet mean. Requires support bounded away from pi/2.
double check_not_global(const SmearyRecipe& recipe);

// Builds the product density with rank-one Hessian: one eigenvalue
// 2 mu_par > 0, the remaining m-1 within 1e-8 of zero, and positive
// kernel-restricted quartic.
DirectionalRecipe build_directional(int m, double epsilon);

// Narrow bump below R_m calibrated so the (positive) Hessian eigenvalue is
// at most lambda_target; implied modulation limit 4/lambda^2.
struct HighModulation {
  RadialDensity density;
  SpectralReport report;
  double lambda = 0;
  double implied_m_inf = 0;

  HighModulation() : density(RadialDensity::uniform(1.0, 2.0)) {}
};
HighModulation build_high_modulation(int m, double lambda_target);

}  // namespace smeary
