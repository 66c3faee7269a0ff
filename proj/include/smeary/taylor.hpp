#pragma once

// Degree-4 Taylor data of the pulled-back squared geodesic distance
// g(u; v) = d^2(exp_N u, exp_N v) at u = 0, for v = R * Theta, and the
// second/fourth derivative tensors of g. The radial coefficient functions
// are evaluated by closed form away from pi/2 and by a frozen endpoint
// series inside a switchover window where the closed forms lose precision.

#include <functional>
#include <vector>

#include "smeary/sphere.hpp"

namespace smeary {

// Guarded evaluation interval for the radial coefficients:
// [kRFloor, pi - kRCeiling]. Outside it evaluation is a domain error.
inline constexpr double kRFloor = 1e-3;
inline constexpr double kRCeiling = 1e-3;
// Half-width of the series window around pi/2.
inline constexpr double kSwitchWindow = 0.05;

// Values of the radial coefficient functions A_3, B_3, A_4, A_2, A_0 at a
// fixed radius R.
struct RadialCoeffs {
  double a3 = 0, b3 = 0, a4 = 0, a2 = 0, a0 = 0;
};

// Coefficients of the line restriction t |-> g(t a; R Theta) through degree
// 4, with alpha = <a, Theta> in [-1, 1]:
//   c0 = R^2, c1 = -2 R alpha, c2 = R cot R + alpha^2 (1 - R cot R),
//   c3 = A3 R alpha + B3 R^3 alpha^3,
//   c4 = A4 R^4 alpha^4 + A2 R^2 alpha^2 + A0.
struct TaylorCoeffs {
  double c0 = 0, c1 = 0, c2 = 0, c3 = 0, c4 = 0;
};

// Closed forms plus the series window. Throws domain_error outside the
// guarded interval, naming the nearest singular endpoint.
RadialCoeffs radial_coeffs(double R);

// Closed forms only, no series window; exposed for cross-validation of the
// switchover.
RadialCoeffs radial_coeffs_raw(double R);

TaylorCoeffs taylor_coeffs(double R, double alpha);

// Exact pulled-back squared distance g(u; v).
double g_exact(const TangentVector& u, const TangentVector& v);

// Degree-4 Taylor value of g(u; R Theta) via taylor_coeffs.
double g_taylor(const TangentVector& u, double R,
                const std::vector<double>& theta);

// Quadratic form D^2 g(0; R Theta)[w, w]
//   = 2 (R cot R) ||w||^2 + 2 (1 - R cot R) <w, Theta>^2.
double hessian_g(double R, const std::vector<double>& theta,
                 const std::vector<double>& w);

// Diagonal of the fourth derivative, D^4 g(0; R Theta)[w,w,w,w]
//   = 24 (A0 ||w||^4 + A2 R^2 ||w||^2 <w,Theta>^2 + A4 R^4 <w,Theta>^4).
double quartic_g_diag(double R, const std::vector<double>& theta,
                      const std::vector<double>& w);

// Recovers the symmetric 4-linear form from its diagonal:
// (1/(4! 2^4)) sum over signs eps in {+-1}^4 of
//   eps1 eps2 eps3 eps4 * diag(sum eps_i w_i).
double polarize4(
    const std::function<double(const std::vector<double>&)>& diag,
    const std::vector<double>& w1, const std::vector<double>& w2,
    const std::vector<double>& w3, const std::vector<double>& w4);

}  // namespace smeary
