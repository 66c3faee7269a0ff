#pragma once

// The dimension-indexed radial kernels driving the Hessian and quartic of
// the Fréchet function:
//   hessian kernel  b_m(R) = 1 + (m-1) R cot R, with unique zero R_m,
//   quartic kernel  h_m(R) = A0 + A2 R^2 / m + 3 A4 R^4 / (m (m+2)),
// with first zero S_m for m >= 4. Roots are found by bisection on certified
// brackets.

namespace smeary {

struct RootResult {
  double value = 0;      // root location in radians
  double lo = 0, hi = 0;  // final bracket, lo < value < hi
  double residual = 0;   // |kernel(value)|
  int iterations = 0;
};

// b_m(R) = 1 + (m-1) R cot R on (0, pi), continuously extended to b_m(0) = m.
double hessian_kernel(int m, double R);

// h_m assembled from the radial coefficients (series-windowed near pi/2).
double quartic_kernel(int m, double R);

// h_m from the raw closed forms, for conditioning cross-checks.
double quartic_kernel_raw(int m, double R);

// R_m: the unique zero of b_m in (pi/2, pi). Residual <= 1e-12.
RootResult find_hessian_zero(int m);

// S_m: the first zero of h_m right of pi/2, m >= 4. Residual <= 1e-12.
// Errors for m in {2, 3} where h_m < 0 on all of (0, pi).
RootResult find_quartic_zero(int m);

// Closed form for h_m(R_m), m >= 4:
//   -(R_m^2 (m-1)^2 (m+1) - m (m-3)) / (4 R_m^2 m (m-1)^2 (m+2)).
double quartic_at_hessian_zero_closed(int m);

// Leading coefficient of the blow-up h_m(pi - t) ~ coeff * t^{-3}:
//   (pi/4) (m-3)(m-1) / (m (m+2)).
double quartic_blowup_coeff(int m);

}  // namespace smeary
