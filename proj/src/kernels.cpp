#include "smeary/kernels.hpp"

#include <cmath>
#include <functional>
#include <string>

#include "smeary/sphere.hpp"
#include "smeary/taylor.hpp"

namespace smeary {

namespace {

constexpr double kRootTol = 1e-12;

RootResult bisect(const std::function<double(double)>& f, double lo,
                  double hi) {
  double flo = f(lo);
  double fhi = f(hi);
  if (flo == 0.0) return {lo, lo, hi, 0.0, 0};
  if (fhi == 0.0) return {hi, lo, hi, 0.0, 0};
  if ((flo > 0) == (fhi > 0))
    throw numeric_error("bisect: no sign change on [" + std::to_string(lo) +
                        ", " + std::to_string(hi) + "]");
  RootResult r;
  int it = 0;
  while (hi - lo > kRootTol && it < 200) {
    const double mid = 0.5 * (lo + hi);
    const double fm = f(mid);
    ++it;
    if (fm == 0.0) {
      lo = hi = mid;
      break;
    }
    if ((fm > 0) == (flo > 0)) {
      lo = mid;
      flo = fm;
    } else {
      hi = mid;
    }
  }
  r.value = 0.5 * (lo + hi);
  r.lo = lo;
  r.hi = hi;
  r.residual = std::abs(f(r.value));
  r.iterations = it;
  return r;
}

}  // namespace

double hessian_kernel(int m, double R) {
  if (m < 2) throw domain_error("hessian_kernel: m must be >= 2");
  if (R == 0.0) return static_cast<double>(m);
  if (!(R > 0.0 && R < M_PI))
    throw domain_error("hessian_kernel: R outside (0, pi)");
  return 1.0 + (m - 1) * R / std::tan(R);
}

double quartic_kernel(int m, double R) {
  if (m < 2) throw domain_error("quartic_kernel: m must be >= 2");
  const RadialCoeffs rc = radial_coeffs(R);
  const double R2 = R * R;
  return rc.a0 + rc.a2 * R2 / m + 3.0 * rc.a4 * R2 * R2 / (m * (m + 2.0));
}

double quartic_kernel_raw(int m, double R) {
  if (m < 2) throw domain_error("quartic_kernel_raw: m must be >= 2");
  const RadialCoeffs rc = radial_coeffs_raw(R);
  const double R2 = R * R;
  return rc.a0 + rc.a2 * R2 / m + 3.0 * rc.a4 * R2 * R2 / (m * (m + 2.0));
}

RootResult find_hessian_zero(int m) {
  if (m < 2) throw domain_error("find_hessian_zero: m must be >= 2");
  // b_m is strictly decreasing with b_m(pi/2) = 1 > 0 and b_m -> -inf at pi,
  // so a sign change on (pi/2, pi) is guaranteed. Start from a bracket around
  // the large-m asymptote and widen if needed.
  const double guess =
      M_PI / 2 + 2.0 / (M_PI * (m - 1)) - 8.0 / (std::pow(M_PI, 3) * (m - 1.0) * (m - 1.0));
  auto f = [m](double R) { return hessian_kernel(m, R); };
  double lo = std::max(M_PI / 2, guess - 0.5);
  double hi = std::min(M_PI - 1e-6, guess + 0.5);
  while (f(hi) > 0 && hi < M_PI - 1e-6) hi = std::min(M_PI - 1e-6, hi + 0.3);
  return bisect(f, lo, hi);
}

RootResult find_quartic_zero(int m) {
  if (m < 4)
    throw domain_error(
        "find_quartic_zero: h_m is strictly negative on (0, pi) for m = " +
        std::to_string(m) + ", no zero exists (needs m >= 4)");
  // h_m(pi/2) < 0 and h_m -> +inf at pi; S_m - pi/2 = Theta(1/m), so a scan
  // with step pi/(64 m) cannot jump over the first crossing.
  auto f = [m](double R) { return quartic_kernel(m, R); };
  const double step = M_PI / (64.0 * m);
  double lo = M_PI / 2;
  double hi = lo + step;
  const double cap = M_PI - kRCeiling;
  while (hi < cap && f(hi) < 0) {
    lo = hi;
    hi += step;
  }
  if (hi >= cap)
    throw numeric_error("find_quartic_zero: no sign change found below pi");
  return bisect(f, lo, hi);
}

double quartic_at_hessian_zero_closed(int m) {
  if (m < 4) throw domain_error("quartic_at_hessian_zero_closed: m >= 4");
  const double Rm = find_hessian_zero(m).value;
  const double R2 = Rm * Rm;
  const double mm1 = m - 1.0;
  return -(R2 * mm1 * mm1 * (m + 1.0) - m * (m - 3.0)) /
         (4.0 * R2 * m * mm1 * mm1 * (m + 2.0));
}

double quartic_blowup_coeff(int m) {
  if (m < 3) throw domain_error("quartic_blowup_coeff: m >= 3");
  return (M_PI / 4.0) * (m - 3.0) * (m - 1.0) / (m * (m + 2.0));
}

}  // namespace smeary
