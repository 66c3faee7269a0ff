#pragma once

// Adaptive 1-D quadrature: interval-halving Simpson pairs with an absolute
// error target and a hard cap on the number of subintervals.

#include <functional>

namespace smeary {

inline constexpr double kQuadTol = 1e-11;
inline constexpr long kQuadMaxIntervals = 1L << 20;

// Integrates f over [a, b] to absolute tolerance tol. Throws numeric_error
// (with the worst interval in the message) if the subdivision cap is reached.
double integrate(const std::function<double(double)>& f, double a, double b,
                 double tol = kQuadTol);

// Integrates f over [a, b] when f concentrates in spikes of width
// ~1/sqrt(kappa) at the endpoints (e.g. e^{kappa (cos^2 th - 1)} factors,
// whose endpoint values can still be zero through a (sin th)^{m-2} factor,
// hiding the spikes from the adaptive sampler). Splits at a + w, a + 4w,
// a + 16w and mirrored from b, w = 1/sqrt(kappa + 1), and integrates each
// piece tightly.
double spike_integrate(const std::function<double(double)>& f, double a,
                       double b, double kappa);

}  // namespace smeary
