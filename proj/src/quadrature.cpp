#include "smeary/quadrature.hpp"

#include <cmath>
#include <initializer_list>
#include <string>
#include <vector>

#include "smeary/sphere.hpp"

namespace smeary {

namespace {

struct QuadState {
  const std::function<double(double)>& f;
  long intervals = 0;
};

double simpson(QuadState& st, double a, double fa, double m, double fm,
               double b, double fb) {
  return (b - a) / 6.0 * (fa + 4.0 * fm + fb);
}

double adapt(QuadState& st, double a, double fa, double m, double fm, double b,
             double fb, double whole, double tol, int depth) {
  const double lm = 0.5 * (a + m);
  const double rm = 0.5 * (m + b);
  const double flm = st.f(lm);
  const double frm = st.f(rm);
  st.intervals += 2;
  if (st.intervals > kQuadMaxIntervals)
    throw numeric_error("integrate: subdivision cap reached, worst interval [" +
                        std::to_string(a) + ", " + std::to_string(b) + "]");
  const double left = simpson(st, a, fa, lm, flm, m, fm);
  const double right = simpson(st, m, fm, rm, frm, b, fb);
  const double delta = left + right - whole;
  // depth floor guards against spuriously small first estimates on
  // integrands whose mass hides between the initial nodes
  if (depth >= 2 && std::abs(delta) <= 15.0 * tol)
    return left + right + delta / 15.0;
  if (depth > 60)
    throw numeric_error("integrate: recursion too deep near x = " +
                        std::to_string(m));
  return adapt(st, a, fa, lm, flm, m, fm, left, 0.5 * tol, depth + 1) +
         adapt(st, m, fm, rm, frm, b, fb, right, 0.5 * tol, depth + 1);
}

}  // namespace

double integrate(const std::function<double(double)>& f, double a, double b,
                 double tol) {
  if (a == b) return 0.0;
  QuadState st{f};
  const double m = 0.5 * (a + b);
  const double fa = f(a);
  const double fm = f(m);
  const double fb = f(b);
  const double whole = simpson(st, a, fa, m, fm, b, fb);
  return adapt(st, a, fa, m, fm, b, fb, whole, tol, 0);
}

double spike_integrate(const std::function<double(double)>& f, double a,
                       double b, double kappa) {
  const double w = 1.0 / std::sqrt(kappa + 1.0);
  std::vector<double> pts = {a};
  for (double x : {a + w, a + 4.0 * w, a + 16.0 * w, b - 16.0 * w, b - 4.0 * w,
                   b - w})
    if (x > pts.back() && x < b) pts.push_back(x);
  pts.push_back(b);
  double total = 0.0;
  for (std::size_t i = 1; i < pts.size(); ++i)
    total += integrate(f, pts[i - 1], pts[i], 1e-13);
  return total;
}

}  // namespace smeary
