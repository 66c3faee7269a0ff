#include "smeary/sphere.hpp"

#include <algorithm>
#include <cmath>

namespace smeary {

namespace {
constexpr double kUnitTol = 1e-12;
constexpr double kAntipodeTol = 1e-12;

double clamp1(double x) { return std::min(1.0, std::max(-1.0, x)); }
}  // namespace

double dot(const std::vector<double>& a, const std::vector<double>& b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

double norm(const std::vector<double>& a) { return std::sqrt(dot(a, a)); }

AmbientPoint north_pole(int m) {
  AmbientPoint p;
  p.coords.assign(m + 1, 0.0);
  p.coords[m] = 1.0;
  return p;
}

bool is_unit(const std::vector<double>& v) {
  return std::abs(norm(v) - 1.0) <= kUnitTol;
}

PolarTangent to_polar(const TangentVector& u) {
  PolarTangent p;
  p.radius = norm(u.comps);
  p.theta.assign(u.comps.size(), 0.0);
  if (p.radius > 0.0) {
    for (std::size_t i = 0; i < u.comps.size(); ++i)
      p.theta[i] = u.comps[i] / p.radius;
  } else if (!u.comps.empty()) {
    p.theta[0] = 1.0;  // arbitrary direction for the zero vector
  }
  return p;
}

TangentVector from_polar(const PolarTangent& p) {
  TangentVector u;
  u.comps.resize(p.theta.size());
  for (std::size_t i = 0; i < p.theta.size(); ++i)
    u.comps[i] = p.radius * p.theta[i];
  return u;
}

AmbientPoint exp_north(const TangentVector& u) {
  const double R = norm(u.comps);
  if (R >= M_PI)
    throw domain_error("exp_north: ||u|| = " + std::to_string(R) +
                       " reaches the cut locus (needs ||u|| < pi)");
  const int m = u.dim();
  AmbientPoint x;
  x.coords.assign(m + 1, 0.0);
  x.coords[m] = std::cos(R);
  if (R > 0.0) {
    const double s = std::sin(R) / R;
    for (int i = 0; i < m; ++i) x.coords[i] = s * u.comps[i];
  }
  return x;
}

TangentVector log_north(const AmbientPoint& x) {
  const int m = x.dim();
  const double c = clamp1(x.coords[m]);
  if (c <= -1.0 + kAntipodeTol)
    throw domain_error("log_north: point at the cut locus of N");
  const double R = std::acos(c);
  TangentVector u;
  u.comps.assign(m, 0.0);
  if (R > 0.0) {
    const double s = std::sin(R);
    if (s > 0.0) {
      for (int i = 0; i < m; ++i) u.comps[i] = (R / s) * x.coords[i];
    }
  }
  return u;
}

double distance(const AmbientPoint& x, const AmbientPoint& y) {
  // chord identity ||x - y|| = 2 sin(d/2): full relative accuracy near d = 0,
  // where acos(<x, y>) bottoms out at sqrt(2 eps) ~ 2e-8 (and mirrored via
  // ||x + y|| near the cut locus)
  const double c = dot(x.coords, y.coords);
  double q = 0.0;
  for (std::size_t i = 0; i < x.coords.size(); ++i) {
    const double d = (c >= 0.0) ? x.coords[i] - y.coords[i]
                                : x.coords[i] + y.coords[i];
    q += d * d;
  }
  const double half = std::asin(std::min(1.0, 0.5 * std::sqrt(q)));
  return (c >= 0.0) ? 2.0 * half : M_PI - 2.0 * half;
}

AmbientPoint exp_at(const AmbientPoint& p, const std::vector<double>& v) {
  const double R = norm(v);
  if (R >= M_PI)
    throw domain_error("exp_at: ||v|| = " + std::to_string(R) +
                       " reaches the cut locus (needs ||v|| < pi)");
  AmbientPoint x;
  x.coords.resize(p.coords.size());
  const double c = std::cos(R);
  const double s = (R > 0.0) ? std::sin(R) / R : 0.0;
  for (std::size_t i = 0; i < p.coords.size(); ++i)
    x.coords[i] = c * p.coords[i] + s * v[i];
  // renormalize to absorb rounding drift along long gradient-descent runs
  const double nx = norm(x.coords);
  for (double& xi : x.coords) xi /= nx;
  return x;
}

std::vector<double> log_at(const AmbientPoint& p, const AmbientPoint& q) {
  const double c = clamp1(dot(p.coords, q.coords));
  if (c <= -1.0 + kAntipodeTol)
    throw domain_error("log_at: q at the cut locus of p");
  const double R = distance(p, q);  // chord-based, accurate near R = 0
  std::vector<double> v(p.coords.size(), 0.0);
  if (R > 0.0) {
    // component of q orthogonal to p, rescaled to length R
    double w2 = 0.0;
    for (std::size_t i = 0; i < v.size(); ++i) {
      v[i] = q.coords[i] - c * p.coords[i];
      w2 += v[i] * v[i];
    }
    const double w = std::sqrt(w2);
    if (w > 0.0)
      for (double& vi : v) vi *= R / w;
  }
  return v;
}

double volume_weight(double R, int m) {
  if (R < 0.0 || R > M_PI)
    throw domain_error("volume_weight: R outside [0, pi]");
  return std::pow(std::sin(R), m - 1);
}

double exp_jacobian(double R, int m) {
  if (R < 0.0 || R > M_PI)
    throw domain_error("exp_jacobian: R outside [0, pi]");
  if (R == 0.0) return 1.0;
  return std::pow(std::sin(R) / R, m - 1);
}

}  // namespace smeary
