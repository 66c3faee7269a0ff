#pragma once

// Geometry of the unit sphere S^m embedded in R^{m+1}: exponential and
// logarithm maps, geodesic distance, polar coordinates and volume weights.
// The north pole N is the last standard basis vector; the tangent space at N
// is identified with the first m coordinates.

#include <stdexcept>
#include <string>
#include <vector>

namespace smeary {

// Thrown when an argument leaves the guarded domain (cut locus, support
// guards, bad parameters). The CLI maps this to exit code 1.
class domain_error : public std::runtime_error {
 public:
  explicit domain_error(const std::string& msg) : std::runtime_error(msg) {}
};

// Thrown when a numerical procedure fails to converge (quadrature cap,
// root bracket failure, sampler breakdown). The CLI maps this to exit code 2.
class numeric_error : public std::runtime_error {
 public:
  explicit numeric_error(const std::string& msg) : std::runtime_error(msg) {}
};

// Unit vector in R^{m+1}.
struct AmbientPoint {
  std::vector<double> coords;
  int dim() const { return static_cast<int>(coords.size()) - 1; }
};

// Vector in T_N S^m, identified with R^m.
struct TangentVector {
  std::vector<double> comps;
  int dim() const { return static_cast<int>(comps.size()); }
};

// Polar form (R, Theta) of a tangent vector at N.
struct PolarTangent {
  double radius = 0.0;
  std::vector<double> theta;  // unit vector in R^m
};

double dot(const std::vector<double>& a, const std::vector<double>& b);
double norm(const std::vector<double>& a);

AmbientPoint north_pole(int m);

// Checks the unit-norm invariant (tolerance 1e-12).
bool is_unit(const std::vector<double>& v);

PolarTangent to_polar(const TangentVector& u);
TangentVector from_polar(const PolarTangent& p);

// exp_N(u) = cos||u|| N + sin||u|| (u/||u||, 0). Requires ||u|| < pi.
AmbientPoint exp_north(const TangentVector& u);

// Inverse of exp_north. Requires x not within 1e-12 of -N.
TangentVector log_north(const AmbientPoint& x);

// Geodesic distance arccos(<x, y>) with the inner product clamped to [-1, 1].
double distance(const AmbientPoint& x, const AmbientPoint& y);

// Exponential map at a general base point p; v is a tangent vector at p
// given in ambient coordinates (<v, p> = 0). Requires ||v|| < pi.
AmbientPoint exp_at(const AmbientPoint& p, const std::vector<double>& v);

// Inverse of exp_at; returns the tangent vector at p pointing to q.
// Requires q not within 1e-12 of the antipode of p.
std::vector<double> log_at(const AmbientPoint& p, const AmbientPoint& q);

// (sin R)^{m-1}, the radial part of the volume element in polar coordinates.
double volume_weight(double R, int m);

// J(R) = (sin R / R)^{m-1}, the Jacobian of exp_N, with J(0) = 1.
double exp_jacobian(double R, int m);

}  // namespace smeary
