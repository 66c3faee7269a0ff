#pragma once

// Radial and angular components of the measures under study. A RadialDensity
// is an unnormalized weight w(R) on a support interval inside (0, pi); all
// spectral integrals are taken against the probability measure
//   nu_m(dR) = w(R) (sin R)^{m-1} dR / Z_m.
// An AngularModel is an even density on S^{m-1} summarized by its second and
// fourth moments lambda_par, lambda_perp, beta_perp.

#include <functional>
#include <map>
#include <mutex>
#include <vector>

#include <json.hpp>

#include "smeary/sphere.hpp"

namespace smeary {

class RadialDensity {
 public:
  enum class Kind { Uniform, Vmf, Watson, Zonal, Bumps, Grid };

  struct Bump {
    double center = 0, halfwidth = 0, amplitude = 0;
  };

  // Constant weight on [lo, hi].
  static RadialDensity uniform(double lo, double hi);
  // von Mises-Fisher radial factor e^{kappa (cos R - 1)}.
  static RadialDensity vmf(double kappa, double lo, double hi);
  // Watson radial factor e^{kappa (cos^2 R - 1)}.
  static RadialDensity watson(double kappa, double lo, double hi);
  // Arbitrary nonnegative weight (not serializable).
  static RadialDensity zonal(std::function<double(double)> g, double lo,
                             double hi);
  // Sum of C^2 bumps with profile (x(1-x))^3 on each bump interval.
  static RadialDensity bumps(std::vector<Bump> bs);
  // Piecewise-linear weight through (r[i], w[i]); support [r.front, r.back].
  static RadialDensity grid(std::vector<double> r, std::vector<double> w);

  RadialDensity(const RadialDensity& o);
  RadialDensity& operator=(const RadialDensity& o);

  double weight(double R) const;  // 0 outside [lo, hi]
  double lo() const { return lo_; }
  double hi() const { return hi_; }
  Kind kind() const { return kind_; }
  const std::vector<Bump>& bump_list() const { return bumps_; }

  // Z_m = integral of w(R) (sin R)^{m-1} over the support; cached per m.
  double normalizer(int m) const;

  // E_{nu_m}[f] = (1/Z_m) * integral of f(R) w(R) (sin R)^{m-1}.
  double mean(int m, const std::function<double(double)>& f) const;

  // Rescales the weight so that normalizer(m) == 1.
  RadialDensity normalized(int m) const;

  nlohmann::json to_json() const;
  static RadialDensity from_json(const nlohmann::json& j);

 private:
  RadialDensity() = default;
  void check_support() const;
  // Integration breakpoints: bump edges and centers / grid nodes, so each
  // piece handed to the adaptive quadrature is smooth with no zero plateaus.
  std::vector<double> breakpoints() const;
  double integrate_weighted(int m, const std::function<double(double)>& f,
                            double tol) const;

  Kind kind_ = Kind::Uniform;
  double lo_ = 0, hi_ = 0;
  double kappa_ = 0;
  double scale_ = 1.0;
  std::vector<Bump> bumps_;
  std::vector<double> grid_r_, grid_w_;
  std::function<double(double)> zonal_;
  mutable std::map<int, double> z_cache_;
  mutable std::mutex z_mutex_;
};

struct AngularModel {
  enum class Kind { Uniform, Theta1Exp };
  Kind kind = Kind::Uniform;
  double kappa = 0;
  int m = 2;  // dimension of the ambient sphere S^m; the model lives on S^{m-1}
  double lambda_par = 0, lambda_perp = 0, beta_perp = 0;
};

// Moments of the uniform density on S^{m-1}: lambda = 1/m, beta = 3/(m(m+2)).
AngularModel angular_uniform(int m);

// Moments of the density proportional to e^{kappa Theta_1^2} on S^{m-1}.
// kappa = 0 reduces to the uniform model. Errors for kappa > 700.
AngularModel angular_moments(double kappa, int m);

// E[Theta_1^k] under the theta1_exp(kappa) density on S^{m-1}, computed with
// a quadrature symmetrized about pi/2 so that odd moments vanish exactly
// (the density is even by construction).
double angular_moment(double kappa, int m, int k);

nlohmann::json angular_to_json(const AngularModel& a);
AngularModel angular_from_json(const nlohmann::json& j, int m);

}  // namespace smeary
