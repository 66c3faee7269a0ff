#include "smeary/density.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "smeary/quadrature.hpp"
#include "smeary/taylor.hpp"

namespace smeary {

namespace {

// C^2 bump profile on (0, 1), peak value 1/64 at x = 1/2.
double bump_profile(double x) {
  if (x <= 0.0 || x >= 1.0) return 0.0;
  const double p = x * (1.0 - x);
  return p * p * p;
}

}  // namespace

void RadialDensity::check_support() const {
  if (!(lo_ > 0.0 && hi_ > lo_ && hi_ <= M_PI - kRCeiling))
    throw domain_error(
        "RadialDensity: support must satisfy 0 < lo < hi <= pi - " +
        std::to_string(kRCeiling));
}

RadialDensity RadialDensity::uniform(double lo, double hi) {
  RadialDensity d;
  d.kind_ = Kind::Uniform;
  d.lo_ = lo;
  d.hi_ = hi;
  d.check_support();
  return d;
}

RadialDensity RadialDensity::vmf(double kappa, double lo, double hi) {
  RadialDensity d;
  d.kind_ = Kind::Vmf;
  d.kappa_ = kappa;
  d.lo_ = lo;
  d.hi_ = hi;
  d.check_support();
  return d;
}

RadialDensity RadialDensity::watson(double kappa, double lo, double hi) {
  RadialDensity d;
  d.kind_ = Kind::Watson;
  d.kappa_ = kappa;
  d.lo_ = lo;
  d.hi_ = hi;
  d.check_support();
  return d;
}

RadialDensity RadialDensity::zonal(std::function<double(double)> g, double lo,
                                   double hi) {
  RadialDensity d;
  d.kind_ = Kind::Zonal;
  d.zonal_ = std::move(g);
  d.lo_ = lo;
  d.hi_ = hi;
  d.check_support();
  return d;
}

RadialDensity RadialDensity::bumps(std::vector<Bump> bs) {
  if (bs.empty()) throw domain_error("RadialDensity::bumps: empty bump list");
  RadialDensity d;
  d.kind_ = Kind::Bumps;
  d.bumps_ = std::move(bs);
  d.lo_ = M_PI;
  d.hi_ = 0.0;
  for (const Bump& b : d.bumps_) {
    if (b.halfwidth <= 0.0 || b.amplitude < 0.0)
      throw domain_error("RadialDensity::bumps: bad bump parameters");
    d.lo_ = std::min(d.lo_, b.center - b.halfwidth);
    d.hi_ = std::max(d.hi_, b.center + b.halfwidth);
  }
  d.check_support();
  return d;
}

RadialDensity RadialDensity::grid(std::vector<double> r,
                                  std::vector<double> w) {
  if (r.size() < 2 || r.size() != w.size())
    throw domain_error("RadialDensity::grid: need matched r/w, >= 2 nodes");
  for (std::size_t i = 1; i < r.size(); ++i)
    if (r[i] <= r[i - 1])
      throw domain_error("RadialDensity::grid: r must be strictly increasing");
  for (double wi : w)
    if (wi < 0.0) throw domain_error("RadialDensity::grid: negative weight");
  RadialDensity d;
  d.kind_ = Kind::Grid;
  d.lo_ = r.front();
  d.hi_ = r.back();
  d.grid_r_ = std::move(r);
  d.grid_w_ = std::move(w);
  d.check_support();
  return d;
}

RadialDensity::RadialDensity(const RadialDensity& o)
    : kind_(o.kind_),
      lo_(o.lo_),
      hi_(o.hi_),
      kappa_(o.kappa_),
      scale_(o.scale_),
      bumps_(o.bumps_),
      grid_r_(o.grid_r_),
      grid_w_(o.grid_w_),
      zonal_(o.zonal_) {
  std::lock_guard<std::mutex> lk(o.z_mutex_);
  z_cache_ = o.z_cache_;
}

RadialDensity& RadialDensity::operator=(const RadialDensity& o) {
  if (this == &o) return *this;
  RadialDensity tmp(o);
  kind_ = tmp.kind_;
  lo_ = tmp.lo_;
  hi_ = tmp.hi_;
  kappa_ = tmp.kappa_;
  scale_ = tmp.scale_;
  bumps_ = std::move(tmp.bumps_);
  grid_r_ = std::move(tmp.grid_r_);
  grid_w_ = std::move(tmp.grid_w_);
  zonal_ = std::move(tmp.zonal_);
  z_cache_ = std::move(tmp.z_cache_);
  return *this;
}

double RadialDensity::weight(double R) const {
  if (R < lo_ || R > hi_) return 0.0;
  double w = 0.0;
  switch (kind_) {
    case Kind::Uniform:
      w = 1.0;
      break;
    case Kind::Vmf:
      w = std::exp(kappa_ * (std::cos(R) - 1.0));
      break;
    case Kind::Watson:
      w = std::exp(kappa_ * (std::cos(R) * std::cos(R) - 1.0));
      break;
    case Kind::Zonal:
      w = zonal_(R);
      break;
    case Kind::Bumps:
      for (const Bump& b : bumps_) {
        const double x = (R - (b.center - b.halfwidth)) / (2.0 * b.halfwidth);
        w += b.amplitude * bump_profile(x);
      }
      break;
    case Kind::Grid: {
      auto it = std::upper_bound(grid_r_.begin(), grid_r_.end(), R);
      if (it == grid_r_.begin()) it = grid_r_.begin() + 1;
      if (it == grid_r_.end()) --it;
      const std::size_t i = it - grid_r_.begin();
      const double t = (R - grid_r_[i - 1]) / (grid_r_[i] - grid_r_[i - 1]);
      w = (1.0 - t) * grid_w_[i - 1] + t * grid_w_[i];
      break;
    }
  }
  return scale_ * w;
}

std::vector<double> RadialDensity::breakpoints() const {
  std::vector<double> pts = {lo_, hi_};
  if (kind_ == Kind::Bumps) {
    for (const Bump& b : bumps_)
      for (double x : {b.center - b.halfwidth, b.center, b.center + b.halfwidth})
        if (x > lo_ && x < hi_) pts.push_back(x);
  } else if (kind_ == Kind::Grid) {
    for (double x : grid_r_)
      if (x > lo_ && x < hi_) pts.push_back(x);
  }
  std::sort(pts.begin(), pts.end());
  pts.erase(std::unique(pts.begin(), pts.end(),
                        [](double a, double b) { return b - a < 1e-14; }),
            pts.end());
  return pts;
}

double RadialDensity::integrate_weighted(int m,
                                         const std::function<double(double)>& f,
                                         double tol) const {
  const std::vector<double> pts = breakpoints();
  double total = 0.0;
  for (std::size_t i = 1; i < pts.size(); ++i)
    total += integrate(
        [this, m, &f](double R) {
          return f(R) * weight(R) * volume_weight(R, m);
        },
        pts[i - 1], pts[i], tol);
  return total;
}

double RadialDensity::normalizer(int m) const {
  {
    std::lock_guard<std::mutex> lk(z_mutex_);
    auto it = z_cache_.find(m);
    if (it != z_cache_.end()) return it->second;
  }
  auto one = [](double) { return 1.0; };
  double z = integrate_weighted(m, one, kQuadTol);
  if (!(z > 0.0))
    throw domain_error("RadialDensity: zero-mass density (Z_m = 0)");
  // small masses need a relative, not absolute, tolerance: refine with the
  // first estimate setting the scale, and again if that estimate was off by
  // more than a factor of two (high dimensions push Z_m below 1e-15, where
  // any fixed absolute floor is still far too coarse)
  if (z < 0.1) {
    double z2 = integrate_weighted(m, one, kQuadTol * z);
    if (z2 > 0.0 && (z2 < 0.5 * z || z2 > 2.0 * z))
      z2 = integrate_weighted(m, one, kQuadTol * z2);
    if (z2 > 0.0) z = z2;
  }
  std::lock_guard<std::mutex> lk(z_mutex_);
  z_cache_[m] = z;
  return z;
}

double RadialDensity::mean(int m, const std::function<double(double)>& f) const {
  const double z = normalizer(m);
  return integrate_weighted(m, f, kQuadTol * z) / z;
}

RadialDensity RadialDensity::normalized(int m) const {
  RadialDensity d(*this);
  const double z = normalizer(m);
  d.scale_ /= z;
  std::lock_guard<std::mutex> lk(d.z_mutex_);
  d.z_cache_.clear();
  d.z_cache_[m] = 1.0;
  return d;
}

nlohmann::json RadialDensity::to_json() const {
  nlohmann::json j;
  j["support"] = {lo_, hi_};
  j["scale"] = scale_;
  switch (kind_) {
    case Kind::Uniform:
      j["kind"] = "uniform";
      break;
    case Kind::Vmf:
      j["kind"] = "vmf";
      j["kappa"] = kappa_;
      break;
    case Kind::Watson:
      j["kind"] = "watson";
      j["kappa"] = kappa_;
      break;
    case Kind::Zonal:
      throw domain_error("RadialDensity: zonal weights are not serializable");
    case Kind::Bumps: {
      nlohmann::json bs = nlohmann::json::array();
      for (const Bump& b : bumps_)
        bs.push_back({{"center", b.center},
                      {"halfwidth", b.halfwidth},
                      {"amplitude", b.amplitude}});
      j["kind"] = "bumps";
      j["bumps"] = bs;
      break;
    }
    case Kind::Grid:
      j["kind"] = "grid";
      j["r"] = grid_r_;
      j["w"] = grid_w_;
      break;
  }
  return j;
}

RadialDensity RadialDensity::from_json(const nlohmann::json& j) {
  const std::string kind = j.at("kind").get<std::string>();
  RadialDensity d = [&]() {
    if (kind == "uniform") {
      const auto s = j.at("support");
      return uniform(s.at(0).get<double>(), s.at(1).get<double>());
    }
    if (kind == "vmf") {
      const auto s = j.at("support");
      return vmf(j.at("kappa").get<double>(), s.at(0).get<double>(),
                 s.at(1).get<double>());
    }
    if (kind == "watson") {
      const auto s = j.at("support");
      return watson(j.at("kappa").get<double>(), s.at(0).get<double>(),
                    s.at(1).get<double>());
    }
    if (kind == "bumps") {
      std::vector<Bump> bs;
      for (const auto& bj : j.at("bumps"))
        bs.push_back({bj.at("center").get<double>(),
                      bj.at("halfwidth").get<double>(),
                      bj.at("amplitude").get<double>()});
      return bumps(std::move(bs));
    }
    if (kind == "grid") {
      return grid(j.at("r").get<std::vector<double>>(),
                  j.at("w").get<std::vector<double>>());
    }
    throw domain_error("RadialDensity: unknown kind '" + kind + "'");
  }();
  if (j.contains("scale")) d.scale_ = j.at("scale").get<double>();
  return d;
}

AngularModel angular_uniform(int m) {
  if (m < 2) throw domain_error("angular_uniform: m must be >= 2");
  AngularModel a;
  a.kind = AngularModel::Kind::Uniform;
  a.m = m;
  a.lambda_par = 1.0 / m;
  a.lambda_perp = 1.0 / m;
  a.beta_perp = 3.0 / (m * (m + 2.0));
  return a;
}

AngularModel angular_moments(double kappa, int m) {
  if (m < 2) throw domain_error("angular_moments: m must be >= 2");
  if (kappa < 0.0) throw domain_error("angular_moments: kappa must be >= 0");
  if (kappa > 700.0)
    throw domain_error("angular_moments: kappa > 700 overflows the exponent");
  // Theta = (cos th, sin th * omega) with omega on S^{m-2}; the S^{m-1}
  // integral of a function of Theta_1 reduces to the theta integral with
  // weight (sin th)^{m-2}. The density factor is computed as
  // e^{kappa (cos^2 th - 1)} <= 1 to avoid overflow.
  auto wgt = [kappa, m](double th) {
    const double c = std::cos(th);
    return std::exp(kappa * (c * c - 1.0)) * std::pow(std::sin(th), m - 2);
  };
  const double z =
      spike_integrate([&](double th) { return wgt(th); }, 0.0, M_PI, kappa);
  const double e2 = spike_integrate(
                        [&](double th) {
                          const double c = std::cos(th);
                          return c * c * wgt(th);
                        },
                        0.0, M_PI, kappa) /
                    z;
  const double e4s = spike_integrate(
                         [&](double th) {
                           const double s = std::sin(th);
                           return s * s * s * s * wgt(th);
                         },
                         0.0, M_PI, kappa) /
                     z;
  AngularModel a;
  a.kind = AngularModel::Kind::Theta1Exp;
  a.kappa = kappa;
  a.m = m;
  a.lambda_par = e2;
  a.lambda_perp = (1.0 - e2) / (m - 1.0);
  // E[Theta_2^4] with Theta_2 = sin th * omega_1 and E[omega_1^4] over
  // S^{m-2} equal to 3/((m-1)(m+1)).
  a.beta_perp = 3.0 / ((m - 1.0) * (m + 1.0)) * e4s;
  return a;
}

double angular_moment(double kappa, int m, int k) {
  if (m < 2) throw domain_error("angular_moment: m must be >= 2");
  if (kappa < 0.0 || kappa > 700.0)
    throw domain_error("angular_moment: kappa outside [0, 700]");
  if (k < 0) throw domain_error("angular_moment: k must be >= 0");
  // Pair theta with pi - theta: both carry the same even weight, and the
  // cos^k contributions are c^k and (-c)^k, so odd k cancels pointwise.
  auto wgt = [kappa, m](double c, double s) {
    return std::exp(kappa * (c * c - 1.0)) * std::pow(s, m - 2);
  };
  auto pair_num = [&](double th) {
    const double c = std::cos(th), s = std::sin(th);
    const double ck = std::pow(c, k);
    const double mk = (k % 2 == 0) ? ck : -ck;
    return (ck + mk) * wgt(c, s);
  };
  auto pair_den = [&](double th) {
    const double c = std::cos(th), s = std::sin(th);
    return 2.0 * wgt(c, s);
  };
  const double num = spike_integrate(pair_num, 0.0, M_PI / 2, kappa);
  const double den = spike_integrate(pair_den, 0.0, M_PI / 2, kappa);
  return num / den;
}

nlohmann::json angular_to_json(const AngularModel& a) {
  nlohmann::json j;
  j["kind"] = a.kind == AngularModel::Kind::Uniform ? "uniform" : "theta1_exp";
  if (a.kind == AngularModel::Kind::Theta1Exp) j["kappa"] = a.kappa;
  j["lambda_par"] = a.lambda_par;
  j["lambda_perp"] = a.lambda_perp;
  j["beta_perp"] = a.beta_perp;
  return j;
}

AngularModel angular_from_json(const nlohmann::json& j, int m) {
  const std::string kind = j.at("kind").get<std::string>();
  if (kind == "uniform") return angular_uniform(m);
  if (kind == "theta1_exp")
    return angular_moments(j.at("kappa").get<double>(), m);
  throw domain_error("AngularModel: unknown kind '" + kind + "'");
}

}  // namespace smeary
