#include "smeary/monte_carlo.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <map>
#include <mutex>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "smeary/quadrature.hpp"

namespace smeary {

namespace {

constexpr int kTableNodes = 4096;

// Cached analytic acceptance rate E_uniform[e^{kappa (Theta_1^2 - 1)}] and
// theta-marginal CDF tables, keyed by (kappa, m).
std::mutex g_angular_mutex;
std::map<std::pair<double, int>, double> g_accept_rate;
std::map<std::pair<double, int>, std::vector<double>> g_theta_cdf;

double angular_weight(double kappa, int m, double th) {
  const double c = std::cos(th);
  return std::exp(kappa * (c * c - 1.0)) * std::pow(std::sin(th), m - 2);
}

double acceptance_rate(double kappa, int m) {
  const auto key = std::make_pair(kappa, m);
  {
    std::lock_guard<std::mutex> lk(g_angular_mutex);
    auto it = g_accept_rate.find(key);
    if (it != g_accept_rate.end()) return it->second;
  }
  // spike-aware: for m >= 3 the integrand vanishes at the endpoints while
  // its mass hides in 1/sqrt(kappa) windows there
  const double num = spike_integrate(
      [&](double th) { return angular_weight(kappa, m, th); }, 0.0, M_PI,
      kappa);
  const double den = integrate(
      [&](double th) { return angular_weight(0.0, m, th); }, 0.0, M_PI);
  const double rate = num / den;
  std::lock_guard<std::mutex> lk(g_angular_mutex);
  g_accept_rate[key] = rate;
  return rate;
}

const std::vector<double>& theta_cdf(double kappa, int m) {
  const auto key = std::make_pair(kappa, m);
  {
    std::lock_guard<std::mutex> lk(g_angular_mutex);
    auto it = g_theta_cdf.find(key);
    if (it != g_theta_cdf.end()) return it->second;
  }
  std::vector<double> c(kTableNodes, 0.0);
  double prev = angular_weight(kappa, m, 0.0);
  const double dth = M_PI / (kTableNodes - 1);
  for (int i = 1; i < kTableNodes; ++i) {
    const double cur = angular_weight(kappa, m, i * dth);
    c[i] = c[i - 1] + 0.5 * (prev + cur) * dth;
    prev = cur;
  }
  for (double& ci : c) ci /= c.back();
  std::lock_guard<std::mutex> lk(g_angular_mutex);
  return g_theta_cdf.emplace(key, std::move(c)).first->second;
}

double table_inverse(const std::vector<double>& r, const std::vector<double>& c,
                     double u) {
  const auto it = std::lower_bound(c.begin(), c.end(), u);
  if (it == c.begin()) return r.front();
  if (it == c.end()) return r.back();
  const std::size_t i = it - c.begin();
  const double dc = c[i] - c[i - 1];
  const double t = dc > 0.0 ? (u - c[i - 1]) / dc : 0.0;
  return r[i - 1] + t * (r[i] - r[i - 1]);
}

double objective(const std::vector<AmbientPoint>& points,
                 const AmbientPoint& p) {
  double f = 0.0;
  for (const AmbientPoint& x : points) {
    const double d = distance(p, x);
    f += d * d;
  }
  return f / points.size();
}

ModulationRecord run_cell(int m, int n, int rep, const RadialSampler& sampler,
                          double v_m, std::uint64_t master_seed,
                          bool init_random = false) {
  ModulationRecord rec;
  rec.m = m;
  rec.n = n;
  rec.rep = rep;
  rec.seed = replicate_seed(master_seed, m, n, rep);
  try {
    Rng rng(rec.seed);
    std::vector<AmbientPoint> points;
    points.reserve(n);
    for (int j = 0; j < n; ++j) {
      const double R = sampler.draw(rng);
      const std::vector<double> theta = sample_sphere_uniform(m - 1, rng);
      TangentVector u;
      u.comps.resize(m);
      for (int i = 0; i < m; ++i) u.comps[i] = R * theta[i];
      points.push_back(exp_north(u));
    }
    AmbientPoint init = north_pole(m);
    if (init_random) {
      const double R = sampler.draw(rng);
      const std::vector<double> theta = sample_sphere_uniform(m - 1, rng);
      TangentVector u;
      u.comps.resize(m);
      for (int i = 0; i < m; ++i) u.comps[i] = R * theta[i];
      init = exp_north(u);
    }
    const GdResult gd = frechet_mean_gd(points, init);
    if (!gd.converged)
      throw numeric_error("gradient descent did not converge");
    const double d = distance(gd.mean, north_pole(m));
    rec.z_n = n * d * d / v_m;
  } catch (const std::exception& e) {
    rec.failed = true;
    rec.error = e.what();
  }
  return rec;
}

std::vector<ModulationRecord> modulation_impl(int m, int n, int reps,
                                              const RadialDensity& density,
                                              std::uint64_t master_seed,
                                              bool parallel) {
  const RadialSampler sampler(density, m);
  const double v_m = density.mean(m, [](double R) { return R * R; });
  std::vector<ModulationRecord> out(reps);
#ifdef _OPENMP
  if (parallel) {
#pragma omp parallel for schedule(dynamic)
    for (int rep = 0; rep < reps; ++rep)
      out[rep] = run_cell(m, n, rep, sampler, v_m, master_seed);
    return out;
  }
#else
  (void)parallel;
#endif
  for (int rep = 0; rep < reps; ++rep)
    out[rep] = run_cell(m, n, rep, sampler, v_m, master_seed);
  return out;
}

void format_double(char* buf, std::size_t len, double x) {
  std::snprintf(buf, len, "%.17g", x);
}

}  // namespace

RadialSampler::RadialSampler(const RadialDensity& density, int m) : m_(m) {
  r_.resize(kTableNodes);
  c_.assign(kTableNodes, 0.0);
  const double lo = density.lo(), hi = density.hi();
  for (int i = 0; i < kTableNodes; ++i)
    r_[i] = lo + (hi - lo) * i / (kTableNodes - 1);
  double prev = density.weight(r_[0]) * volume_weight(r_[0], m);
  for (int i = 1; i < kTableNodes; ++i) {
    const double cur = density.weight(r_[i]) * volume_weight(r_[i], m);
    c_[i] = c_[i - 1] + 0.5 * (prev + cur) * (r_[i] - r_[i - 1]);
    prev = cur;
  }
  if (!(c_.back() > 0.0))
    throw domain_error("RadialSampler: zero-mass density");
  for (double& ci : c_) ci /= c_.back();
}

double RadialSampler::draw(Rng& rng) const {
  return table_inverse(r_, c_, rng.uniform());
}

double RadialSampler::cdf(double R) const {
  if (R <= r_.front()) return 0.0;
  if (R >= r_.back()) return 1.0;
  const auto it = std::upper_bound(r_.begin(), r_.end(), R);
  const std::size_t i = it - r_.begin();
  const double t = (R - r_[i - 1]) / (r_[i] - r_[i - 1]);
  return c_[i - 1] + t * (c_[i] - c_[i - 1]);
}

double sample_radial(const RadialSampler& sampler, Rng& rng) {
  return sampler.draw(rng);
}

std::vector<double> sample_sphere_uniform(int dim, Rng& rng) {
  std::vector<double> v(dim + 1);
  double n2 = 0.0;
  do {
    n2 = 0.0;
    for (double& vi : v) {
      vi = rng.normal();
      n2 += vi * vi;
    }
  } while (n2 == 0.0);
  const double inv = 1.0 / std::sqrt(n2);
  for (double& vi : v) vi *= inv;
  return v;
}

std::vector<double> sample_theta1_exp(double kappa, int m, Rng& rng,
                                      double* out_rate) {
  if (kappa < 0.0) throw domain_error("sample_theta1_exp: kappa must be >= 0");
  const double rate = acceptance_rate(kappa, m);
  if (rate < 1e-6)
    throw numeric_error(
        "sample_theta1_exp: analytic acceptance rate " + std::to_string(rate) +
        " below 1e-6; use sample_theta1_exp_marginal for this kappa");
  long trials = 0;
  for (;;) {
    std::vector<double> theta = sample_sphere_uniform(m - 1, rng);
    ++trials;
    const double t = theta[0];
    if (rng.uniform() <= std::exp(kappa * (t * t - 1.0))) {
      if (out_rate) *out_rate = 1.0 / trials;
      return theta;
    }
  }
}

std::vector<double> sample_theta1_exp_marginal(double kappa, int m, Rng& rng) {
  if (kappa < 0.0)
    throw domain_error("sample_theta1_exp_marginal: kappa must be >= 0");
  const std::vector<double>& c = theta_cdf(kappa, m);
  std::vector<double> nodes(kTableNodes);
  for (int i = 0; i < kTableNodes; ++i)
    nodes[i] = M_PI * i / (kTableNodes - 1);
  const double th = table_inverse(nodes, c, rng.uniform());
  const double t = std::cos(th);
  const double s = std::sqrt(std::max(0.0, 1.0 - t * t));
  const std::vector<double> omega = sample_sphere_uniform(m - 2, rng);
  std::vector<double> theta(m);
  theta[0] = t;
  for (int i = 1; i < m; ++i) theta[i] = s * omega[i - 1];
  return theta;
}

GdResult frechet_mean_gd(const std::vector<AmbientPoint>& points,
                         const AmbientPoint& init, double step, double tol,
                         int maxiter) {
  if (points.empty()) throw domain_error("frechet_mean_gd: no points");
  GdResult res;
  res.mean = init;
  double f = objective(points, res.mean);
  const std::size_t dim = init.coords.size();
  std::vector<double> grad(dim);
  for (int it = 0; it < maxiter; ++it) {
    std::fill(grad.begin(), grad.end(), 0.0);
    for (const AmbientPoint& x : points) {
      const std::vector<double> v = log_at(res.mean, x);
      for (std::size_t i = 0; i < dim; ++i) grad[i] += v[i];
    }
    for (double& gi : grad) gi /= points.size();
    const double gnorm = norm(grad);
    double s = step;
    while (s * gnorm >= M_PI) s *= 0.5;
    AmbientPoint cand;
    double fc = 0.0;
    for (;;) {
      std::vector<double> v(dim);
      for (std::size_t i = 0; i < dim; ++i) v[i] = s * grad[i];
      cand = exp_at(res.mean, v);
      fc = objective(points, cand);
      if (fc <= f + 1e-14) break;
      s *= 0.5;
      if (s < 1e-15) {
        res.iterations = it;
        res.converged = gnorm < tol;
        return res;
      }
    }
    res.mean = cand;
    f = fc;
    res.iterations = it + 1;
    if (s * gnorm < tol) return res;
  }
  res.converged = false;
  return res;
}

TheoryRow theory_row(int m, const RadialDensity& weight) {
  if (!(weight.hi() < M_PI / 2))
    throw domain_error(
        "theory_row: support must lie inside (0, pi/2) for the monotone "
        "modulation theory");
  TheoryRow row;
  row.m = m;
  row.s_m = weight.mean(m, [](double R) { return R / std::tan(R); });
  row.lambda_m = 2.0 * (row.s_m + (1.0 - row.s_m) / m);
  row.m_inf = 4.0 / (row.lambda_m * row.lambda_m);
  return row;
}

std::vector<ModulationRecord> modulation_samples(int m, int n, int reps,
                                                 const RadialDensity& density,
                                                 std::uint64_t master_seed) {
  return modulation_impl(m, n, reps, density, master_seed, true);
}

std::vector<ModulationRecord> modulation_samples_serial(
    int m, int n, int reps, const RadialDensity& density,
    std::uint64_t master_seed) {
  return modulation_impl(m, n, reps, density, master_seed, false);
}

ExperimentResult experiment_curse(const ExperimentConfig& config) {
  ExperimentResult result;
  result.config = config;

  struct Task {
    int mi, ni, rep;
  };
  std::vector<Task> tasks;
  for (std::size_t mi = 0; mi < config.dims.size(); ++mi)
    for (std::size_t ni = 0; ni < config.ns.size(); ++ni)
      for (int rep = 0; rep < config.reps; ++rep)
        tasks.push_back({static_cast<int>(mi), static_cast<int>(ni), rep});
  result.records.resize(tasks.size());

  // Shared per-dimension samplers and second moments.
  std::vector<std::optional<RadialSampler>> samplers(config.dims.size());
  std::vector<double> v_m(config.dims.size(), 0.0);
  std::vector<std::string> dim_errors(config.dims.size());
  const RadialDensity cap = RadialDensity::uniform(1e-9, config.r_eps);
  for (std::size_t mi = 0; mi < config.dims.size(); ++mi) {
    const int m = config.dims[mi];
    try {
      samplers[mi].emplace(cap, m);
      v_m[mi] = cap.mean(m, [](double R) { return R * R; });
      result.theory.push_back(theory_row(m, cap));
    } catch (const std::exception& e) {
      dim_errors[mi] = e.what();
    }
  }

  auto run_task = [&](std::size_t ti) {
    const Task& t = tasks[ti];
    const int m = config.dims[t.mi];
    const int n = config.ns[t.ni];
    if (!dim_errors[t.mi].empty()) {
      ModulationRecord rec;
      rec.m = m;
      rec.n = n;
      rec.rep = t.rep;
      rec.seed = replicate_seed(config.master_seed, m, n, t.rep);
      rec.failed = true;
      rec.error = dim_errors[t.mi];
      result.records[ti] = rec;
      return;
    }
    result.records[ti] =
        run_cell(m, n, t.rep, *samplers[t.mi], v_m[t.mi], config.master_seed,
                 config.init_random);
  };

#ifdef _OPENMP
  if (config.parallel) {
#pragma omp parallel for schedule(dynamic)
    for (std::size_t ti = 0; ti < tasks.size(); ++ti) run_task(ti);
  } else {
    for (std::size_t ti = 0; ti < tasks.size(); ++ti) run_task(ti);
  }
#else
  for (std::size_t ti = 0; ti < tasks.size(); ++ti) run_task(ti);
#endif
  return result;
}

void write_experiment_csv(std::ostream& os, const ExperimentResult& result) {
  os << "kind,m,n,rep,z_n,s_m,lambda_m,m_inf\n";
  char buf[64];
  for (const ModulationRecord& r : result.records) {
    os << "empirical," << r.m << "," << r.n << "," << r.rep << ",";
    if (!r.failed) {
      format_double(buf, sizeof buf, r.z_n);
      os << buf;
    }
    os << ",,,\n";
  }
  for (const TheoryRow& t : result.theory) {
    os << "theory," << t.m << ",,,,";
    format_double(buf, sizeof buf, t.s_m);
    os << buf << ",";
    format_double(buf, sizeof buf, t.lambda_m);
    os << buf << ",";
    format_double(buf, sizeof buf, t.m_inf);
    os << buf << "\n";
  }
}

void write_experiment_svg(std::ostream& os, const ExperimentResult& result) {
  const int W = 720, H = 480;
  const double x0 = 70, x1 = W - 30, y0 = H - 50, y1 = 30;

  // Per-(m, n) empirical means over non-failed replicates.
  std::map<std::pair<int, int>, std::pair<double, int>> acc;
  for (const ModulationRecord& r : result.records)
    if (!r.failed) {
      auto& a = acc[{r.m, r.n}];
      a.first += r.z_n;
      a.second += 1;
    }

  double lo = 1e300, hi = -1e300, mlo = 1e300, mhi = -1e300;
  for (const auto& [key, a] : acc) {
    const double z = a.first / a.second;
    lo = std::min(lo, z);
    hi = std::max(hi, z);
    mlo = std::min(mlo, static_cast<double>(key.first));
    mhi = std::max(mhi, static_cast<double>(key.first));
  }
  for (const TheoryRow& t : result.theory) {
    lo = std::min(lo, t.m_inf);
    hi = std::max(hi, t.m_inf);
    mlo = std::min(mlo, static_cast<double>(t.m));
    mhi = std::max(mhi, static_cast<double>(t.m));
  }
  if (!(lo > 0.0) || acc.empty()) {
    lo = 0.5;
    hi = 2.0;
  }
  if (mhi <= mlo) mhi = mlo + 1;
  const double llo = std::log10(lo) - 0.05, lhi = std::log10(hi) + 0.05;
  const double mllo = std::log10(mlo), mlhi = std::log10(mhi);
  auto px = [&](double m) {
    return x0 + (std::log10(m) - mllo) / (mlhi - mllo) * (x1 - x0);
  };
  auto py = [&](double z) {
    return y0 - (std::log10(z) - llo) / (lhi - llo) * (y0 - y1);
  };

  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << W
     << "\" height=\"" << H << "\">\n";
  os << "<rect width=\"" << W << "\" height=\"" << H
     << "\" fill=\"white\"/>\n";
  os << "<line x1=\"" << x0 << "\" y1=\"" << y0 << "\" x2=\"" << x1
     << "\" y2=\"" << y0 << "\" stroke=\"black\"/>\n";
  os << "<line x1=\"" << x0 << "\" y1=\"" << y0 << "\" x2=\"" << x0
     << "\" y2=\"" << y1 << "\" stroke=\"black\"/>\n";
  os << "<text x=\"" << (x0 + x1) / 2 << "\" y=\"" << H - 12
     << "\" text-anchor=\"middle\" font-size=\"13\">dimension m (log)"
     << "</text>\n";
  os << "<text x=\"18\" y=\"" << (y0 + y1) / 2
     << "\" text-anchor=\"middle\" font-size=\"13\" transform=\"rotate(-90 18 "
     << (y0 + y1) / 2 << ")\">mean Z_n (log)</text>\n";

  for (const TheoryRow& t : result.theory)
    os << "<text x=\"" << px(t.m) << "\" y=\"" << y0 + 16
       << "\" text-anchor=\"middle\" font-size=\"11\">" << t.m << "</text>\n";

  const char* colors[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd",
                          "#8c564b", "#e377c2"};
  int ci = 0;
  for (int n : result.config.ns) {
    os << "<polyline fill=\"none\" stroke=\"" << colors[ci % 6]
       << "\" stroke-width=\"1.5\" points=\"";
    for (int m : result.config.dims) {
      auto it = acc.find({m, n});
      if (it == acc.end()) continue;
      os << px(m) << "," << py(it->second.first / it->second.second) << " ";
    }
    os << "\"/>\n";
    os << "<text x=\"" << x1 - 120 << "\" y=\"" << y1 + 16 + 16 * ci
       << "\" font-size=\"12\" fill=\"" << colors[ci % 6] << "\">n = " << n
       << "</text>\n";
    ++ci;
  }
  if (!result.theory.empty()) {
    os << "<polyline fill=\"none\" stroke=\"black\" stroke-dasharray=\"5,4\" "
          "points=\"";
    for (const TheoryRow& t : result.theory)
      os << px(t.m) << "," << py(t.m_inf) << " ";
    os << "\"/>\n";
    os << "<text x=\"" << x1 - 120 << "\" y=\"" << y1 + 16 + 16 * ci
       << "\" font-size=\"12\">theory m_inf</text>\n";
  }
  os << "</svg>\n";
}

}  // namespace smeary
