#pragma once

// Monte-Carlo harness: samplers for the radial and angular factors, sample
// Fréchet means via Riemannian gradient descent, empirical variance
// modulation, and the dimension-sweep experiment with its theoretical
// counterpart rows.

#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "smeary/density.hpp"
#include "smeary/rng.hpp"

namespace smeary {

// Inverse-CDF sampler for nu_m(dR) = w(R) (sin R)^{m-1} dR / Z_m, built on
// a 4096-node cumulative table with linear interpolation. Read-only after
// construction, safe to share across threads.
class RadialSampler {
 public:
  RadialSampler(const RadialDensity& density, int m);
  double draw(Rng& rng) const;
  double cdf(double R) const;
  int m() const { return m_; }

 private:
  int m_ = 0;
  std::vector<double> r_, c_;  // nodes and cumulative masses, c_ in [0, 1]
};

double sample_radial(const RadialSampler& sampler, Rng& rng);

// Uniform point on S^{dim} (vector of length dim + 1), via normalized
// Gaussians. dim = 0 gives a uniform sign.
std::vector<double> sample_sphere_uniform(int dim, Rng& rng);

// Point on S^{m-1} with density proportional to e^{kappa Theta_1^2}, by
// rejection against the uniform with envelope e^{kappa (Theta_1^2 - 1)} <= 1.
// Errors (advising the marginal fallback) when the analytic acceptance rate
// is below 1e-6. Reports the realized acceptance rate if asked.
std::vector<double> sample_theta1_exp(double kappa, int m, Rng& rng,
                                      double* acceptance_rate = nullptr);

// Fallback for extreme kappa: Theta_1 from its 1-D marginal CDF (via the
// theta substitution), the orthogonal part uniform on S^{m-2}.
std::vector<double> sample_theta1_exp_marginal(double kappa, int m, Rng& rng);

struct GdResult {
  AmbientPoint mean;
  int iterations = 0;
  bool converged = true;
};

// Riemannian gradient descent for F_n(p) = (1/n) sum d^2(p, X_j): the
// Karcher iteration p <- exp_p(step * mean log_p X_j) with step halving on
// non-descent (1e-14 slack), stopping when the update norm drops below tol.
GdResult frechet_mean_gd(const std::vector<AmbientPoint>& points,
                         const AmbientPoint& init, double step = 1.0,
                         double tol = 1e-10, int maxiter = 10000);

struct ModulationRecord {
  int m = 0, n = 0, rep = 0;
  double z_n = 0;
  std::uint64_t seed = 0;
  bool failed = false;
  std::string error;
};

struct TheoryRow {
  int m = 0;
  double s_m = 0, lambda_m = 0, m_inf = 0;
};

// s_m = E_{nu_m}[R cot R], lambda_m = 2(s_m + (1-s_m)/m), m_inf =
// 4/lambda_m^2. Requires support inside (0, pi/2).
TheoryRow theory_row(int m, const RadialDensity& weight);

// Z_n = n d^2(mean_n, N) / V_m over independent replicates; V_m is the
// population second radial moment by quadrature. Replicate seeds derive from
// replicate_seed(master_seed, m, n, rep); serial and parallel paths give
// identical output.
std::vector<ModulationRecord> modulation_samples(int m, int n, int reps,
                                                 const RadialDensity& density,
                                                 std::uint64_t master_seed);
std::vector<ModulationRecord> modulation_samples_serial(
    int m, int n, int reps, const RadialDensity& density,
    std::uint64_t master_seed);

struct ExperimentConfig {
  std::vector<int> dims = {2, 3, 5, 10, 50, 100, 200};
  std::vector<int> ns = {1000, 2000, 3000};
  int reps = 3;
  double r_eps = M_PI / 2 - 1e-4;
  std::uint64_t master_seed = 1;
  bool parallel = true;
  bool init_random = false;  // start descent from a random draw instead of N
};

struct ExperimentResult {
  ExperimentConfig config;
  std::vector<ModulationRecord> records;  // sorted by (m, n, rep)
  std::vector<TheoryRow> theory;          // sorted by m
};

// Cap-uniform dimension sweep. Per-cell failures are recorded on the
// affected rows and do not stop the run.
ExperimentResult experiment_curse(const ExperimentConfig& config);

void write_experiment_csv(std::ostream& os, const ExperimentResult& result);
void write_experiment_svg(std::ostream& os, const ExperimentResult& result);

}  // namespace smeary
