#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "oracle.hpp"
#include "smeary/kernels.hpp"
#include "smeary/quadrature.hpp"
#include "smeary/spectra.hpp"

using namespace smeary;

TEST_CASE("quadrature basics") {
  CHECK(std::abs(integrate([](double x) { return std::sin(x); }, 0, M_PI) -
                 2.0) < 1e-11);
  CHECK(std::abs(integrate([](double x) { return std::sin(x) * std::sin(x); },
                           0, M_PI) -
                 M_PI / 2) < 1e-11);
  // sphere volume recursion vol(S^m) = vol(S^{m-1}) * int (sin R)^{m-1}
  const double i3 =
      integrate([](double R) { return std::pow(std::sin(R), 2); }, 0, M_PI);
  CHECK(std::abs(i3 * sphere_volume(2) - sphere_volume(3)) < 1e-9);
}

TEST_CASE("spherical moments and Funk-Hecke reduction") {
  CHECK(spherical_moment(3, 2) == doctest::Approx(1.0 / 3));
  CHECK(spherical_moment(2, 4) == doctest::Approx(3.0 / 8));
  CHECK_THROWS_AS(spherical_moment(3, 3), domain_error);

  for (int m = 2; m <= 12; ++m) {
    CHECK(std::abs(funk_hecke_mean([](double t) { return t * t; }, m) -
                   1.0 / m) < 1e-10);
    CHECK(std::abs(funk_hecke_mean([](double t) { return std::pow(t, 4); },
                                   m) -
                   3.0 / (m * (m + 2.0))) < 1e-10);
  }

  CHECK(std::abs(funk_hecke([](double) { return 1.0; }, 5) -
                 sphere_volume(4)) < 1e-9);
  CHECK(std::abs(funk_hecke([](double t) { return t; }, 5)) < 1e-11);
  CHECK(std::abs(funk_hecke([](double t) { return t * t; }, 4) -
                 sphere_volume(3) / 4) < 1e-10);
}

TEST_CASE("rotationally symmetric Hessian eigenvalue") {
  // narrow bump at R0 approaches the point-mass value (2/m) b_m(R0)
  const double R0 = M_PI / 4;
  const RadialDensity d = RadialDensity::bumps({{R0, 5e-4, 1.0}});
  CHECK(std::abs(hessian_rot(d, 2) - (1.0 + M_PI / 4)) < 1e-3);

  Rng rng(21);
  for (int i = 0; i < 50; ++i) {
    const int m = 2 + static_cast<int>(rng.uniform() * 7);
    const RadialDensity hemi = oracle::random_density(rng, 0.05, M_PI / 2);
    CHECK(hessian_rot(hemi, m) > 0);
    const double rm = find_hessian_zero(m).value;
    const RadialDensity ball = oracle::random_density(rng, 0.05, rm);
    CHECK(hessian_rot(ball, m) > 0);
  }
}

TEST_CASE("rotationally symmetric quartic sign") {
  Rng rng(22);
  for (int i = 0; i < 20; ++i) {
    const RadialDensity d3 = oracle::random_density(rng, 0.05, M_PI - 0.05);
    CHECK(quartic_rot(d3, 3) < 0);
    const int m = 4 + static_cast<int>(rng.uniform() * 8);
    const double sm = find_quartic_zero(m).value;
    const RadialDensity dm = oracle::random_density(rng, 0.05, sm);
    CHECK(quartic_rot(dm, m) < 0);
  }
}

TEST_CASE("angular moments") {
  for (int m : {2, 3, 5, 9}) {
    const AngularModel u = angular_moments(0.0, m);
    CHECK(u.lambda_par == doctest::Approx(1.0 / m).epsilon(1e-10));
    CHECK(u.lambda_perp == doctest::Approx(1.0 / m).epsilon(1e-10));
    CHECK(u.beta_perp ==
          doctest::Approx(3.0 / (m * (m + 2.0))).epsilon(1e-10));
    for (double kappa : {0.0, 1.0, 10.0, 100.0}) {
      const AngularModel a = angular_moments(kappa, m);
      CHECK(std::abs(a.lambda_par + (m - 1) * a.lambda_perp - 1.0) < 1e-10);
      CHECK(a.lambda_perp <= a.lambda_par + 1e-12);
      CHECK(a.beta_perp <= a.lambda_perp + 1e-12);
      CHECK(a.beta_perp >= 0.0);
    }
  }
  CHECK(angular_moments(100.0, 3).lambda_perp < 0.01);
  CHECK_THROWS_AS(angular_moments(701.0, 3), domain_error);

  // oracle: direct 2-D quadrature on S^2 for kappa = 100, m = 3
  {
    const double kappa = 100.0;
    auto num = integrate(
        [&](double th) {
          const double c = std::cos(th);
          return c * c * std::exp(kappa * (c * c - 1.0)) * std::sin(th);
        },
        0, M_PI);
    auto den = integrate(
        [&](double th) {
          const double c = std::cos(th);
          return std::exp(kappa * (c * c - 1.0)) * std::sin(th);
        },
        0, M_PI);
    CHECK(angular_moments(kappa, 3).lambda_par ==
          doctest::Approx(num / den).epsilon(1e-9));
  }

  // odd moments vanish identically under the symmetrized quadrature
  for (int k : {1, 3}) {
    CHECK(angular_moment(57.0, 3, k) == 0.0);
    CHECK(angular_moment(0.0, 2, k) == 0.0);
  }
  CHECK(std::abs(angular_moment(0.0, 4, 2) - 0.25) < 1e-10);
}

TEST_CASE("product Hessian: reduction, trace, positivity") {
  Rng rng(23);
  for (int i = 0; i < 20; ++i) {
    const int m = 2 + static_cast<int>(rng.uniform() * 5);
    const RadialDensity d = oracle::random_density(rng, 0.05, M_PI / 2 - 0.02);

    // uniform angular model reduces to the rotationally symmetric path
    const SpectralReport rep = hessian_product(d, angular_uniform(m), m);
    const double lam = hessian_rot(d, m);
    for (double e : rep.hess_eigs) CHECK(std::abs(e - lam) < 1e-10);

    // trace identity: sum of eigenvalues = 2 E[b_m]
    const AngularModel a = angular_moments(3.0 * rng.uniform(), m);
    const SpectralReport rp = hessian_product(d, a, m);
    const double tr =
        2.0 * d.mean(m, [m](double R) { return hessian_kernel(m, R); });
    CHECK(std::abs(rp.trace - tr) < 1e-9);
    double sum = 0.0;
    for (double e : rp.hess_eigs) sum += e;
    CHECK(std::abs(rp.trace - sum) < 1e-12);

    // sub-hemispherical support: all eigenvalues positive, with the
    // min_{R <= pi/2 - eps} R cot R lower bound
    const double eps = M_PI / 2 - d.hi();
    const double cbound =
        2.0 * (M_PI / 2 - eps) / std::tan(M_PI / 2 - eps);
    for (double e : rp.hess_eigs) {
      CHECK(e > 0);
      CHECK(e >= cbound - 1e-12);
    }
    CHECK(lambda_max_check(rp));
  }
}

TEST_CASE("quartic on the kernel subspace") {
  Rng rng(24);
  const RadialDensity d = oracle::random_density(rng, 0.3, 2.5);
  for (int m : {2, 4, 7}) {
    CHECK(std::abs(quartic_on_kernel(d, angular_uniform(m), m) -
                   quartic_rot(d, m)) < 1e-10);
  }
}

TEST_CASE("meridian profile") {
  Rng rng(25);
  const RadialDensity d = oracle::random_density(rng, 0.4, 2.0);
  const double second_moment = d.mean(5, [](double R) { return R * R; });
  CHECK(std::abs(meridian_profile(d, 5, 0.0) - second_moment) < 1e-9);

  // annulus just past pi/2 in high dimension: N beats the equator point
  const RadialDensity ann =
      RadialDensity::uniform(M_PI / 2 + 0.25, M_PI / 2 + 0.35);
  CHECK(meridian_profile(ann, 50, 0.0) >
        meridian_profile(ann, 50, M_PI / 2));
}

TEST_CASE("classification taxonomy") {
  CHECK(classify({0.5, 0.2}, -1.0) == Classification::PositiveDefinite);
  CHECK(classify({0.5, 1e-12}, -1.0) == Classification::Rank1PSD);
  CHECK(classify({1e-12, -1e-12}, 0.3) ==
        Classification::ZeroHessianQuarticPositive);
  CHECK(classify({1e-12, -1e-12}, -0.3) ==
        Classification::ZeroHessianQuarticNegative);
  CHECK_THROWS_AS(classify({0.5, -0.5}, 0.0), domain_error);

  SpectralReport degenerate;
  degenerate.hess_eigs = {2.0, 0.5};
  CHECK_FALSE(lambda_max_check(degenerate));
}
