#include "smeary/taylor.hpp"

#include <cmath>
#include <string>

namespace smeary {

namespace {

void check_guard(double R, const char* who) {
  if (!(R >= kRFloor && R <= M_PI - kRCeiling)) {
    const char* end = (R < M_PI / 2) ? "0" : "pi";
    throw domain_error(std::string(who) + ": R = " + std::to_string(R) +
                       " outside guarded interval near singular endpoint " +
                       end);
  }
}

// Endpoint series at R = pi/2 + t for the combinations that appear in the
// quartic: A0, A2*R^2, A4*R^4. Truncation error of the degree-9 polynomials
// is below 1e-13 at |t| = kSwitchWindow.
const double kPi = M_PI;
const double kA0Series[10] = {
    0.0,          kPi / 24.0,        1.0 / 3.0, 5.0 * kPi / 36.0,
    4.0 / 9.0,    47.0 * kPi / 360.0, 16.0 / 45.0,
    71.0 * kPi / 756.0, 32.0 / 135.0, 2011.0 * kPi / 34020.0};
const double kA2R2Series[10] = {
    -1.0 / 3.0,  -5.0 * kPi / 12.0,  -7.0 / 3.0, -8.0 * kPi / 9.0,
    -25.0 / 9.0, -29.0 * kPi / 36.0, -98.0 / 45.0,
    -541.0 * kPi / 945.0, -1361.0 / 945.0, -1219.0 * kPi / 3402.0};
const double kA4R4Series[10] = {
    1.0 / 3.0, 3.0 * kPi / 8.0,   2.0,         3.0 * kPi / 4.0,
    7.0 / 3.0, 27.0 * kPi / 40.0, 82.0 / 45.0,
    67.0 * kPi / 140.0, 379.0 / 315.0, 377.0 * kPi / 1260.0};

double poly9(const double* c, double t) {
  double v = c[9];
  for (int k = 8; k >= 0; --k) v = v * t + c[k];
  return v;
}

// The closed forms for A0, A2 R^2, A4 R^4 carry 1/sin^8 R terms whose
// cancellation costs up to eight digits near R = 0 and R = pi. Inside
// kEndWindow of either endpoint the combinations are evaluated from series
// instead: even Taylor series in R at 0, and a Laurent series in t = pi - R
// (poles t^-3 and t^-1 plus a regular part) at pi. Truncation is below
// 3e-14 at the window edge.
constexpr double kEndWindow = 0.35;

// coefficients of R^2, R^4, ..., R^24
const double kA0Zero[12] = {
    -1.0 / 45.0, 4.0 / 945.0, 16.0 / 14175.0, 32.0 / 155925.0,
    20528.0 / 638512875.0, 8864.0 / 1915538625.0, 20512.0 / 32564156625.0,
    486592.0 / 5905953860625.0, 67257104.0 / 6431583754220625.0,
    136978592.0 / 105661733105053125.0,
    31840637728.0 / 201919571963756521875.0,
    11438621504.0 / 605758715891269565625.0};
const double kQZero[12] = {
    1.0 / 45.0, -31.0 / 945.0, -106.0 / 14175.0, -29.0 / 22275.0,
    -127718.0 / 638512875.0, -54566.0 / 1915538625.0,
    -125452.0 / 32564156625.0, -32596133.0 / 64965492466875.0,
    -408367994.0 / 6431583754220625.0, -829903658.0 / 105661733105053125.0,
    -192599040028.0 / 201919571963756521875.0,
    -69104457206.0 / 605758715891269565625.0};
const double kWZero[12] = {
    0.0, 1.0 / 35.0, 2.0 / 315.0, 19.0 / 17325.0, 794.0 / 4729725.0,
    5078.0 / 212837625.0, 212.0 / 65786175.0, 336341.0 / 802043116875.0,
    7580242.0 / 142924083427125.0, 4528922.0 / 690599562778125.0,
    238160596.0 / 299140106612972625.0, 6407315078.0 / 67306523987918840625.0};

double even_series(const double* c, double R) {
  const double x = R * R;
  double v = c[11];
  for (int k = 10; k >= 0; --k) v = v * x + c[k];
  return v * x;
}

// Laurent data at pi: coefficient of t^-3, of t^-1, then t^0 .. t^15
struct PiSeries {
  double m3, m1;
  double poly[16];
};
const PiSeries kA0Pi = {
    kPi / 4.0,
    -kPi / 6.0,
    {0.0, 7.0 * kPi / 180.0, -1.0 / 45.0, -kPi / 630.0, 4.0 / 945.0,
     -43.0 * kPi / 56700.0, 16.0 / 14175.0, -7.0 * kPi / 44550.0,
     32.0 / 155925.0, -6691.0 * kPi / 255405150.0, 20528.0 / 638512875.0,
     -7499.0 * kPi / 1915538625.0, 8864.0 / 1915538625.0,
     -1453.0 * kPi / 2658298500.0, 20512.0 / 32564156625.0,
     -28386377.0 * kPi / 389792954801250.0}};
const PiSeries kQPi = {
    -3.0 * kPi / 2.0,
    2.0 * kPi / 3.0,
    {0.0, -11.0 * kPi / 90.0, 1.0 / 45.0, 16.0 * kPi / 945.0, -31.0 / 945.0,
     149.0 * kPi / 28350.0, -106.0 / 14175.0, 158.0 * kPi / 155925.0,
     -29.0 / 22275.0, 20983.0 * kPi / 127702575.0, -127718.0 / 638512875.0,
     4216.0 * kPi / 174139875.0, -54566.0 / 1915538625.0,
     31193.0 * kPi / 9304044750.0, -125452.0 / 32564156625.0,
     28867438.0 * kPi / 64965492466875.0}};
const PiSeries kWPi = {
    5.0 * kPi / 4.0,
    -kPi / 2.0,
    {0.0, kPi / 12.0, 0.0, -29.0 * kPi / 1890.0, 1.0 / 35.0,
     -17.0 * kPi / 3780.0, 2.0 / 315.0, -89.0 * kPi / 103950.0, 19.0 / 17325.0,
     -1411.0 * kPi / 10216206.0, 794.0 / 4729725.0,
     -12959.0 * kPi / 638512875.0, 5078.0 / 212837625.0,
     -3481.0 * kPi / 1240539300.0, 212.0 / 65786175.0,
     -144818251.0 * kPi / 389792954801250.0}};

double pi_series(const PiSeries& ps, double t) {
  double v = ps.poly[15];
  for (int k = 14; k >= 0; --k) v = v * t + ps.poly[k];
  const double inv = 1.0 / t;
  return ps.m3 * inv * inv * inv + ps.m1 * inv + v;
}

}  // namespace

RadialCoeffs radial_coeffs_raw(double R) {
  check_guard(R, "radial_coeffs_raw");
  const double s = std::sin(R);
  const double c = std::cos(R);
  const double t = std::tan(R);
  const double s2 = s * s, s3 = s2 * s, s4 = s2 * s2, s5 = s4 * s, s6 = s3 * s3,
               s7 = s6 * s, s8 = s4 * s4;
  const double t5 = t * t * t * t * t, t6 = t5 * t, t7 = t6 * t, t8 = t7 * t;
  const double R2 = R * R, R3 = R2 * R, R4 = R2 * R2;

  RadialCoeffs rc;
  rc.a3 = -2.0 / 3.0 + 1.0 / s2 - 1.0 / (R * t5) - 2.0 * c / (R * s3) +
          c / (R * s5);
  rc.b3 = 2.0 / (3.0 * R2) - 1.0 / (R2 * s2) + 1.0 / (R3 * t);
  rc.a4 = (6.0 * R / t - 15.0 * R * c / s3 - 11.0 + 15.0 / s2) / (12.0 * R4);
  rc.a2 = (-4.0 * R / t5 + R * c / s3 + 4.0 * R * c / s5 - 7.0 / t6 +
           12.0 / s2 - 21.0 / s4 + 7.0 / s6) /
          (6.0 * R2);
  const double c5 = c * c * c * c * c, c6 = c5 * c;
  rc.a0 = -R / (6.0 * t7) + R * c5 / (4.0 * s7) - R * c / (12.0 * s7) -
          1.0 / (4.0 * t8) - 3.0 / (4.0 * s4) + 5.0 / (4.0 * s6) +
          3.0 * c6 / (4.0 * s8) - 1.0 / (2.0 * s8);
  return rc;
}

RadialCoeffs radial_coeffs(double R) {
  check_guard(R, "radial_coeffs");
  const double R2 = R * R;
  if (R < kEndWindow) {
    RadialCoeffs rc = radial_coeffs_raw(R);
    rc.a0 = even_series(kA0Zero, R);
    rc.a2 = even_series(kQZero, R) / R2;
    rc.a4 = even_series(kWZero, R) / (R2 * R2);
    return rc;
  }
  if (R > M_PI - kEndWindow) {
    RadialCoeffs rc = radial_coeffs_raw(R);
    const double u = M_PI - R;
    rc.a0 = pi_series(kA0Pi, u);
    rc.a2 = pi_series(kQPi, u) / R2;
    rc.a4 = pi_series(kWPi, u) / (R2 * R2);
    return rc;
  }
  const double t = R - M_PI / 2.0;
  if (std::abs(t) >= kSwitchWindow) return radial_coeffs_raw(R);
  // Inside the window, A0, A2 R^2 and A4 R^4 come from the endpoint series;
  // A3 and B3 are well conditioned at pi/2 and keep their closed forms.
  RadialCoeffs rc = radial_coeffs_raw(R);
  rc.a0 = poly9(kA0Series, t);
  rc.a2 = poly9(kA2R2Series, t) / R2;
  rc.a4 = poly9(kA4R4Series, t) / (R2 * R2);
  return rc;
}

TaylorCoeffs taylor_coeffs(double R, double alpha) {
  if (std::abs(alpha) > 1.0 + 1e-12)
    throw domain_error("taylor_coeffs: |alpha| > 1");
  const RadialCoeffs rc = radial_coeffs(R);
  const double a2 = alpha * alpha;
  const double rcot = R / std::tan(R);
  const double R2 = R * R;
  TaylorCoeffs tc;
  tc.c0 = R2;
  tc.c1 = -2.0 * R * alpha;
  tc.c2 = rcot + a2 * (1.0 - rcot);
  tc.c3 = rc.a3 * R * alpha + rc.b3 * R2 * R * a2 * alpha;
  tc.c4 = rc.a4 * R2 * R2 * a2 * a2 + rc.a2 * R2 * a2 + rc.a0;
  return tc;
}

double g_exact(const TangentVector& u, const TangentVector& v) {
  const double d = distance(exp_north(u), exp_north(v));
  return d * d;
}

double g_taylor(const TangentVector& u, double R,
                const std::vector<double>& theta) {
  const double t = norm(u.comps);
  double alpha = 0.0;
  if (t > 0.0) alpha = dot(u.comps, theta) / t;
  const TaylorCoeffs tc = taylor_coeffs(R, alpha);
  return tc.c0 + t * (tc.c1 + t * (tc.c2 + t * (tc.c3 + t * tc.c4)));
}

double hessian_g(double R, const std::vector<double>& theta,
                 const std::vector<double>& w) {
  check_guard(R, "hessian_g");
  const double rcot = R / std::tan(R);
  const double w2 = dot(w, w);
  const double wt = dot(w, theta);
  return 2.0 * rcot * w2 + 2.0 * (1.0 - rcot) * wt * wt;
}

double quartic_g_diag(double R, const std::vector<double>& theta,
                      const std::vector<double>& w) {
  const RadialCoeffs rc = radial_coeffs(R);
  const double R2 = R * R;
  const double w2 = dot(w, w);
  const double wt = dot(w, theta);
  return 24.0 * (rc.a0 * w2 * w2 + rc.a2 * R2 * w2 * wt * wt +
                 rc.a4 * R2 * R2 * wt * wt * wt * wt);
}

double polarize4(
    const std::function<double(const std::vector<double>&)>& diag,
    const std::vector<double>& w1, const std::vector<double>& w2,
    const std::vector<double>& w3, const std::vector<double>& w4) {
  const std::size_t n = w1.size();
  std::vector<double> s(n);
  double acc = 0.0;
  for (int mask = 0; mask < 16; ++mask) {
    const double e1 = (mask & 1) ? -1.0 : 1.0;
    const double e2 = (mask & 2) ? -1.0 : 1.0;
    const double e3 = (mask & 4) ? -1.0 : 1.0;
    const double e4 = (mask & 8) ? -1.0 : 1.0;
    for (std::size_t i = 0; i < n; ++i)
      s[i] = e1 * w1[i] + e2 * w2[i] + e3 * w3[i] + e4 * w4[i];
    acc += e1 * e2 * e3 * e4 * diag(s);
  }
  return acc / (24.0 * 16.0);
}

}  // namespace smeary
