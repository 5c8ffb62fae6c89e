#include "judgment/normal.hpp"

#include <array>
#include <cmath>
#include <limits>
#include <string>

namespace judgment {

Probability::Probability(double value) : value_(value) {
  if (!(value >= 0.0 && value <= 1.0)) {
    throw std::domain_error("probability must lie in [0, 1], got " + std::to_string(value));
  }
}

namespace {

// x = |z|/sqrt(2) below 2.5, i.e. |z| < 3.54. Up to there 1 - erf(x) keeps a
// relative error of a few 1e-12; beyond it the continued fraction converges in
// under 40 terms and stays accurate in the far tail.
constexpr double kSeriesLimit = 2.5;

// erf(x) for 0 <= x < kSeriesLimit from the all-positive series
//   erf(x) = 2/sqrt(pi) exp(-x^2) sum_n 2^n x^(2n+1) / (1*3*...*(2n+1))
double erf_series(double x) {
  const double x2 = x * x;
  double term = x;
  double sum = x;
  for (int n = 1; n < 200; ++n) {
    term *= 2.0 * x2 / (2.0 * n + 1.0);
    sum += term;
    if (term < sum * 1e-17) break;
  }
  return 2.0 * kInvSqrtPi * std::exp(-x2) * sum;
}

// erfc(x) for x >= kSeriesLimit, continued fraction
//   erfc(x) = exp(-x^2)/sqrt(pi) * 1/(x + (1/2)/(x + 1/(x + (3/2)/(x + ...))))
// evaluated with the modified Lentz algorithm.
double erfc_continued_fraction(double x) {
  constexpr double kTiny = 1e-300;
  double f = x;
  double c = f;
  double d = 0.0;
  for (int n = 1; n < 5000; ++n) {
    const double a = 0.5 * n;
    d = x + a * d;
    if (d == 0.0) d = kTiny;
    c = x + a / c;
    if (c == 0.0) c = kTiny;
    d = 1.0 / d;
    const double delta = c * d;
    f *= delta;
    if (std::abs(delta - 1.0) < 1e-16) break;
  }
  return std::exp(-x * x) * kInvSqrtPi / f;
}

void require_finite(double z, const char* what) {
  if (!std::isfinite(z)) {
    throw std::domain_error(std::string(what) + ": argument must be finite");
  }
}

// Acklam's rational approximation for the lower half, |relative error| < 1.2e-9.
double acklam_lower(double p) {
  static constexpr std::array<double, 6> a = {-3.969683028665376e+01, 2.209460984245205e+02,
                                              -2.759285104469687e+02, 1.383577518672690e+02,
                                              -3.066479806614716e+01, 2.506628277459239e+00};
  static constexpr std::array<double, 5> b = {-5.447609879822406e+01, 1.615858368580409e+02,
                                              -1.556989798598866e+02, 6.680131188771972e+01,
                                              -1.328068155288572e+01};
  static constexpr std::array<double, 6> c = {-7.784894002430293e-03, -3.223964580411365e-01,
                                              -2.400758277161838e+00, -2.549732539343734e+00,
                                              4.374664141464968e+00,  2.938163982698783e+00};
  static constexpr std::array<double, 4> d = {7.784695709041462e-03, 3.224671290700398e-01,
                                              2.445134137142996e+00, 3.754408661907416e+00};
  constexpr double kLowBreak = 0.02425;

  if (p < kLowBreak) {
    const double q = std::sqrt(-2.0 * std::log(p));
    return (((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
           ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1.0);
  }
  const double q = p - 0.5;
  const double r = q * q;
  return (((((a[0] * r + a[1]) * r + a[2]) * r + a[3]) * r + a[4]) * r + a[5]) * q /
         (((((b[0] * r + b[1]) * r + b[2]) * r + b[3]) * r + b[4]) * r + 1.0);
}

double quantile_lower(double p) {
  double x = acklam_lower(p);
  // One Halley step takes the 1e-9 initial error to the accuracy of cdf().
  const double e = cdf(x) - p;
  const double u = e * kSqrt2Pi * std::exp(0.5 * x * x);
  if (std::isfinite(u)) x -= u / (1.0 + 0.5 * x * u);
  return x;
}

}  // namespace

double pdf(double z) {
  require_finite(z, "pdf");
  return std::exp(-0.5 * z * z) / kSqrt2Pi;
}

double cdf(double z) {
  require_finite(z, "cdf");
  const double x = std::abs(z) * kInvSqrt2;
  if (x < kSeriesLimit) {
    const double half_erf = 0.5 * erf_series(x);
    return z < 0.0 ? 0.5 - half_erf : 0.5 + half_erf;
  }
  const double tail = 0.5 * erfc_continued_fraction(x);
  return z < 0.0 ? tail : 1.0 - tail;
}

double cdf_upper(double z) {
  require_finite(z, "cdf_upper");
  return cdf(-z);
}

double quantile(double p) {
  if (!(p >= 0.0 && p <= 1.0)) {
    throw std::domain_error("quantile: p must lie in [0, 1]");
  }
  if (p == 0.0) return -std::numeric_limits<double>::infinity();
  if (p == 1.0) return std::numeric_limits<double>::infinity();
  if (p > 0.5) return -quantile_lower(1.0 - p);
  return quantile_lower(p);
}

}  // namespace judgment
