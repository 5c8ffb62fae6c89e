// Independent reference computations used only by the tests.

#ifndef JUDGMENT_TESTS_ORACLES_HPP
#define JUDGMENT_TESTS_ORACLES_HPP

#include <cmath>
#include <cstddef>
#include <vector>

namespace oracle {

/// Phi(z) from the alternating Maclaurin series of erf in long double.
/// Accurate to ~1e-15 for |z| <= 4.
inline long double cdf(long double z) {
  const long double x = z / std::sqrt(2.0L);
  long double term = x;  // (-1)^n x^(2n+1) / n!
  long double sum = x;
  for (int n = 1; n < 400; ++n) {
    term *= -x * x / n;
    const long double add = term / (2 * n + 1);
    sum += add;
    if (std::fabs(add) < 1e-22L) break;
  }
  const long double erf = 2.0L / std::sqrt(3.14159265358979323846264338327950288L) * sum;
  return 0.5L * (1.0L + erf);
}

/// Bisection on oracle::cdf.
inline double quantile(double p) {
  long double lo = -8.0L;
  long double hi = 8.0L;
  for (int i = 0; i < 200; ++i) {
    const long double mid = 0.5L * (lo + hi);
    if (cdf(mid) < p) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return static_cast<double>(0.5L * (lo + hi));
}

/// Mills-ratio bounds phi(z)/z * (1 - 1/z^2) < 1 - Phi(z) < phi(z)/z for z > 0.
inline double upper_tail_upper_bound(double z) {
  return std::exp(-0.5 * z * z) / std::sqrt(2.0 * M_PI) / z;
}
inline double upper_tail_lower_bound(double z) {
  return upper_tail_upper_bound(z) * (1.0 - 1.0 / (z * z));
}

/// Decision rule as the projection of the judgmental action onto the interval.
inline double clamp_rule(double x, double a_tilde, double c_lower, double c_upper) {
  const double lo = x + c_lower;
  const double hi = x + c_upper;
  return a_tilde < lo ? lo : (a_tilde > hi ? hi : a_tilde);
}

/// Smallest grid point a (step h) in [lo, hi] with f(a) >= level, for increasing f.
template <class F>
double grid_scan(F f, double lo, double hi, double h, double level) {
  const auto steps = static_cast<long>((hi - lo) / h);
  for (long i = 0; i <= steps; ++i) {
    const double a = lo + static_cast<double>(i) * h;
    if (f(a) >= level) return a;
  }
  return hi;
}

/// Recomputes portfolio values from scratch: for each period, the window mean
/// of returns [0, n), the observation, the action from `rule`, and wealth.
template <class Rule>
std::vector<double> portfolio_values(const std::vector<double>& log_returns,
                                     std::size_t pre_sample, double sigma, double cash,
                                     bool mean_variance, Rule rule) {
  std::vector<double> values{cash};
  for (std::size_t n = pre_sample; n < log_returns.size(); ++n) {
    long double sum = 0.0L;
    for (std::size_t t = 0; t < n; ++t) sum += log_returns[t];
    const double mean = static_cast<double>(sum / n);
    const double xbar = std::sqrt(double(n)) * mean / sigma;
    const double action = rule(xbar);
    const double weight = mean_variance ? action / (std::sqrt(double(n)) * sigma) : action;
    values.push_back(values.back() * (1.0 + weight * (std::exp(log_returns[n]) - 1.0)));
  }
  return values;
}

}  // namespace oracle

#endif  // JUDGMENT_TESTS_ORACLES_HPP
