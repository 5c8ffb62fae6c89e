#include "judgment/decision.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace judgment {

Judgment::Judgment(double action, double alpha)
    : action_(action), alpha_(alpha), critical_(critical_values(alpha_)) {
  if (!std::isfinite(action)) throw std::domain_error("judgmental action must be finite");
}

const char* to_string(Branch branch) { return branch == Branch::kMinus ? "C_minus" : "C_plus"; }

CriticalValues critical_values(Probability alpha) {
  constexpr double kInf = std::numeric_limits<double>::infinity();
  if (alpha.value() == 0.0) return {-kInf, kInf};
  if (alpha.value() == 1.0) return {0.0, 0.0};
  const double lower = quantile(0.5 * alpha.value());
  return {lower, -lower};
}

double loss(double theta, double action) { return -action * theta + 0.5 * action * action; }

double gradient(double theta_hat, double action) { return -theta_hat + action; }

TestFunctionResult test_judgment(double x, const Judgment& judgment, double gamma) {
  if (!std::isfinite(x)) throw std::domain_error("observation must be finite");
  if (!(gamma >= 0.0 && gamma <= 1.0)) throw std::domain_error("gamma must lie in [0, 1]");

  TestFunctionResult result;
  result.gamma = gamma;
  const double g = gradient(x, judgment.action());
  result.branch = g <= 0.0 ? Branch::kMinus : Branch::kPlus;

  // Nothing can be rejected with an infinitely wide interval.
  if (judgment.alpha().value() == 0.0) return result;

  const auto [c_lower, c_upper] = judgment.critical();
  if (result.branch == Branch::kMinus) {
    if (g < c_lower) {
      result.reject = 1.0;
    } else if (g == c_lower) {
      result.reject = gamma;
      result.on_boundary = true;
    }
  } else {
    if (g > c_upper) {
      result.reject = 1.0;
    } else if (g == c_upper) {
      result.reject = gamma;
      result.on_boundary = true;
    }
  }
  return result;
}

DecisionOutcome decide(double x, const Judgment& judgment, double gamma) {
  const TestFunctionResult test = test_judgment(x, judgment, gamma);
  const double a_tilde = judgment.action();
  const auto [c_lower, c_upper] = judgment.critical();

  DecisionOutcome out;
  out.branch = test.branch;
  out.gradient_at_judgment = gradient(x, a_tilde);
  out.ci_lower = x + c_lower;
  out.ci_upper = x + c_upper;
  out.rejected = test.reject == 1.0;

  const double alpha = judgment.alpha().value();
  if (alpha == 0.0) {
    out.action = a_tilde;
  } else if (alpha == 1.0) {
    out.action = x;
  } else {
    const double boundary = test.branch == Branch::kMinus ? out.ci_lower : out.ci_upper;
    if (test.reject == 1.0) {
      out.action = boundary;
    } else if (test.reject == 0.0) {
      out.action = a_tilde;
    } else {
      out.action = a_tilde * (1.0 - test.reject) + boundary * test.reject;
    }
  }
  out.displacement = out.action - a_tilde;
  return out;
}

double decide_ml(double x) {
  if (!std::isfinite(x)) throw std::domain_error("observation must be finite");
  return x;
}

double decide_bayes(double x, double prior_mean, double prior_var) {
  if (!(prior_var > 0.0) || !std::isfinite(prior_var)) {
    throw std::domain_error("prior variance must be positive and finite");
  }
  if (!std::isfinite(x) || !std::isfinite(prior_mean)) {
    throw std::domain_error("observation and prior mean must be finite");
  }
  return (prior_var * x + prior_mean) / (prior_var + 1.0);
}

}  // namespace judgment
