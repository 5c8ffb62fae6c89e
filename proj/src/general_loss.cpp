#include "judgment/general_loss.hpp"

#include <cmath>
#include <limits>
#include <sstream>

namespace judgment {

LossModel quadratic_loss(double se) {
  return LossModel{[](double theta, double a) { return -theta + a; },
                   [](double, double) { return -1.0; }, se};
}

LossModel quartic_loss(double se) {
  return LossModel{[](double theta, double a) { return -theta + a * a * a; },
                   [](double, double) { return -1.0; }, se};
}

double gradient_statistic(double theta_hat, double action, const LossModel& model) {
  const double scale = std::abs(model.cross(theta_hat, action)) * model.se;
  if (!(scale > 0.0) || !std::isfinite(scale)) {
    throw ConvexityError("cross derivative vanishes or is not finite at a = " +
                         std::to_string(action));
  }
  return model.grad(theta_hat, action) / scale;
}

namespace {

std::string at(double a) {
  std::ostringstream os;
  os.precision(17);
  os << a;
  return os.str();
}

Bracket expand(const std::function<double(double)>& f, double start, double level,
               const SearchOptions& options) {
  const double f_start = f(start) - level;
  if (!std::isfinite(f_start)) throw BracketError("objective not finite at a = " + at(start));
  const double direction = f_start < 0.0 ? 1.0 : -1.0;

  double inside = start;
  double f_inside = f_start;
  double step = options.initial_step;
  for (int k = 0; k < options.max_doublings; ++k) {
    const double candidate = start + direction * step;
    const double f_candidate = f(candidate) - level;
    if (!std::isfinite(f_candidate)) {
      throw BracketError("objective not finite at a = " + at(candidate));
    }
    if (direction * (f_candidate - f_inside) < 0.0) {
      throw ConvexityError("gradient not monotone between a = " + at(inside) + " and a = " +
                           at(candidate));
    }
    if (direction * f_candidate >= 0.0) {
      return direction > 0.0 ? Bracket{inside, candidate, options.tolerance}
                             : Bracket{candidate, inside, options.tolerance};
    }
    inside = candidate;
    f_inside = f_candidate;
    step *= 2.0;
  }
  throw BracketError("no sign change after " + std::to_string(options.max_doublings) +
                     " doublings from a = " + at(start));
}

}  // namespace

double solve_increasing(const std::function<double(double)>& f, double start, double level,
                        const SearchOptions& options) {
  if (f(start) == level) return start;
  Bracket bracket = expand(f, start, level, options);
  double f_lo = f(bracket.lo) - level;
  double f_hi = f(bracket.hi) - level;

  // Bisect to full precision; the tolerance only bounds the iteration budget check.
  for (int i = 0; i < options.max_iterations; ++i) {
    const double mid = 0.5 * (bracket.lo + bracket.hi);
    if (mid <= bracket.lo || mid >= bracket.hi) break;
    const double f_mid = f(mid) - level;
    if (f_mid < f_lo || f_mid > f_hi) {
      throw ConvexityError("gradient not monotone inside [" + at(bracket.lo) + ", " +
                           at(bracket.hi) + "]");
    }
    if (f_mid == 0.0) return mid;
    if (f_mid < 0.0) {
      bracket.lo = mid;
      f_lo = f_mid;
    } else {
      bracket.hi = mid;
      f_hi = f_mid;
    }
  }
  if (bracket.hi - bracket.lo > bracket.tolerance * std::max(1.0, std::abs(bracket.lo))) {
    throw BracketError("bisection did not converge within the iteration cap");
  }
  return std::abs(f_lo) <= std::abs(f_hi) ? bracket.lo : bracket.hi;
}

DecisionOutcome decide_general(double theta_hat, const Judgment& judgment, const LossModel& model,
                               const SearchOptions& options) {
  if (!std::isfinite(theta_hat)) throw std::domain_error("theta_hat must be finite");
  if (!(model.se > 0.0)) throw std::domain_error("standard error must be positive");

  const double a_tilde = judgment.action();
  const auto statistic = [&](double a) { return gradient_statistic(theta_hat, a, model); };
  const double stat_at_judgment = statistic(a_tilde);
  const double alpha = judgment.alpha().value();

  DecisionOutcome out;
  out.gradient_at_judgment = stat_at_judgment;
  out.branch = model.grad(theta_hat, a_tilde) <= 0.0 ? Branch::kMinus : Branch::kPlus;

  if (alpha == 0.0) {
    out.ci_lower = -std::numeric_limits<double>::infinity();
    out.ci_upper = std::numeric_limits<double>::infinity();
    out.action = a_tilde;
    return out;
  }
  const auto [c_lower, c_upper] = judgment.critical();
  out.ci_lower = solve_increasing(statistic, a_tilde, c_lower, options);
  out.ci_upper = alpha == 1.0 ? out.ci_lower : solve_increasing(statistic, a_tilde, c_upper, options);

  if (out.branch == Branch::kMinus && stat_at_judgment < c_lower) {
    out.rejected = true;
    out.action = out.ci_lower;
  } else if (out.branch == Branch::kPlus && stat_at_judgment > c_upper) {
    out.rejected = true;
    out.action = out.ci_upper;
  } else {
    out.action = a_tilde;
  }
  out.displacement = out.action - a_tilde;
  return out;
}

double ml_action(double theta_hat, const LossModel& model, const SearchOptions& options) {
  if (!std::isfinite(theta_hat)) throw std::domain_error("theta_hat must be finite");
  return solve_increasing([&](double a) { return model.grad(theta_hat, a); }, 0.0, 0.0, options);
}

}  // namespace judgment
