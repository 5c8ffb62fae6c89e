// Decision with judgment for a general strictly convex scalar loss.
//
// The gradient at the estimate is linearised around the true parameter,
//   grad(theta_hat, a) ~ grad(theta, a) + cross(theta_hat, a) * (theta_hat - theta),
// so grad(theta_hat, a) / (|cross(theta_hat, a)| * se) is treated as a standard
// normal statistic under the null that a is optimal. The rule then behaves as
// in the quadratic case, with the boundary action found by bisection.

#ifndef JUDGMENT_GENERAL_LOSS_HPP
#define JUDGMENT_GENERAL_LOSS_HPP

#include <functional>
#include <stdexcept>

#include "judgment/decision.hpp"

namespace judgment {

struct LossModel {
  /// d/da L(theta, a); strictly increasing in a.
  std::function<double(double theta, double a)> grad;
  /// d^2/(da dtheta) L(theta, a); bounded away from zero.
  std::function<double(double theta, double a)> cross;
  /// Standard error of theta_hat.
  double se = 1.0;
};

/// L = -a*theta + a^2/2.
LossModel quadratic_loss(double se = 1.0);
/// L = -a*theta + a^4/4.
LossModel quartic_loss(double se = 1.0);

struct Bracket {
  double lo;
  double hi;
  double tolerance;
};

struct SearchOptions {
  double initial_step = 1.0;
  int max_doublings = 80;
  int max_iterations = 200;
  double tolerance = 1e-10;
};

/// The root could not be bracketed within the doubling budget.
class BracketError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// The standardised gradient decreased along a, contradicting strict convexity.
class ConvexityError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Standardised gradient statistic grad / (|cross| * se) at action a.
double gradient_statistic(double theta_hat, double action, const LossModel& model);

/// Finds a with f(a) = level for increasing f, expanding from `start` by
/// doubling steps and then bisecting. Throws BracketError or ConvexityError.
double solve_increasing(const std::function<double(double)>& f, double start, double level,
                        const SearchOptions& options = {});

/// For this outcome, ci_lower/ci_upper are the actions whose statistic equals
/// c_{alpha/2} and c_{1-alpha/2}, and gradient_at_judgment holds the
/// standardised statistic at the judgmental action.
DecisionOutcome decide_general(double theta_hat, const Judgment& judgment, const LossModel& model,
                               const SearchOptions& options = {});

/// Root of grad(theta_hat, a) = 0.
double ml_action(double theta_hat, const LossModel& model, const SearchOptions& options = {});

}  // namespace judgment

#endif  // JUDGMENT_GENERAL_LOSS_HPP
