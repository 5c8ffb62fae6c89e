// Decision with judgment under the Gaussian location model.
//
// Environment: one observation x of X ~ N(theta, 1), action a in R, loss
// L(theta, a) = -a*theta + a^2/2. A judgment pairs a judgmental action with a
// confidence level alpha. The rule tests whether the population gradient at the
// judgmental action has the sign opposite to the sample gradient and, on
// rejection, moves to the nearest edge of the (1 - alpha) confidence interval.

#ifndef JUDGMENT_DECISION_HPP
#define JUDGMENT_DECISION_HPP

#include "judgment/normal.hpp"

namespace judgment {

/// Critical values (c_{alpha/2}, c_{1-alpha/2}). The upper one is taken as
/// -c_{alpha/2}, so the pair is exactly symmetric. Infinite at alpha = 0, zero
/// at alpha = 1.
struct CriticalValues {
  double lower;
  double upper;
};
CriticalValues critical_values(Probability alpha);

class Judgment {
 public:
  /// Throws std::domain_error if `action` is not finite or alpha is outside [0, 1].
  Judgment(double action, double alpha);

  double action() const { return action_; }
  Probability alpha() const { return alpha_; }
  /// Cached critical_values(alpha()).
  const CriticalValues& critical() const { return critical_; }

 private:
  double action_;
  Probability alpha_;
  CriticalValues critical_;
};

/// Which side of the sample space x fell in: C_minus when -x + a~ <= 0.
enum class Branch { kMinus, kPlus };

const char* to_string(Branch branch);

struct TestFunctionResult {
  Branch branch = Branch::kMinus;
  /// psi in {0, gamma, 1}.
  double reject = 0.0;
  double gamma = 0.0;
  /// True when the statistic sits exactly on the critical value.
  bool on_boundary = false;
};

struct DecisionOutcome {
  double action = 0.0;
  bool rejected = false;
  Branch branch = Branch::kMinus;
  double ci_lower = 0.0;
  double ci_upper = 0.0;
  /// Sample gradient -x + a~.
  double gradient_at_judgment = 0.0;
  /// action - a~.
  double displacement = 0.0;
};

double loss(double theta, double action);

/// d/da L(theta, a) = -theta + a.
double gradient(double theta_hat, double action);

/// Conditional one-sided test of the judgmental action. `gamma` is the
/// randomisation weight reported on the boundary.
TestFunctionResult test_judgment(double x, const Judgment& judgment, double gamma = 0.0);

/// The decision rule. With gamma = 0 the judgmental action is kept when the
/// statistic lies exactly on the critical value; in that case x + c equals a~
/// anyway, so the action does not depend on gamma beyond rounding.
DecisionOutcome decide(double x, const Judgment& judgment, double gamma = 0.0);

/// Maximum likelihood decision (the alpha = 1 limit).
double decide_ml(double x);

/// Posterior mean under a N(prior_mean, prior_var) prior on theta and a
/// unit-variance Gaussian likelihood; minimises posterior expected loss.
double decide_bayes(double x, double prior_mean, double prior_var);

}  // namespace judgment

#endif  // JUDGMENT_DECISION_HPP
