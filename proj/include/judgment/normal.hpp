// Standard normal kernels: density, distribution function and quantile.
//
// Everything here is self-contained (no libm special functions beyond exp/log/sqrt)
// so that streams produced by inverse-transform sampling are reproducible in any
// implementation that follows the same evaluation order.

#ifndef JUDGMENT_NORMAL_HPP
#define JUDGMENT_NORMAL_HPP

#include <stdexcept>

namespace judgment {

/// A real number in [0, 1]. Construction validates the range.
class Probability {
 public:
  constexpr Probability() = default;
  explicit Probability(double value);

  constexpr double value() const { return value_; }
  constexpr operator double() const { return value_; }  // NOLINT(google-explicit-constructor)

 private:
  double value_ = 0.0;
};

inline constexpr double kSqrt2Pi = 2.50662827463100050242;
inline constexpr double kInvSqrt2 = 0.70710678118654752440;
inline constexpr double kInvSqrtPi = 0.56418958354775628695;

double pdf(double z);

/// Phi(z). Absolute error below 1e-15; relative error in the lower tail below
/// 1e-11. Throws std::domain_error for NaN or infinite input.
double cdf(double z);

/// Upper tail 1 - Phi(z), computed without cancellation.
double cdf_upper(double z);

/// Phi^{-1}(p). Returns -infinity at 0 and +infinity at 1; throws
/// std::domain_error for p outside [0, 1] or NaN.
///
/// Rational initial guess (Acklam) refined by one Halley step against cdf().
/// The upper half is evaluated by reflection, so quantile(p) == -quantile(1 - p)
/// whenever 1 - p is exactly representable.
double quantile(double p);

}  // namespace judgment

#endif  // JUDGMENT_NORMAL_HPP
