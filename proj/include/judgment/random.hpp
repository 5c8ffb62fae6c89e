// Seeded random streams for Monte Carlo and fixture generation.

#ifndef JUDGMENT_RANDOM_HPP
#define JUDGMENT_RANDOM_HPP

#include <cstdint>
#include <random>

namespace judgment {

/// 64-bit Mersenne Twister producing uniforms on the open interval (0, 1).
///
/// std::mt19937_64 output is fully specified by the standard, so a given seed
/// yields the same stream on every conforming implementation.
class UniformSource {
 public:
  explicit UniformSource(std::uint64_t seed) : engine_(seed) {}

  /// (k + 0.5) / 2^53 for the top 53 bits k; never returns 0 or 1.
  double next() {
    const std::uint64_t bits = engine_() >> 11;
    return (static_cast<double>(bits) + 0.5) * 0x1.0p-53;
  }

 private:
  std::mt19937_64 engine_;
};

/// Inverse-transform draw: quantile(uniform).
double standard_normal_from_uniform(double u);
double sample_standard_normal(UniformSource& source);

/// Student t with `dof` degrees of freedom rescaled to unit variance (dof > 2).
/// Built from dof + 1 normal draws so the stream stays inverse-transform based.
double sample_student_t_unit_variance(UniformSource& source, int dof);

}  // namespace judgment

#endif  // JUDGMENT_RANDOM_HPP
