#include "judgment/random.hpp"

#include <cmath>
#include <stdexcept>

#include "judgment/normal.hpp"

namespace judgment {

double standard_normal_from_uniform(double u) { return quantile(u); }

double sample_standard_normal(UniformSource& source) {
  return standard_normal_from_uniform(source.next());
}

double sample_student_t_unit_variance(UniformSource& source, int dof) {
  if (dof <= 2) throw std::invalid_argument("student t needs dof > 2 for finite variance");
  const double z = sample_standard_normal(source);
  double chi2 = 0.0;
  for (int i = 0; i < dof; ++i) {
    const double g = sample_standard_normal(source);
    chi2 += g * g;
  }
  const double t = z / std::sqrt(chi2 / dof);
  return t * std::sqrt((dof - 2.0) / dof);
}

}  // namespace judgment
