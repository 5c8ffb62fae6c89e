#include <doctest.h>

#include <cmath>
#include <limits>

#include "judgment/normal.hpp"
#include "judgment/random.hpp"
#include "oracles.hpp"

using namespace judgment;

TEST_CASE("cdf examples") {
  CHECK(cdf(0.0) == 0.5);
  CHECK(std::abs(cdf(1.959964) - 0.975) < 1e-9);
  CHECK(std::abs(cdf(1.959964) - static_cast<double>(oracle::cdf(1.959964L))) < 1e-13);

  const double tail = cdf(-8.0);
  CHECK(tail > 0.0);
  CHECK(tail < 1e-14);
  CHECK(tail < oracle::upper_tail_upper_bound(8.0));
  CHECK(tail > oracle::upper_tail_lower_bound(8.0));
}

TEST_CASE("cdf matches the long double series oracle to 1e-12") {
  for (double z = -4.0; z <= 4.0; z += 0.05) {
    INFO("z = " << z);
    CHECK(std::abs(cdf(z) - static_cast<double>(oracle::cdf(z))) < 1e-12);
  }
}

TEST_CASE("cdf lower tail is accurate relative to the Mills bounds") {
  for (double z = 4.0; z <= 30.0; z += 0.5) {
    INFO("z = " << z);
    const double p = cdf(-z);
    CHECK(p < oracle::upper_tail_upper_bound(z));
    CHECK(p > oracle::upper_tail_lower_bound(z));
    CHECK(cdf_upper(z) == p);
  }
}

TEST_CASE("cdf symmetry and monotonicity") {
  double previous = 0.0;
  for (double z = -10.0; z <= 10.0; z += 0.001) {
    const double p = cdf(z);
    CHECK(std::abs(cdf(-z) - (1.0 - p)) < 2e-16);
    CHECK(p >= previous);
    previous = p;
  }
}

TEST_CASE("cdf and pdf reject non-finite input") {
  CHECK_THROWS_AS(cdf(std::numeric_limits<double>::quiet_NaN()), std::domain_error);
  CHECK_THROWS_AS(cdf(std::numeric_limits<double>::infinity()), std::domain_error);
  CHECK_THROWS_AS(pdf(std::numeric_limits<double>::quiet_NaN()), std::domain_error);
  CHECK(pdf(0.0) == doctest::Approx(1.0 / std::sqrt(2.0 * M_PI)).epsilon(1e-15));
}

TEST_CASE("quantile examples") {
  CHECK(quantile(0.5) == 0.0);
  const double c = quantile(0.025);
  CHECK(std::abs(c - (-1.959964)) < 1e-6);
  CHECK(std::abs(c - oracle::quantile(0.025)) < 1e-10);
  CHECK(quantile(0.0) == -std::numeric_limits<double>::infinity());
  CHECK(quantile(1.0) == std::numeric_limits<double>::infinity());
}

TEST_CASE("quantile agrees with bisection on the oracle cdf") {
  for (double p : {1e-4, 0.001, 0.005, 0.01, 0.025, 0.05, 0.1, 0.25, 0.4, 0.6, 0.9, 0.975, 0.999}) {
    INFO("p = " << p);
    CHECK(std::abs(quantile(p) - oracle::quantile(p)) < 1e-10);
  }
}

TEST_CASE("quantile rejects out-of-range probabilities") {
  CHECK_THROWS_AS(quantile(-1e-300), std::domain_error);
  CHECK_THROWS_AS(quantile(1.0 + 1e-15), std::domain_error);
  CHECK_THROWS_AS(quantile(std::numeric_limits<double>::quiet_NaN()), std::domain_error);
}

TEST_CASE("round trip quantile(cdf(z)) on [-6, 6]") {
  double worst = 0.0;
  for (int i = 0; i <= 1200; ++i) {
    const double z = -6.0 + 0.01 * i;
    worst = std::max(worst, std::abs(quantile(cdf(z)) - z));
  }
  CHECK(worst < 1e-8);
}

TEST_CASE("round trip cdf(quantile(p))") {
  for (double lp = -12.0; lp <= -0.31; lp += 0.01) {
    const double p = std::pow(10.0, lp);
    INFO("p = " << p);
    CHECK(std::abs(cdf(quantile(p)) - p) < 1e-9);
    CHECK(std::abs(cdf(quantile(1.0 - p)) - (1.0 - p)) < 1e-9);
    // Relative accuracy in the lower tail.
    CHECK(std::abs(cdf(quantile(p)) - p) <= 1e-11 * p);
  }
}

TEST_CASE("quantile antisymmetry on a dyadic grid") {
  for (int k = 1; k < 1024; ++k) {
    const double p = k / 1024.0;
    CHECK(std::abs(quantile(p) + quantile(1.0 - p)) <= 1e-12);
  }
}

TEST_CASE("quantile is monotone") {
  double previous = -std::numeric_limits<double>::infinity();
  for (int k = 1; k < 100000; ++k) {
    const double q = quantile(k / 100000.0);
    CHECK(q > previous);
    previous = q;
  }
}

TEST_CASE("Probability validates its range") {
  CHECK(Probability(0.0).value() == 0.0);
  CHECK(Probability(1.0).value() == 1.0);
  CHECK_THROWS_AS(Probability(1.5), std::domain_error);
  CHECK_THROWS_AS(Probability(-0.1), std::domain_error);
  CHECK_THROWS_AS(Probability(std::nan("")), std::domain_error);
}

TEST_CASE("inverse-transform sampling") {
  CHECK(standard_normal_from_uniform(0.5) == 0.0);
  CHECK(std::abs(standard_normal_from_uniform(0.975) - 1.959964) < 1e-6);

  UniformSource a(123);
  UniformSource b(123);
  for (int i = 0; i < 1000; ++i) CHECK(sample_standard_normal(a) == sample_standard_normal(b));

  UniformSource source(7);
  constexpr int kDraws = 1'000'000;
  double sum = 0.0;
  double sum_sq = 0.0;
  for (int i = 0; i < kDraws; ++i) {
    const double z = sample_standard_normal(source);
    sum += z;
    sum_sq += z * z;
  }
  CHECK(std::abs(sum / kDraws) < 4.0 / std::sqrt(double(kDraws)));
  CHECK(std::abs(sum_sq / kDraws - 1.0) < 0.01);
}

TEST_CASE("uniform source stays strictly inside (0, 1)") {
  UniformSource source(0);
  for (int i = 0; i < 100000; ++i) {
    const double u = source.next();
    CHECK(u > 0.0);
    CHECK(u < 1.0);
  }
}

TEST_CASE("unit-variance student t draws") {
  UniformSource source(11);
  constexpr int kDraws = 400'000;
  double sum_sq = 0.0;
  for (int i = 0; i < kDraws; ++i) {
    const double t = sample_student_t_unit_variance(source, 5);
    sum_sq += t * t;
  }
  // Var(t^2) = 8 for unit-variance t(5), so 0.05 is about 11 standard errors.
  CHECK(std::abs(sum_sq / kDraws - 1.0) < 0.05);
  CHECK_THROWS_AS(sample_student_t_unit_variance(source, 2), std::invalid_argument);
}
