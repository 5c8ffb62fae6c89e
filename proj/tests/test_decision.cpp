#include <doctest.h>

#include <cmath>
#include <random>

#include "judgment/decision.hpp"
#include "oracles.hpp"

using namespace judgment;

namespace {

// Frozen from oracle::quantile(0.025) (bisection on the long double series).
constexpr double kC025 = -1.959963984540054;

}  // namespace

TEST_CASE("loss and gradient formulas") {
  CHECK(loss(3.7, 0.0) == 0.0);
  CHECK(loss(1.0, 1.0) == -0.5);
  CHECK(loss(2.0, 3.0) == -1.5);
  CHECK(gradient(3.0, 0.0) == -3.0);
  CHECK(gradient(0.0, 0.0) == 0.0);
  CHECK(gradient(-1.0, 2.0) == 3.0);
}

TEST_CASE("gradient matches central finite differences of the loss") {
  std::mt19937_64 gen(5);
  std::uniform_real_distribution<double> u(-10.0, 10.0);
  constexpr double h = 1e-5;
  for (int i = 0; i < 1000; ++i) {
    const double theta = u(gen);
    const double a = u(gen);
    const double fd = (loss(theta, a + h) - loss(theta, a - h)) / (2.0 * h);
    CHECK(std::abs(fd - gradient(theta, a)) < 1e-6);
  }
}

TEST_CASE("oracle critical value is frozen correctly") {
  CHECK(std::abs(oracle::quantile(0.025) - kC025) < 1e-12);
}

TEST_CASE("test_judgment examples") {
  const Judgment j(0.0, 0.05);
  const TestFunctionResult far = test_judgment(3.0, j);
  CHECK(far.branch == Branch::kMinus);
  CHECK(far.reject == 1.0);

  const TestFunctionResult near = test_judgment(1.0, j);
  CHECK(near.branch == Branch::kMinus);
  CHECK(near.reject == 0.0);

  const TestFunctionResult plus = test_judgment(-3.0, j);
  CHECK(plus.branch == Branch::kPlus);
  CHECK(plus.reject == 1.0);

  for (double x : {-100.0, -2.0, 0.0, 5.0, 1e6}) {
    CHECK(test_judgment(x, Judgment(1.5, 0.0)).reject == 0.0);
  }
}

TEST_CASE("weak inequality puts -x + a~ = 0 into C_minus") {
  CHECK(test_judgment(2.0, Judgment(2.0, 0.3)).branch == Branch::kMinus);
  CHECK(test_judgment(2.0, Judgment(2.0 + 1e-12, 0.3)).branch == Branch::kPlus);
}

TEST_CASE("gamma is reported exactly on the boundary") {
  const Judgment probe(0.0, 0.05);
  const double c = probe.critical().lower;
  // x = 0 and a~ = c give -x + a~ == c exactly.
  const Judgment j(c, 0.05);
  const TestFunctionResult t = test_judgment(0.0, j, 0.25);
  CHECK(t.on_boundary);
  CHECK(t.reject == 0.25);
  CHECK(t.branch == Branch::kMinus);

  const Judgment upper(-c, 0.05);
  const TestFunctionResult tu = test_judgment(0.0, upper, 0.75);
  CHECK(tu.on_boundary);
  CHECK(tu.branch == Branch::kPlus);
  CHECK(tu.reject == 0.75);

  CHECK_THROWS_AS(test_judgment(0.0, j, 1.5), std::domain_error);
  CHECK_THROWS_AS(test_judgment(std::nan(""), j), std::domain_error);
}

TEST_CASE("boundary tie: the action does not depend on gamma") {
  const double c = Judgment(0.0, 0.05).critical().lower;
  const Judgment j(c, 0.05);
  const DecisionOutcome keep = decide(0.0, j, 0.0);
  const DecisionOutcome move = decide(0.0, j, 1.0);
  const DecisionOutcome mix = decide(0.0, j, 0.5);
  CHECK(keep.action == move.action);
  CHECK(keep.action == mix.action);
  CHECK(keep.action == c);
  CHECK_FALSE(keep.rejected);
}

TEST_CASE("decide examples") {
  const DecisionOutcome up = decide(3.0, Judgment(0.0, 0.05));
  CHECK(std::abs(up.action - (3.0 + kC025)) < 1e-12);
  CHECK(std::abs(up.action - 1.040036) < 1e-6);
  CHECK(up.rejected);
  CHECK(up.branch == Branch::kMinus);
  CHECK(up.gradient_at_judgment == -3.0);
  CHECK(up.displacement == up.action);

  const DecisionOutcome down = decide(-3.0, Judgment(0.0, 0.05));
  CHECK(std::abs(down.action - (-1.040036)) < 1e-6);
  CHECK(down.action == -up.action);
  CHECK(down.branch == Branch::kPlus);

  CHECK(decide(7.3, Judgment(2.1, 1.0)).action == 7.3);
  CHECK(decide(7.3, Judgment(2.1, 0.0)).action == 2.1);

  const DecisionOutcome keep = decide(1.0, Judgment(0.0, 0.05));
  CHECK(keep.action == 0.0);
  CHECK_FALSE(keep.rejected);
}

TEST_CASE("alpha limits are exact and leak no infinities") {
  std::mt19937_64 gen(17);
  std::uniform_real_distribution<double> u(-50.0, 50.0);
  for (int i = 0; i < 1000; ++i) {
    const double x = u(gen);
    const double a = u(gen);
    const DecisionOutcome zero = decide(x, Judgment(a, 0.0));
    CHECK(zero.action == a);
    CHECK_FALSE(zero.rejected);
    CHECK(std::isinf(zero.ci_lower));
    CHECK(std::isinf(zero.ci_upper));
    CHECK(zero.displacement == 0.0);

    const DecisionOutcome one = decide(x, Judgment(a, 1.0));
    CHECK(one.action == x);
    CHECK(one.ci_lower == x);
    CHECK(one.ci_upper == x);
    CHECK(std::isfinite(one.displacement));
  }
}

TEST_CASE("decision rule properties on random triples") {
  std::mt19937_64 gen(2024);
  std::uniform_real_distribution<double> u(-6.0, 6.0);
  std::uniform_real_distribution<double> ua(1e-6, 1.0 - 1e-6);
  for (int i = 0; i < 20000; ++i) {
    const double x = u(gen);
    const double a = u(gen);
    const double alpha = ua(gen);
    const Judgment j(a, alpha);
    const DecisionOutcome o = decide(x, j);
    const double c_lo = oracle::quantile(alpha / 2.0);

    // Clip equivalence against an independently computed critical value.
    CHECK(std::abs(o.action - oracle::clamp_rule(x, a, c_lo, -c_lo)) < 1e-9);
    // Same formula with the implementation's critical values, to 1e-12.
    CHECK(std::abs(o.action - oracle::clamp_rule(x, a, j.critical().lower, j.critical().upper)) <
          1e-12);

    CHECK(o.ci_lower <= x);
    CHECK(x <= o.ci_upper);
    CHECK(std::abs(o.action - x) <= std::abs(a - x));
    CHECK(o.action >= std::min(a, x));
    CHECK(o.action <= std::max(a, x));
    CHECK(o.rejected == (a < o.ci_lower || a > o.ci_upper));
    CHECK(o.rejected == (o.gradient_at_judgment < j.critical().lower ||
                         o.gradient_at_judgment > j.critical().upper));
    CHECK((o.action == a || o.action == o.ci_lower || o.action == o.ci_upper));

    const double t = u(gen) * 10.0;
    const DecisionOutcome shifted = decide(x + t, Judgment(a + t, alpha));
    CHECK(std::abs(shifted.action - (o.action + t)) < 1e-12 * (1.0 + std::abs(t)) * 10.0);
  }
}

TEST_CASE("the action is nondecreasing in x and in the judgmental action") {
  for (double alpha : {0.01, 0.05, 0.2, 0.9}) {
    double previous = -1e300;
    for (double x = -8.0; x <= 8.0; x += 0.001) {
      const double a = decide(x, Judgment(0.7, alpha)).action;
      CHECK(a >= previous);
      previous = a;
    }
    previous = -1e300;
    for (double a_tilde = -8.0; a_tilde <= 8.0; a_tilde += 0.001) {
      const double a = decide(-0.4, Judgment(a_tilde, alpha)).action;
      CHECK(a >= previous);
      previous = a;
    }
  }
}

TEST_CASE("maximum likelihood decision") {
  CHECK(decide_ml(0.0) == 0.0);
  CHECK(decide_ml(2.5) == 2.5);
  std::mt19937_64 gen(3);
  std::normal_distribution<double> n(0.0, 5.0);
  for (int i = 0; i < 1000; ++i) {
    const double x = n(gen);
    CHECK(decide_ml(x) == decide(x, Judgment(-5.0, 1.0)).action);
  }
  CHECK_THROWS_AS(decide_ml(INFINITY), std::domain_error);
}

TEST_CASE("Bayes decision is the conjugate posterior mean") {
  // Posterior precision 1 + 1/v, mean (x + m/v) / (1 + 1/v).
  const auto conjugate = [](double x, double m, double v) { return (x + m / v) / (1.0 + 1.0 / v); };
  CHECK(decide_bayes(2.0, 0.0, 1.0) == 1.0);
  CHECK(decide_bayes(0.0, 0.0, 1.0) == 0.0);
  CHECK(std::abs(decide_bayes(3.0, 0.0, 1e12) - 3.0) < 1e-11);
  CHECK(std::abs(decide_bayes(1.3, -0.5, 2.5) - conjugate(1.3, -0.5, 2.5)) < 1e-14);
  CHECK_THROWS_AS(decide_bayes(1.0, 0.0, 0.0), std::domain_error);
  CHECK_THROWS_AS(decide_bayes(1.0, 0.0, -1.0), std::domain_error);
}

TEST_CASE("Judgment validates its inputs") {
  CHECK_THROWS_AS(Judgment(0.0, 1.01), std::domain_error);
  CHECK_THROWS_AS(Judgment(0.0, -0.01), std::domain_error);
  CHECK_THROWS_AS(Judgment(0.0, std::nan("")), std::domain_error);
  CHECK_THROWS_AS(Judgment(INFINITY, 0.05), std::domain_error);
  CHECK(Judgment(0.0, 0.05).critical().upper == -Judgment(0.0, 0.05).critical().lower);
}
