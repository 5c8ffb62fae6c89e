// Seeded Monte Carlo estimation of risk, rejection rates and the probability of
// doing worse than the judgmental action.
//
// Draws are split into fixed-size chunks; chunk i uses a generator seeded with
// base_seed + i and results are merged in chunk order, so a report depends only
// on (rule, theta, n_draws, seed, chunk_size) and never on the thread count.

#ifndef JUDGMENT_RISK_LAB_HPP
#define JUDGMENT_RISK_LAB_HPP

#include <cstdint>
#include <string>
#include <variant>
#include <vector>

#include "judgment/decision.hpp"

namespace judgment {

struct JudgmentRule {
  Judgment judgment;
};
struct MlRule {};
struct BayesRule {
  double prior_mean = 0.0;
  double prior_var = 1.0;
};
struct FixedRule {
  double action = 0.0;
};

using RuleSpec = std::variant<JudgmentRule, MlRule, BayesRule, FixedRule>;

/// Short label used in reports and CSV headers, e.g. "judgment_0.05", "ml".
std::string rule_label(const RuleSpec& rule);

/// Throws std::domain_error when the rule's parameters are invalid.
void validate_rule(const RuleSpec& rule);

struct RuleAction {
  double action;
  /// For the judgment rule: the test rejected. For the other rules: the action
  /// differs from the reference judgmental action.
  bool rejected;
};

RuleAction apply_rule(const RuleSpec& rule, double x, double reference_action);

enum class Noise { kGaussian, kStudentT5 };

struct McOptions {
  std::int64_t n_draws = 1'000'000;
  std::uint64_t seed = 42;
  /// 0 selects std::thread::hardware_concurrency().
  unsigned threads = 0;
  std::int64_t chunk_size = 1 << 16;
  Noise noise = Noise::kGaussian;
};

struct RiskReport {
  double theta = 0.0;
  std::int64_t n_draws = 0;
  std::uint64_t seed = 0;
  double mean_loss = 0.0;
  double se_loss = 0.0;
  double prob_worse = 0.0;
  double se_prob = 0.0;
  double reject_rate = 0.0;
  double se_reject = 0.0;
};

/// X = theta + noise; loss, strict "worse than a~" indicator and rejection
/// indicator are averaged over n_draws.
RiskReport mc_risk(const RuleSpec& rule, double theta, const Judgment& reference,
                   const McOptions& options = {});

struct SweepResult {
  std::vector<RiskReport> reports;
  /// Grid points where prob_worse > alpha + 3 * se_prob.
  std::vector<double> violations;
};

SweepResult bound_sweep(const Judgment& judgment, const std::vector<double>& theta_grid,
                           const McOptions& options = {});

struct PowerPoint {
  double theta;
  double reject_rate;
  double se;
  /// reject_rate < alpha - 3 * se; only meaningful under Gaussian noise.
  bool below_floor;
};

std::vector<PowerPoint> power_sweep(const Judgment& judgment, const std::vector<double>& theta_grid,
                                    const McOptions& options = {});

enum class Verdict { kNeither, kFirstBetter, kSecondBetter };

struct DominanceRow {
  double theta;
  RiskReport first;
  RiskReport second;
  double combined_se;
  Verdict verdict;
};

struct DominanceReport {
  std::string first_label;
  std::string second_label;
  std::vector<DominanceRow> rows;
  int first_better = 0;
  int second_better = 0;

  /// One rule beats the other somewhere and never loses.
  bool first_dominates() const { return first_better > 0 && second_better == 0; }
  bool second_dominates() const { return second_better > 0 && first_better == 0; }
};

/// Both rules share the seed at every theta (common random numbers).
DominanceReport dominance_check(const RuleSpec& first, const RuleSpec& second,
                                const Judgment& reference, const std::vector<double>& theta_grid,
                                const McOptions& options = {});

/// Inclusive grid start, start + step, ... up to stop (with 1e-9 slack).
/// Throws std::invalid_argument for step <= 0 or an empty grid.
std::vector<double> make_grid(double start, double stop, double step);

/// Parses "start:stop:step".
std::vector<double> parse_grid(const std::string& spec);

}  // namespace judgment

#endif  // JUDGMENT_RISK_LAB_HPP
