#include "judgment/risk_lab.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "judgment/random.hpp"

namespace judgment {

namespace {

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

std::string compact(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%g", v);
  return buf;
}

// Welford accumulator plus event counters for one chunk.
struct ChunkStats {
  std::int64_t n = 0;
  double mean = 0.0;
  double m2 = 0.0;
  std::int64_t worse = 0;
  std::int64_t rejected = 0;

  void add(double loss_value, bool is_worse, bool is_rejected) {
    ++n;
    const double delta = loss_value - mean;
    mean += delta / static_cast<double>(n);
    m2 += delta * (loss_value - mean);
    worse += is_worse ? 1 : 0;
    rejected += is_rejected ? 1 : 0;
  }

  // Chan et al. pairwise merge.
  void merge(const ChunkStats& other) {
    if (other.n == 0) return;
    if (n == 0) {
      *this = other;
      return;
    }
    const std::int64_t total = n + other.n;
    const double delta = other.mean - mean;
    const double nb_over_total = static_cast<double>(other.n) / static_cast<double>(total);
    mean += delta * nb_over_total;
    m2 += other.m2 + delta * delta * static_cast<double>(n) * nb_over_total;
    n = total;
    worse += other.worse;
    rejected += other.rejected;
  }
};

double draw_noise(UniformSource& source, Noise noise) {
  return noise == Noise::kGaussian ? sample_standard_normal(source)
                                   : sample_student_t_unit_variance(source, 5);
}

ChunkStats run_chunk(const RuleSpec& rule, double theta, double reference_action,
                     double reference_loss, std::uint64_t seed, std::int64_t draws, Noise noise) {
  UniformSource source(seed);
  ChunkStats stats;
  for (std::int64_t i = 0; i < draws; ++i) {
    const double x = theta + draw_noise(source, noise);
    const RuleAction act = apply_rule(rule, x, reference_action);
    const double l = loss(theta, act.action);
    stats.add(l, l > reference_loss, act.rejected);
  }
  return stats;
}

double binomial_se(double p, std::int64_t n) {
  return std::sqrt(p * (1.0 - p) / static_cast<double>(n));
}

}  // namespace

std::string rule_label(const RuleSpec& rule) {
  return std::visit(
      Overloaded{
          [](const JudgmentRule& r) { return "judgment_" + compact(r.judgment.alpha().value()); },
          [](const MlRule&) { return std::string("ml"); },
          [](const BayesRule& r) {
            if (r.prior_mean == 0.0 && r.prior_var == 1.0) return std::string("bayes");
            return "bayes_" + compact(r.prior_mean) + "_" + compact(r.prior_var);
          },
          [](const FixedRule& r) { return "fixed_" + compact(r.action); },
      },
      rule);
}

void validate_rule(const RuleSpec& rule) {
  if (const auto* bayes = std::get_if<BayesRule>(&rule)) {
    if (!(bayes->prior_var > 0.0) || !std::isfinite(bayes->prior_var) ||
        !std::isfinite(bayes->prior_mean)) {
      throw std::domain_error("bayes rule needs a finite mean and a positive finite variance");
    }
  }
  if (const auto* fixed = std::get_if<FixedRule>(&rule)) {
    if (!std::isfinite(fixed->action)) throw std::domain_error("fixed action must be finite");
  }
}

RuleAction apply_rule(const RuleSpec& rule, double x, double reference_action) {
  return std::visit(
      Overloaded{
          [&](const JudgmentRule& r) {
            const DecisionOutcome out = decide(x, r.judgment);
            return RuleAction{out.action, out.rejected};
          },
          [&](const MlRule&) {
            const double a = decide_ml(x);
            return RuleAction{a, a != reference_action};
          },
          [&](const BayesRule& r) {
            const double a = decide_bayes(x, r.prior_mean, r.prior_var);
            return RuleAction{a, a != reference_action};
          },
          [&](const FixedRule& r) { return RuleAction{r.action, r.action != reference_action}; },
      },
      rule);
}

RiskReport mc_risk(const RuleSpec& rule, double theta, const Judgment& reference,
                   const McOptions& options) {
  validate_rule(rule);
  if (options.n_draws < 1) throw std::invalid_argument("n_draws must be at least 1");
  if (options.chunk_size < 1) throw std::invalid_argument("chunk_size must be at least 1");
  if (!std::isfinite(theta)) throw std::domain_error("theta must be finite");

  const double reference_action = reference.action();
  const double reference_loss = loss(theta, reference_action);
  const std::int64_t n_chunks = (options.n_draws + options.chunk_size - 1) / options.chunk_size;
  std::vector<ChunkStats> chunks(static_cast<std::size_t>(n_chunks));

  const auto work = [&](std::int64_t c) {
    const std::int64_t begin = c * options.chunk_size;
    const std::int64_t draws = std::min(options.chunk_size, options.n_draws - begin);
    chunks[static_cast<std::size_t>(c)] =
        run_chunk(rule, theta, reference_action, reference_loss,
                  options.seed + static_cast<std::uint64_t>(c), draws, options.noise);
  };

  unsigned threads = options.threads == 0 ? std::thread::hardware_concurrency() : options.threads;
  threads = std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(n_chunks)));
  if (threads == 1) {
    for (std::int64_t c = 0; c < n_chunks; ++c) work(c);
  } else {
    std::atomic<std::int64_t> next{0};
    std::vector<std::jthread> pool;
    pool.reserve(threads);
    for (unsigned t = 0; t < threads; ++t) {
      pool.emplace_back([&] {
        for (std::int64_t c = next++; c < n_chunks; c = next++) work(c);
      });
    }
  }

  ChunkStats total;
  for (const ChunkStats& c : chunks) total.merge(c);

  RiskReport report;
  report.theta = theta;
  report.n_draws = options.n_draws;
  report.seed = options.seed;
  report.mean_loss = total.mean;
  const double n = static_cast<double>(total.n);
  report.se_loss = total.n > 1 ? std::sqrt(total.m2 / (n - 1.0) / n) : 0.0;
  report.prob_worse = static_cast<double>(total.worse) / n;
  report.se_prob = binomial_se(report.prob_worse, total.n);
  report.reject_rate = static_cast<double>(total.rejected) / n;
  report.se_reject = binomial_se(report.reject_rate, total.n);
  return report;
}

SweepResult bound_sweep(const Judgment& judgment, const std::vector<double>& theta_grid,
                           const McOptions& options) {
  if (theta_grid.empty()) throw std::invalid_argument("theta grid is empty");
  SweepResult result;
  result.reports.reserve(theta_grid.size());
  const double alpha = judgment.alpha().value();
  for (double theta : theta_grid) {
    RiskReport r = mc_risk(JudgmentRule{judgment}, theta, judgment, options);
    if (r.prob_worse > alpha + 3.0 * r.se_prob) result.violations.push_back(theta);
    result.reports.push_back(r);
  }
  return result;
}

std::vector<PowerPoint> power_sweep(const Judgment& judgment, const std::vector<double>& theta_grid,
                                    const McOptions& options) {
  if (theta_grid.empty()) throw std::invalid_argument("theta grid is empty");
  const double alpha = judgment.alpha().value();
  if (!(alpha > 0.0 && alpha < 1.0)) throw std::domain_error("power sweep needs alpha in (0, 1)");
  std::vector<PowerPoint> points;
  points.reserve(theta_grid.size());
  for (double theta : theta_grid) {
    const RiskReport r = mc_risk(JudgmentRule{judgment}, theta, judgment, options);
    points.push_back({theta, r.reject_rate, r.se_reject, r.reject_rate < alpha - 3.0 * r.se_reject});
  }
  return points;
}

DominanceReport dominance_check(const RuleSpec& first, const RuleSpec& second,
                                const Judgment& reference, const std::vector<double>& theta_grid,
                                const McOptions& options) {
  if (theta_grid.empty()) throw std::invalid_argument("theta grid is empty");
  DominanceReport report;
  report.first_label = rule_label(first);
  report.second_label = rule_label(second);
  for (double theta : theta_grid) {
    DominanceRow row{theta, mc_risk(first, theta, reference, options),
                     mc_risk(second, theta, reference, options), 0.0, Verdict::kNeither};
    row.combined_se = std::hypot(row.first.se_loss, row.second.se_loss);
    const double gap = row.second.mean_loss - row.first.mean_loss;
    if (gap > 3.0 * row.combined_se && gap > 0.0) {
      row.verdict = Verdict::kFirstBetter;
      ++report.first_better;
    } else if (-gap > 3.0 * row.combined_se && gap < 0.0) {
      row.verdict = Verdict::kSecondBetter;
      ++report.second_better;
    }
    report.rows.push_back(row);
  }
  return report;
}

std::vector<double> make_grid(double start, double stop, double step) {
  if (!std::isfinite(start) || !std::isfinite(stop) || !std::isfinite(step)) {
    throw std::invalid_argument("grid bounds must be finite");
  }
  if (!(step > 0.0)) throw std::invalid_argument("grid step must be positive");
  if (stop < start) throw std::invalid_argument("grid is empty: stop < start");
  const auto count = static_cast<std::int64_t>(std::floor((stop - start) / step + 1e-9)) + 1;
  if (count > 1'000'000) throw std::invalid_argument("grid has too many points");
  std::vector<double> grid;
  grid.reserve(static_cast<std::size_t>(count));
  for (std::int64_t i = 0; i < count; ++i) grid.push_back(start + static_cast<double>(i) * step);
  return grid;
}

std::vector<double> parse_grid(const std::string& spec) {
  std::istringstream in(spec);
  double values[3];
  for (int i = 0; i < 3; ++i) {
    std::string field;
    if (!std::getline(in, field, ':') || field.empty()) {
      throw std::invalid_argument("grid must be start:stop:step, got '" + spec + "'");
    }
    std::size_t used = 0;
    try {
      values[i] = std::stod(field, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used != field.size()) {
      throw std::invalid_argument("grid field '" + field + "' is not a number");
    }
  }
  std::string rest;
  if (std::getline(in, rest)) throw std::invalid_argument("grid has extra fields: '" + spec + "'");
  return make_grid(values[0], values[1], values[2]);
}

}  // namespace judgment
