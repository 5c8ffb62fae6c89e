#include "judgment/cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "judgment/backtest.hpp"
#include "judgment/decision.hpp"
#include "judgment/elicitation.hpp"
#include "judgment/general_loss.hpp"
#include "judgment/report.hpp"

#ifndef JUDGMENT_VERSION
#define JUDGMENT_VERSION "0.0.0"
#endif

namespace judgment {

const char* version() { return JUDGMENT_VERSION; }

namespace {

double parse_number(const std::string& text, const std::string& what) {
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(text, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (text.empty() || used != text.size()) {
    throw std::invalid_argument(what + ": '" + text + "' is not a number");
  }
  return v;
}

std::vector<std::string> split(const std::string& text, char sep) {
  std::vector<std::string> parts;
  std::string part;
  std::istringstream in(text);
  while (std::getline(in, part, sep)) parts.push_back(part);
  if (!text.empty() && text.back() == sep) parts.emplace_back();
  return parts;
}

}  // namespace

RuleSpec parse_rule(const std::string& text, const Judgment& base) {
  const std::vector<std::string> parts = split(text, ':');
  if (parts.empty()) throw std::invalid_argument("empty rule");
  const std::string& kind = parts[0];
  const auto arity = [&](std::size_t lo, std::size_t hi) {
    if (parts.size() - 1 < lo || parts.size() - 1 > hi) {
      throw std::invalid_argument("rule '" + text + "' has the wrong number of parameters");
    }
  };
  RuleSpec rule = MlRule{};
  if (kind == "judgment") {
    arity(0, 1);
    const double alpha = parts.size() == 2 ? parse_number(parts[1], "rule alpha")
                                           : base.alpha().value();
    rule = JudgmentRule{Judgment(base.action(), alpha)};
  } else if (kind == "ml") {
    arity(0, 0);
    rule = MlRule{};
  } else if (kind == "bayes") {
    if (parts.size() != 1 && parts.size() != 3) {
      throw std::invalid_argument("bayes rule takes no parameters or mean:var");
    }
    rule = parts.size() == 3 ? BayesRule{parse_number(parts[1], "prior mean"),
                                         parse_number(parts[2], "prior variance")}
                             : BayesRule{};
  } else if (kind == "fixed") {
    arity(0, 1);
    rule = FixedRule{parts.size() == 2 ? parse_number(parts[1], "fixed action") : base.action()};
  } else {
    throw std::invalid_argument("unknown rule '" + kind + "' (judgment, ml, bayes, fixed)");
  }
  validate_rule(rule);
  return rule;
}

std::vector<RuleSpec> parse_rule_list(const std::string& text, const Judgment& base) {
  std::vector<RuleSpec> rules;
  for (const std::string& item : split(text, ',')) rules.push_back(parse_rule(item, base));
  if (rules.empty()) throw std::invalid_argument("rule list is empty");
  return rules;
}

namespace {

struct JudgmentFlags {
  double action = 0.0;
  double alpha = 0.05;
  Judgment make() const { return Judgment(action, alpha); }
};

void add_judgment_flags(CLI::App* cmd, JudgmentFlags& flags) {
  cmd->add_option("--judgment,-j", flags.action, "Judgmental action");
  cmd->add_option("--alpha,-a", flags.alpha, "Confidence level in [0, 1]")
      ->check(CLI::Range(0.0, 1.0));
}

struct DecideFlags {
  JudgmentFlags judgment;
  double x = 0.0;
  std::string loss = "quadratic";
  double se = 1.0;
  bool json = false;
};

struct RiskFlags {
  JudgmentFlags judgment;
  std::string rule = "judgment";
  std::string compare = "ml";
  std::string mode = "bound";
  std::string grid = "-3:3:0.25";
  std::string noise = "gaussian";
  std::int64_t draws = 1'000'000;
  std::uint64_t seed = 42;
  unsigned threads = 0;
  std::string out = ".";
};

struct BacktestFlags {
  JudgmentFlags judgment;
  std::string prices;
  std::string rules = "judgment,ml,bayes";
  std::size_t pre_sample = 84;
  double cash = 100.0;
  std::string mapping = "mean_variance";
  std::string out = ".";
  bool svg = false;
};

struct SynthFlags {
  std::size_t months = 206;
  double mean = -0.0006;
  double std_dev = 0.0557;
  std::uint64_t seed = 42;
  std::string start = "1999-01-01";
  std::string out = ".";
};

struct ElicitFlags {
  int attempts = 3;
};

std::string banner(const CLI::App& cmd, const std::string& name) {
  std::ostringstream os;
  os << "# judgment " << version() << ' ' << name << '\n';
  std::istringstream flags(cmd.config_to_str(true, false));
  std::string line;
  while (std::getline(flags, line)) {
    if (!line.empty()) os << "#   " << line << '\n';
  }
  return os.str();
}

std::filesystem::path prepare_out(const std::string& dir) {
  std::filesystem::path path(dir);
  std::filesystem::create_directories(path);
  return path;
}

std::ofstream open_out(const std::filesystem::path& path) {
  std::ofstream file(path, std::ios::binary);
  if (!file) throw DataError("cannot write '" + path.string() + "'", 0);
  return file;
}

int cmd_decide(const DecideFlags& f, const std::string& head, std::ostream& out) {
  const Judgment j = f.judgment.make();
  DecisionOutcome o;
  if (f.loss == "quadratic" && f.se == 1.0) {
    o = decide(f.x, j);
  } else if (f.loss == "quadratic") {
    o = decide_general(f.x, j, quadratic_loss(f.se));
  } else if (f.loss == "quartic") {
    o = decide_general(f.x, j, quartic_loss(f.se));
  } else {
    throw std::invalid_argument("unknown loss '" + f.loss + "' (quadratic, quartic)");
  }

  if (f.json) {
    nlohmann::ordered_json doc;
    doc["version"] = version();
    doc["x"] = f.x;
    doc["judgment"] = j.action();
    doc["alpha"] = j.alpha().value();
    doc["loss"] = f.loss;
    doc["action"] = o.action;
    doc["branch"] = to_string(o.branch);
    doc["rejected"] = o.rejected;
    doc["ci_lower"] = std::isinf(o.ci_lower) ? nlohmann::ordered_json("-inf")
                                             : nlohmann::ordered_json(o.ci_lower);
    doc["ci_upper"] = std::isinf(o.ci_upper) ? nlohmann::ordered_json("inf")
                                             : nlohmann::ordered_json(o.ci_upper);
    doc["gradient_at_judgment"] = o.gradient_at_judgment;
    doc["displacement"] = o.displacement;
    out << doc.dump(2) << '\n';
    return exit_code::kOk;
  }
  out << head << "action = " << six_places(o.action) << '\n'
      << "branch = " << to_string(o.branch) << '\n'
      << "rejected = " << (o.rejected ? "true" : "false") << '\n'
      << "ci_lower = " << six_places(o.ci_lower) << '\n'
      << "ci_upper = " << six_places(o.ci_upper) << '\n'
      << "gradient_at_judgment = " << six_places(o.gradient_at_judgment) << '\n'
      << "displacement = " << six_places(o.displacement) << '\n';
  return exit_code::kOk;
}

Noise parse_noise(const std::string& name) {
  if (name == "gaussian") return Noise::kGaussian;
  if (name == "t5") return Noise::kStudentT5;
  throw std::invalid_argument("unknown noise '" + name + "' (gaussian, t5)");
}

int cmd_risk(const RiskFlags& f, const std::string& head, std::ostream& out) {
  const Judgment j = f.judgment.make();
  const std::vector<double> grid = parse_grid(f.grid);
  McOptions options;
  options.n_draws = f.draws;
  options.seed = f.seed;
  options.threads = f.threads;
  options.noise = parse_noise(f.noise);
  const bool gaussian = options.noise == Noise::kGaussian;
  const auto dir = prepare_out(f.out);

  std::ostringstream verdict;
  int code = exit_code::kOk;
  std::filesystem::path csv_path;
  std::ostringstream csv;

  if (f.mode == "bound") {
    const RuleSpec rule = parse_rule(f.rule, j);
    std::vector<RiskReport> reports;
    std::vector<double> violations;
    const auto* jr = std::get_if<JudgmentRule>(&rule);
    if (jr != nullptr) {
      SweepResult sweep = bound_sweep(jr->judgment, grid, options);
      reports = std::move(sweep.reports);
      violations = std::move(sweep.violations);
    } else {
      for (double theta : grid) reports.push_back(mc_risk(rule, theta, j, options));
    }
    write_risk_csv(csv, reports);
    csv_path = dir / "risk.csv";
    verdict << "rule = " << rule_label(rule) << '\n' << "grid_points = " << grid.size() << '\n';
    if (jr == nullptr) {
      verdict << "bound_check = skipped (not a judgment rule)\n";
    } else if (!gaussian) {
      verdict << "bound_check = descriptive only (non-Gaussian noise)\n";
    } else {
      const double alpha = jr->judgment.alpha().value();
      verdict << "bound = prob_worse <= " << six_places(alpha) << " + 3 se\n"
              << "violations = " << violations.size() << '\n';
      for (double theta : violations) verdict << "violation_theta = " << six_places(theta) << '\n';
      verdict << "verdict = " << (violations.empty() ? "PASS" : "FAIL") << '\n';
      if (!violations.empty()) code = exit_code::kBoundViolation;
    }
  } else if (f.mode == "power") {
    const std::vector<PowerPoint> points = power_sweep(j, grid, options);
    csv << "theta,reject_rate,se_reject\n";
    std::size_t below = 0;
    for (const PowerPoint& p : points) {
      csv << full_precision(p.theta) << ',' << full_precision(p.reject_rate) << ','
          << full_precision(p.se) << '\n';
      below += p.below_floor ? 1 : 0;
    }
    csv_path = dir / "power.csv";
    verdict << "rule = " << rule_label(JudgmentRule{j}) << '\n'
            << "grid_points = " << grid.size() << '\n';
    if (gaussian) {
      verdict << "floor = reject_rate >= " << six_places(j.alpha().value()) << " - 3 se\n"
              << "below_floor = " << below << '\n'
              << "verdict = " << (below == 0 ? "PASS" : "FAIL") << '\n';
      if (below > 0) code = exit_code::kBoundViolation;
    } else {
      verdict << "floor_check = descriptive only (non-Gaussian noise)\n";
    }
  } else if (f.mode == "dominance") {
    const RuleSpec first = parse_rule(f.rule, j);
    const RuleSpec second = parse_rule(f.compare, j);
    const DominanceReport report = dominance_check(first, second, j, grid, options);
    write_dominance_csv(csv, report);
    csv_path = dir / "dominance.csv";
    verdict << "first = " << report.first_label << '\n'
            << "second = " << report.second_label << '\n'
            << "first_better_points = " << report.first_better << '\n'
            << "second_better_points = " << report.second_better << '\n'
            << "uniform_dominance = "
            << (report.first_dominates()    ? report.first_label
                : report.second_dominates() ? report.second_label
                                            : std::string("none"))
            << '\n';
  } else {
    throw std::invalid_argument("unknown mode '" + f.mode + "' (bound, power, dominance)");
  }

  open_out(csv_path) << csv.str();
  open_out(dir / "risk_report.txt") << head << verdict.str();
  out << head << verdict.str() << "csv = " << csv_path.string() << '\n';
  return code;
}

int cmd_backtest(const BacktestFlags& f, const std::string& head, std::ostream& out) {
  const Judgment j = f.judgment.make();
  const std::vector<RuleSpec> rules = parse_rule_list(f.rules, j);
  BacktestConfig config;
  config.pre_sample = f.pre_sample;
  config.initial_cash = f.cash;
  config.mapping = parse_weight_mapping(f.mapping);

  const PriceSeries prices = load_prices(f.prices);
  if (prices.size() < f.pre_sample + 2) {
    throw DataError("price file has " + std::to_string(prices.size()) +
                        " rows; need at least pre-sample + 2 = " +
                        std::to_string(f.pre_sample + 2),
                    0);
  }
  const ReturnSeries returns = to_log_returns(prices);
  const BacktestResult result = run_backtest(returns, rules, j, config);
  const SummaryStats stats = summary_stats(returns.log_returns);

  const auto dir = prepare_out(f.out);
  {
    auto csv = open_out(dir / "backtest.csv");
    write_backtest_csv(csv, result);
  }
  std::ostringstream summary;
  write_backtest_summary(summary, result, stats);
  open_out(dir / "backtest_summary.txt") << head << summary.str();
  if (f.svg) {
    auto svg = open_out(dir / "backtest.svg");
    write_value_svg(svg, result);
  }
  out << head << summary.str();
  return exit_code::kOk;
}

int cmd_synth(const SynthFlags& f, const std::string& head, std::ostream& out) {
  const PriceSeries prices = synth_prices(f.months, f.mean, f.std_dev, f.seed, parse_date(f.start));
  const auto dir = prepare_out(f.out);
  const auto path = dir / "synth_prices.csv";
  {
    auto file = open_out(path);
    write_prices(file, prices);
  }
  const SummaryStats s = summary_stats(to_log_returns(prices).log_returns);
  out << head << "prices = " << path.string() << '\n'
      << "rows = " << prices.size() << '\n'
      << "obs = " << s.obs << '\n'
      << "mean = " << six_places(s.mean) << '\n'
      << "std_dev = " << six_places(s.std_dev) << '\n'
      << "median = " << six_places(s.median) << '\n'
      << "min = " << six_places(s.min) << '\n'
      << "max = " << six_places(s.max) << '\n';
  return exit_code::kOk;
}

int cmd_elicit(const ElicitFlags& f, std::istream& in, std::ostream& out) {
  const Probability alpha = elicit_interactive(in, out, f.attempts);
  out << "alpha = " << full_precision(alpha.value()) << '\n';
  return exit_code::kOk;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::istream& in, std::ostream& out,
            std::ostream& err) {
  CLI::App app{"Decision rules anchored on a judgmental action", "judgment"};
  app.option_defaults()->always_capture_default();
  app.set_version_flag("--version", version());
  app.set_config("--config", "", "Flat key = value configuration file");
  app.require_subcommand(1, 1);

  DecideFlags decide_flags;
  auto* decide_cmd = app.add_subcommand("decide", "Apply the decision rule to one observation");
  decide_cmd->add_option("--x,-x", decide_flags.x, "Observed statistic")->required();
  add_judgment_flags(decide_cmd, decide_flags.judgment);
  decide_cmd->add_option("--loss", decide_flags.loss, "quadratic | quartic");
  decide_cmd->add_option("--se", decide_flags.se, "Standard error of the estimate")
      ->check(CLI::PositiveNumber);
  decide_cmd->add_flag("--json", decide_flags.json, "Machine-readable output");

  RiskFlags risk_flags;
  auto* risk_cmd = app.add_subcommand("risk", "Monte Carlo risk sweeps");
  add_judgment_flags(risk_cmd, risk_flags.judgment);
  risk_cmd->add_option("--mode", risk_flags.mode, "bound | power | dominance");
  risk_cmd->add_option("--rule", risk_flags.rule, "Rule to simulate");
  risk_cmd->add_option("--compare", risk_flags.compare, "Second rule for dominance mode");
  risk_cmd->add_option("--grid", risk_flags.grid, "theta grid start:stop:step");
  risk_cmd->add_option("--noise", risk_flags.noise, "gaussian | t5");
  risk_cmd->add_option("--draws,-n", risk_flags.draws, "Draws per grid point")
      ->check(CLI::PositiveNumber);
  risk_cmd->add_option("--seed", risk_flags.seed, "Base seed");
  risk_cmd->add_option("--threads", risk_flags.threads, "Worker threads (0 = all cores)");
  risk_cmd->add_option("--out,-o", risk_flags.out, "Output directory");

  BacktestFlags bt_flags;
  auto* bt_cmd = app.add_subcommand("backtest", "Expanding-window allocation backtest");
  bt_cmd->add_option("--prices", bt_flags.prices, "CSV with header date,close")->required();
  add_judgment_flags(bt_cmd, bt_flags.judgment);
  bt_cmd->add_option("--rules", bt_flags.rules, "Comma-separated rules");
  bt_cmd->add_option("--pre-sample", bt_flags.pre_sample, "Returns in the first window");
  bt_cmd->add_option("--cash", bt_flags.cash, "Initial portfolio value");
  bt_cmd->add_option("--mapping", bt_flags.mapping, "mean_variance | raw_action");
  bt_cmd->add_option("--out,-o", bt_flags.out, "Output directory");
  bt_cmd->add_flag("--svg", bt_flags.svg, "Also write backtest.svg");

  SynthFlags synth_flags;
  auto* synth_cmd = app.add_subcommand("synth", "Synthetic monthly price series");
  synth_cmd->add_option("--months", synth_flags.months, "Number of monthly returns");
  synth_cmd->add_option("--mean", synth_flags.mean, "Sample mean of log returns");
  synth_cmd->add_option("--std", synth_flags.std_dev, "Sample std of log returns")
      ->check(CLI::PositiveNumber);
  synth_cmd->add_option("--seed", synth_flags.seed, "Seed");
  synth_cmd->add_option("--start", synth_flags.start, "First price date (YYYY-MM-DD)");
  synth_cmd->add_option("--out,-o", synth_flags.out, "Output directory");

  ElicitFlags elicit_flags;
  auto* elicit_cmd = app.add_subcommand("elicit", "Urn experiment eliciting alpha from stdin");
  elicit_cmd->add_option("--attempts", elicit_flags.attempts, "Answers allowed")
      ->check(CLI::PositiveNumber);

  std::vector<const char*> argv;
  argv.reserve(args.size());
  for (const std::string& a : args) argv.push_back(a.c_str());

  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? exit_code::kOk : exit_code::kUsage;
  }

  try {
    if (*decide_cmd) return cmd_decide(decide_flags, banner(*decide_cmd, "decide"), out);
    if (*risk_cmd) return cmd_risk(risk_flags, banner(*risk_cmd, "risk"), out);
    if (*bt_cmd) return cmd_backtest(bt_flags, banner(*bt_cmd, "backtest"), out);
    if (*synth_cmd) return cmd_synth(synth_flags, banner(*synth_cmd, "synth"), out);
    if (*elicit_cmd) return cmd_elicit(elicit_flags, in, out);
  } catch (const DataError& e) {
    err << "error: " << e.what() << '\n';
    return exit_code::kData;
  } catch (const std::filesystem::filesystem_error& e) {
    err << "error: " << e.what() << '\n';
    return exit_code::kData;
  } catch (const BracketError& e) {
    err << "error: " << e.what() << '\n';
    return exit_code::kNumerical;
  } catch (const ConvexityError& e) {
    err << "error: " << e.what() << '\n';
    return exit_code::kNumerical;
  } catch (const ElicitationError& e) {
    err << "error: " << e.what() << '\n';
    return exit_code::kUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n' << "run with --help for usage\n";
    return exit_code::kUsage;
  }
  return exit_code::kUsage;
}

}  // namespace judgment
