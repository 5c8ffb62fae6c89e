#include "judgment/backtest.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <numeric>

#include "judgment/random.hpp"

namespace judgment {

namespace {

std::string trim(std::string s) {
  const auto not_space = [](unsigned char c) { return !std::isspace(c); };
  s.erase(s.begin(), std::find_if(s.begin(), s.end(), not_space));
  s.erase(std::find_if(s.rbegin(), s.rend(), not_space).base(), s.end());
  return s;
}

std::string lower(std::string s) {
  std::transform(s.begin(), s.end(), s.begin(), [](unsigned char c) { return std::tolower(c); });
  return s;
}

}  // namespace

Date parse_date(const std::string& text) {
  int y = 0;
  unsigned m = 0;
  unsigned d = 0;
  char tail = 0;
  if (text.size() != 10 || std::sscanf(text.c_str(), "%4d-%2u-%2u%c", &y, &m, &d, &tail) != 3) {
    throw std::invalid_argument("expected an ISO date YYYY-MM-DD, got '" + text + "'");
  }
  const Date date{std::chrono::year{y}, std::chrono::month{m}, std::chrono::day{d}};
  if (!date.ok()) throw std::invalid_argument("invalid calendar date '" + text + "'");
  return date;
}

std::string format_date(const Date& date) {
  char buf[16];
  std::snprintf(buf, sizeof buf, "%04d-%02u-%02u", static_cast<int>(date.year()),
                static_cast<unsigned>(date.month()), static_cast<unsigned>(date.day()));
  return buf;
}

DataError::DataError(const std::string& message, std::size_t row)
    : std::runtime_error(row > 0 ? "row " + std::to_string(row) + ": " + message : message),
      row_(row) {}

void validate(const PriceSeries& prices) {
  if (prices.dates.size() != prices.closes.size()) {
    throw DataError("dates and closes differ in length", 0);
  }
  for (std::size_t i = 0; i < prices.size(); ++i) {
    if (!(prices.closes[i] > 0.0) || !std::isfinite(prices.closes[i])) {
      throw DataError("close must be positive and finite", i + 2);
    }
    if (i > 0 && !(prices.dates[i - 1] < prices.dates[i])) {
      throw DataError("dates must be strictly increasing", i + 2);
    }
  }
}

PriceSeries read_prices(std::istream& in) {
  std::string line;
  if (!std::getline(in, line)) throw DataError("empty input", 1);
  if (lower(trim(line)) != "date,close") {
    throw DataError("expected header 'date,close'", 1);
  }

  PriceSeries prices;
  std::size_t row = 1;
  while (std::getline(in, line)) {
    ++row;
    line = trim(line);
    if (line.empty()) continue;
    const auto comma = line.find(',');
    if (comma == std::string::npos || line.find(',', comma + 1) != std::string::npos) {
      throw DataError("expected two comma-separated fields", row);
    }
    Date date;
    try {
      date = parse_date(trim(line.substr(0, comma)));
    } catch (const std::invalid_argument& e) {
      throw DataError(e.what(), row);
    }
    const std::string close_text = trim(line.substr(comma + 1));
    double close = 0.0;
    std::size_t used = 0;
    try {
      close = std::stod(close_text, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (close_text.empty() || used != close_text.size()) {
      throw DataError("close '" + close_text + "' is not a number", row);
    }
    if (!(close > 0.0) || !std::isfinite(close)) {
      throw DataError("close must be positive and finite, got " + close_text, row);
    }
    if (!prices.dates.empty() && !(prices.dates.back() < date)) {
      throw DataError("dates must be strictly increasing", row);
    }
    prices.dates.push_back(date);
    prices.closes.push_back(close);
  }
  return prices;
}

PriceSeries load_prices(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open price file '" + path + "'", 0);
  return read_prices(in);
}

void write_prices(std::ostream& out, const PriceSeries& prices) {
  out << "date,close\n";
  char buf[40];
  for (std::size_t i = 0; i < prices.size(); ++i) {
    std::snprintf(buf, sizeof buf, "%.17g", prices.closes[i]);
    out << format_date(prices.dates[i]) << ',' << buf << '\n';
  }
}

double ReturnSeries::simple_return(std::size_t t) const { return std::expm1(log_returns.at(t)); }

ReturnSeries to_log_returns(const PriceSeries& prices) {
  validate(prices);
  ReturnSeries returns;
  if (prices.size() < 2) return returns;
  returns.dates.assign(prices.dates.begin() + 1, prices.dates.end());
  returns.log_returns.reserve(prices.size() - 1);
  for (std::size_t t = 1; t < prices.size(); ++t) {
    returns.log_returns.push_back(std::log(prices.closes[t] / prices.closes[t - 1]));
  }
  return returns;
}

double sample_std(const std::vector<double>& values) {
  if (values.size() < 2) {
    throw std::domain_error("standard deviation needs at least two observations");
  }
  const double n = static_cast<double>(values.size());
  const double mean = std::accumulate(values.begin(), values.end(), 0.0) / n;
  double ss = 0.0;
  for (double v : values) ss += (v - mean) * (v - mean);
  return std::sqrt(ss / (n - 1.0));
}

SummaryStats summary_stats(const std::vector<double>& values) {
  SummaryStats s;
  s.obs = values.size();
  s.std_dev = sample_std(values);
  s.mean = std::accumulate(values.begin(), values.end(), 0.0) / static_cast<double>(s.obs);
  std::vector<double> sorted = values;
  std::sort(sorted.begin(), sorted.end());
  s.min = sorted.front();
  s.max = sorted.back();
  const std::size_t mid = s.obs / 2;
  s.median = s.obs % 2 == 1 ? sorted[mid] : 0.5 * (sorted[mid - 1] + sorted[mid]);
  return s;
}

WindowStats window_stat(const ReturnSeries& returns, std::size_t pre_sample, std::size_t s,
                        double sigma) {
  const std::size_t n = pre_sample + s;
  if (n == 0) throw std::invalid_argument("window must contain at least one return");
  if (n > returns.size()) {
    throw std::out_of_range("window of " + std::to_string(n) + " returns exceeds series of " +
                            std::to_string(returns.size()));
  }
  if (!(sigma > 0.0) || !std::isfinite(sigma)) {
    throw std::domain_error("sigma must be positive and finite");
  }
  double sum = 0.0;
  for (std::size_t t = 0; t < n; ++t) sum += returns.log_returns[t];
  const double root_n = std::sqrt(static_cast<double>(n));
  return WindowStats{n, sigma, root_n * (sum / static_cast<double>(n)) / sigma};
}

WeightMapping parse_weight_mapping(const std::string& name) {
  if (name == "mean_variance") return WeightMapping::kMeanVariance;
  if (name == "raw_action") return WeightMapping::kRawAction;
  throw std::invalid_argument("unknown weight mapping '" + name +
                              "' (expected mean_variance or raw_action)");
}

const char* to_string(WeightMapping mapping) {
  return mapping == WeightMapping::kMeanVariance ? "mean_variance" : "raw_action";
}

BacktestResult run_backtest(const ReturnSeries& returns, const std::vector<RuleSpec>& rules,
                            const Judgment& reference, const BacktestConfig& config) {
  if (rules.empty()) throw std::invalid_argument("at least one rule is required");
  if (config.pre_sample < 2) throw std::invalid_argument("pre-sample must be at least 2");
  if (returns.size() < config.pre_sample + 1) {
    throw std::invalid_argument("need at least pre_sample + 1 returns (pre_sample + 2 prices)");
  }
  if (!(config.initial_cash > 0.0) || !std::isfinite(config.initial_cash)) {
    throw std::invalid_argument("initial cash must be positive and finite");
  }
  for (const RuleSpec& rule : rules) validate_rule(rule);

  BacktestResult result;
  result.pre_sample = config.pre_sample;
  result.initial_cash = config.initial_cash;
  result.mapping = config.mapping;
  result.sigma = config.sigma ? *config.sigma : sample_std(returns.log_returns);
  if (!(result.sigma > 0.0) || !std::isfinite(result.sigma)) {
    throw std::domain_error("return series has zero or non-finite standard deviation");
  }

  const std::size_t periods = returns.size() - config.pre_sample;
  for (const RuleSpec& rule : rules) {
    RulePath path{rule_label(rule), rule, {}, {}, {}, {config.initial_cash}, false};
    path.actions.reserve(periods);
    path.weights.reserve(periods);
    path.values.reserve(periods + 1);
    result.paths.push_back(std::move(path));
  }

  for (std::size_t s = 0; s < periods; ++s) {
    const WindowStats window = window_stat(returns, config.pre_sample, s, result.sigma);
    const std::size_t earn = config.pre_sample + s;
    result.dates.push_back(returns.dates[earn]);
    result.xbar.push_back(window.xbar);
    const double growth = returns.simple_return(earn);
    const double scale = std::sqrt(static_cast<double>(window.n)) * result.sigma;

    for (RulePath& path : result.paths) {
      const RuleAction act = apply_rule(path.rule, window.xbar, reference.action());
      const double weight =
          config.mapping == WeightMapping::kMeanVariance ? act.action / scale : act.action;
      const double value = path.values.back() * (1.0 + weight * growth);
      path.actions.push_back(act.action);
      path.rejected.push_back(act.rejected);
      path.weights.push_back(weight);
      path.values.push_back(value);
      if (!(value > 0.0)) path.wealth_depleted = true;
    }
  }
  return result;
}

PriceSeries synth_prices(std::size_t n_months, double mean, double std_dev, std::uint64_t seed,
                         Date start) {
  if (n_months < 2) throw std::invalid_argument("need at least two months to match moments");
  if (!(std_dev > 0.0) || !std::isfinite(std_dev) || !std::isfinite(mean)) {
    throw std::invalid_argument("std must be positive and moments finite");
  }
  if (!start.ok()) throw std::invalid_argument("invalid start date");

  UniformSource source(seed);
  std::vector<double> draws(n_months);
  for (double& z : draws) z = sample_standard_normal(source);
  const double n = static_cast<double>(n_months);
  const double draw_mean = std::accumulate(draws.begin(), draws.end(), 0.0) / n;
  const double draw_std = sample_std(draws);

  PriceSeries prices;
  prices.dates.reserve(n_months + 1);
  prices.closes.reserve(n_months + 1);
  const std::chrono::year_month first{start.year(), start.month()};
  double close = 100.0;
  for (std::size_t t = 0; t <= n_months; ++t) {
    const std::chrono::year_month ym = first + std::chrono::months{static_cast<int>(t)};
    prices.dates.push_back(Date{ym.year(), ym.month(), std::chrono::day{1}});
    if (t > 0) close *= std::exp(mean + std_dev * (draws[t - 1] - draw_mean) / draw_std);
    prices.closes.push_back(close);
  }
  return prices;
}

}  // namespace judgment
