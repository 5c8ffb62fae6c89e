// Expanding-window asset allocation backtest: one risky index against cash.
//
// Each window's log returns are standardised by the full-sample standard
// deviation and scaled by sqrt(window length), so the window mean is a single
// unit-variance observation that the decision rules consume directly.

#ifndef JUDGMENT_BACKTEST_HPP
#define JUDGMENT_BACKTEST_HPP

#include <chrono>
#include <cstdint>
#include <istream>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "judgment/risk_lab.hpp"

namespace judgment {

using Date = std::chrono::year_month_day;

/// Parses YYYY-MM-DD. Throws std::invalid_argument.
Date parse_date(const std::string& text);
std::string format_date(const Date& date);

/// Malformed or invalid price data. `row` is the 1-based line number in the
/// input (header is line 1), or 0 when not tied to a line.
class DataError : public std::runtime_error {
 public:
  DataError(const std::string& message, std::size_t row);
  std::size_t row() const { return row_; }

 private:
  std::size_t row_;
};

struct PriceSeries {
  std::vector<Date> dates;
  std::vector<double> closes;

  std::size_t size() const { return closes.size(); }
};

/// Strictly increasing dates and positive finite closes; throws DataError.
void validate(const PriceSeries& prices);

/// CSV with header `date,close`.
PriceSeries read_prices(std::istream& in);
PriceSeries load_prices(const std::string& path);
void write_prices(std::ostream& out, const PriceSeries& prices);

struct ReturnSeries {
  /// Date of the closing price that ends each return period.
  std::vector<Date> dates;
  std::vector<double> log_returns;

  std::size_t size() const { return log_returns.size(); }
  double simple_return(std::size_t t) const;
};

ReturnSeries to_log_returns(const PriceSeries& prices);

struct SummaryStats {
  std::size_t obs = 0;
  double mean = 0.0;
  double std_dev = 0.0;  // n - 1 denominator
  double median = 0.0;
  double min = 0.0;
  double max = 0.0;
};

/// Needs at least two observations (the n - 1 standard deviation).
SummaryStats summary_stats(const std::vector<double>& values);

/// Sample standard deviation (n - 1 denominator).
double sample_std(const std::vector<double>& values);

struct WindowStats {
  std::size_t n = 0;
  double sigma = 0.0;
  /// sqrt(n) * mean(first n log returns) / sigma.
  double xbar = 0.0;
};

/// Window of the first pre_sample + s returns.
WindowStats window_stat(const ReturnSeries& returns, std::size_t pre_sample, std::size_t s,
                        double sigma);

enum class WeightMapping {
  /// w = action / (sqrt(n) * sigma); the ML action gives mean / sigma^2.
  kMeanVariance,
  kRawAction,
};

WeightMapping parse_weight_mapping(const std::string& name);
const char* to_string(WeightMapping mapping);

struct BacktestConfig {
  std::size_t pre_sample = 84;
  double initial_cash = 100.0;
  WeightMapping mapping = WeightMapping::kMeanVariance;
  /// Replaces the full-sample standard deviation when set.
  std::optional<double> sigma;
};

struct RulePath {
  std::string label;
  RuleSpec rule;
  std::vector<double> actions;
  std::vector<bool> rejected;
  std::vector<double> weights;
  /// values[0] is the initial cash; values[s + 1] the value after period s.
  std::vector<double> values;
  /// Some value fell to zero or below.
  bool wealth_depleted = false;
};

struct BacktestResult {
  std::size_t pre_sample = 0;
  double sigma = 0.0;
  double initial_cash = 0.0;
  WeightMapping mapping = WeightMapping::kMeanVariance;
  /// Month whose return each period's allocation earns.
  std::vector<Date> dates;
  std::vector<double> xbar;
  std::vector<RulePath> paths;

  std::size_t periods() const { return dates.size(); }
};

/// Step s (0-based) decides from the first pre_sample + s returns and earns
/// return pre_sample + s. The reference judgment supplies the action against
/// which non-judgment rules report deviations.
BacktestResult run_backtest(const ReturnSeries& returns, const std::vector<RuleSpec>& rules,
                            const Judgment& reference, const BacktestConfig& config = {});

/// Gaussian log returns whose sample mean and standard deviation equal the
/// requested values exactly (affine correction), cumulated from a price of 100.
/// Dates are the first of each month starting at `start`.
PriceSeries synth_prices(std::size_t n_months, double mean, double std_dev, std::uint64_t seed,
                         Date start = Date{std::chrono::year{1999}, std::chrono::month{1},
                                           std::chrono::day{1}});

}  // namespace judgment

#endif  // JUDGMENT_BACKTEST_HPP
