#include "judgment/report.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>

namespace judgment {

std::string full_precision(double v) {
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string six_places(double v) {
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6f", v);
  std::string s = buf;
  if (s == "-0.000000") s = "0.000000";
  return s;
}

void write_risk_csv(std::ostream& out, const std::vector<RiskReport>& reports) {
  out << "theta,mean_loss,se_loss,prob_worse,se_prob,reject_rate\n";
  for (const RiskReport& r : reports) {
    out << full_precision(r.theta) << ',' << full_precision(r.mean_loss) << ','
        << full_precision(r.se_loss) << ',' << full_precision(r.prob_worse) << ','
        << full_precision(r.se_prob) << ',' << full_precision(r.reject_rate) << '\n';
  }
}

void write_dominance_csv(std::ostream& out, const DominanceReport& report) {
  out << "theta,mean_loss_" << report.first_label << ",se_loss_" << report.first_label
      << ",mean_loss_" << report.second_label << ",se_loss_" << report.second_label
      << ",better\n";
  for (const DominanceRow& row : report.rows) {
    const char* better = row.verdict == Verdict::kFirstBetter    ? report.first_label.c_str()
                         : row.verdict == Verdict::kSecondBetter ? report.second_label.c_str()
                                                                 : "none";
    out << full_precision(row.theta) << ',' << full_precision(row.first.mean_loss) << ','
        << full_precision(row.first.se_loss) << ',' << full_precision(row.second.mean_loss)
        << ',' << full_precision(row.second.se_loss) << ',' << better << '\n';
  }
}

void write_backtest_csv(std::ostream& out, const BacktestResult& result) {
  out << "date,xbar";
  for (const char* field : {"action_", "weight_", "value_"}) {
    for (const RulePath& p : result.paths) out << ',' << field << p.label;
  }
  out << '\n';
  for (std::size_t s = 0; s < result.periods(); ++s) {
    out << format_date(result.dates[s]) << ',' << full_precision(result.xbar[s]);
    for (const RulePath& p : result.paths) out << ',' << full_precision(p.actions[s]);
    for (const RulePath& p : result.paths) out << ',' << full_precision(p.weights[s]);
    for (const RulePath& p : result.paths) out << ',' << full_precision(p.values[s + 1]);
    out << '\n';
  }
}

void write_backtest_summary(std::ostream& out, const BacktestResult& result,
                            const SummaryStats& stats) {
  out << "[returns]\n"
      << "obs = " << stats.obs << '\n'
      << "mean = " << six_places(stats.mean) << '\n'
      << "std_dev = " << six_places(stats.std_dev) << '\n'
      << "median = " << six_places(stats.median) << '\n'
      << "min = " << six_places(stats.min) << '\n'
      << "max = " << six_places(stats.max) << '\n'
      << "\n[backtest]\n"
      << "pre_sample = " << result.pre_sample << '\n'
      << "periods = " << result.periods() << '\n'
      << "sigma = " << six_places(result.sigma) << '\n'
      << "weight_mapping = " << to_string(result.mapping) << '\n'
      << "initial_cash = " << six_places(result.initial_cash) << '\n';
  if (result.periods() > 0) {
    out << "first_period = " << format_date(result.dates.front()) << '\n'
        << "last_period = " << format_date(result.dates.back()) << '\n';
  }
  for (const RulePath& p : result.paths) {
    const auto deviations = std::count(p.rejected.begin(), p.rejected.end(), true);
    const double final_value = p.values.back();
    out << "\n[rule." << p.label << "]\n"
        << "final_value = " << six_places(final_value) << '\n'
        << "total_return_pct = "
        << six_places(100.0 * (final_value / result.initial_cash - 1.0)) << '\n'
        << "min_value = " << six_places(*std::min_element(p.values.begin(), p.values.end()))
        << '\n'
        << "max_value = " << six_places(*std::max_element(p.values.begin(), p.values.end()))
        << '\n'
        << "deviations = " << deviations << '\n'
        << "wealth_depleted = " << (p.wealth_depleted ? "true" : "false") << '\n';
  }
}

void write_value_svg(std::ostream& out, const BacktestResult& result) {
  constexpr double kWidth = 800.0;
  constexpr double kHeight = 450.0;
  constexpr double kMargin = 50.0;
  static constexpr std::array<const char*, 6> kColors = {"#1f77b4", "#d62728", "#2ca02c",
                                                         "#ff7f0e", "#9467bd", "#8c564b"};

  double lo = result.initial_cash;
  double hi = result.initial_cash;
  for (const RulePath& p : result.paths) {
    lo = std::min(lo, *std::min_element(p.values.begin(), p.values.end()));
    hi = std::max(hi, *std::max_element(p.values.begin(), p.values.end()));
  }
  if (hi - lo < 1e-12) {
    lo -= 1.0;
    hi += 1.0;
  }
  const std::size_t points = result.periods() + 1;
  const auto px = [&](std::size_t i) {
    return kMargin + (kWidth - 2 * kMargin) * (points > 1 ? double(i) / double(points - 1) : 0.0);
  };
  const auto py = [&](double v) {
    return kHeight - kMargin - (kHeight - 2 * kMargin) * (v - lo) / (hi - lo);
  };
  const auto num = [](double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.2f", v);
    return std::string(buf);
  };

  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << num(kWidth) << "\" height=\""
      << num(kHeight) << "\" viewBox=\"0 0 " << num(kWidth) << ' ' << num(kHeight) << "\">\n"
      << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n"
      << "<line x1=\"" << num(kMargin) << "\" y1=\"" << num(kHeight - kMargin) << "\" x2=\""
      << num(kWidth - kMargin) << "\" y2=\"" << num(kHeight - kMargin)
      << "\" stroke=\"black\"/>\n"
      << "<line x1=\"" << num(kMargin) << "\" y1=\"" << num(kMargin) << "\" x2=\"" << num(kMargin)
      << "\" y2=\"" << num(kHeight - kMargin) << "\" stroke=\"black\"/>\n"
      << "<text x=\"5\" y=\"" << num(kMargin) << "\" font-size=\"11\">" << num(hi) << "</text>\n"
      << "<text x=\"5\" y=\"" << num(kHeight - kMargin) << "\" font-size=\"11\">" << num(lo)
      << "</text>\n";
  if (result.periods() > 0) {
    out << "<text x=\"" << num(kMargin) << "\" y=\"" << num(kHeight - kMargin + 20)
        << "\" font-size=\"11\">" << format_date(result.dates.front()) << "</text>\n"
        << "<text x=\"" << num(kWidth - kMargin - 70) << "\" y=\"" << num(kHeight - kMargin + 20)
        << "\" font-size=\"11\">" << format_date(result.dates.back()) << "</text>\n";
  }
  for (std::size_t r = 0; r < result.paths.size(); ++r) {
    const RulePath& p = result.paths[r];
    const char* color = kColors[r % kColors.size()];
    out << "<polyline fill=\"none\" stroke=\"" << color << "\" stroke-width=\"1.5\" points=\"";
    for (std::size_t i = 0; i < p.values.size(); ++i) {
      out << (i ? " " : "") << num(px(i)) << ',' << num(py(p.values[i]));
    }
    out << "\"/>\n"
        << "<text x=\"" << num(kWidth - kMargin - 140) << "\" y=\"" << num(kMargin + 15.0 * r)
        << "\" font-size=\"12\" fill=\"" << color << "\">" << p.label << "</text>\n";
  }
  out << "</svg>\n";
}

}  // namespace judgment
