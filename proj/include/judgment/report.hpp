// Text, CSV and SVG emitters shared by the CLI and the tests.

#ifndef JUDGMENT_REPORT_HPP
#define JUDGMENT_REPORT_HPP

#include <ostream>
#include <string>
#include <vector>

#include "judgment/backtest.hpp"
#include "judgment/risk_lab.hpp"

namespace judgment {

/// Round-trippable representation ("%.17g"); "inf"/"-inf" for infinities.
std::string full_precision(double v);
/// Fixed six decimals for human-readable output.
std::string six_places(double v);

/// Header theta,mean_loss,se_loss,prob_worse,se_prob,reject_rate.
void write_risk_csv(std::ostream& out, const std::vector<RiskReport>& reports);

void write_dominance_csv(std::ostream& out, const DominanceReport& report);

/// Header date,xbar,action_<rule>...,weight_<rule>...,value_<rule>...
/// Each row is one invested month; value is the portfolio value at its end.
void write_backtest_csv(std::ostream& out, const BacktestResult& result);

void write_backtest_summary(std::ostream& out, const BacktestResult& result,
                            const SummaryStats& return_stats);

/// Self-contained SVG line chart of every rule's value path.
void write_value_svg(std::ostream& out, const BacktestResult& result);

}  // namespace judgment

#endif  // JUDGMENT_REPORT_HPP
