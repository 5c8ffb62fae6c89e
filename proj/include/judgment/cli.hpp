// Command-line front end: decide | risk | backtest | synth | elicit.

#ifndef JUDGMENT_CLI_HPP
#define JUDGMENT_CLI_HPP

#include <iosfwd>
#include <string>
#include <vector>

#include "judgment/risk_lab.hpp"

namespace judgment {

namespace exit_code {
inline constexpr int kOk = 0;
inline constexpr int kBoundViolation = 1;
inline constexpr int kUsage = 2;
inline constexpr int kData = 3;
inline constexpr int kNumerical = 4;
}  // namespace exit_code

const char* version();

/// Rule syntax: judgment[:alpha] | ml | bayes[:mean:var] | fixed[:action].
/// Bare "judgment" and "fixed" take their parameters from `base`.
RuleSpec parse_rule(const std::string& text, const Judgment& base);
std::vector<RuleSpec> parse_rule_list(const std::string& text, const Judgment& base);

/// Runs the CLI on `args` (args[0] is the program name) and returns the exit code.
int run_cli(const std::vector<std::string>& args, std::istream& in, std::ostream& out,
            std::ostream& err);

}  // namespace judgment

#endif  // JUDGMENT_CLI_HPP
