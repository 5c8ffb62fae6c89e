// Two-urn betting experiment for eliciting the confidence level.
//
// Urn 1 holds white and black balls (a black draw loses EUR 100); Urn 2 holds
// white and red balls (a red draw wins a utility-equivalent amount). Bet k caps
// the black balls in Urn 1 at k and guarantees at least k red balls in Urn 2,
// and corresponds to alpha = k / 100.

#ifndef JUDGMENT_ELICITATION_HPP
#define JUDGMENT_ELICITATION_HPP

#include <array>
#include <istream>
#include <ostream>
#include <stdexcept>
#include <string>

#include "judgment/normal.hpp"

namespace judgment {

inline constexpr int kBallsPerUrn = 100;

class Bet {
 public:
  /// Throws std::out_of_range unless 0 <= index <= 100.
  explicit Bet(int index);

  int index() const { return index_; }
  int urn1_black_max() const { return index_; }
  int urn2_red_min() const { return index_; }

 private:
  int index_;
};

Probability bet_to_alpha(const Bet& bet);

/// Inverse of bet_to_alpha; alpha must be a multiple of 1/100.
Bet alpha_to_bet(Probability alpha);

/// Cells (Urn 1 white, Urn 1 black, Urn 2 white, Urn 2 red) for one bet,
/// e.g. {"≥99", "≤1", "≤99", "≥1"} for bet 1.
std::array<std::string, 4> bet_table_row(const Bet& bet);

/// Full 101-row table as aligned plain text.
std::string render_bet_table();

/// Payoff explanation shown before the prompt.
std::string bet_narrative();

class ElicitationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Prints the table and narrative, reads one bet per line, and returns the
/// implied alpha. Invalid lines are re-prompted; after `max_attempts` invalid
/// answers, or at end of input, throws ElicitationError.
Probability elicit_interactive(std::istream& in, std::ostream& out, int max_attempts = 3);

}  // namespace judgment

#endif  // JUDGMENT_ELICITATION_HPP
