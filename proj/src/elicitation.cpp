#include "judgment/elicitation.hpp"

#include <cmath>
#include <sstream>

namespace judgment {

Bet::Bet(int index) : index_(index) {
  if (index < 0 || index > kBallsPerUrn) {
    throw std::out_of_range("bet must be between 0 and 100, got " + std::to_string(index));
  }
}

Probability bet_to_alpha(const Bet& bet) {
  return Probability(static_cast<double>(bet.index()) / kBallsPerUrn);
}

Bet alpha_to_bet(Probability alpha) {
  const long k = std::lround(alpha.value() * kBallsPerUrn);
  if (static_cast<double>(k) / kBallsPerUrn != alpha.value()) {
    throw std::invalid_argument("alpha is not a whole number of balls out of 100");
  }
  return Bet(static_cast<int>(k));
}

std::array<std::string, 4> bet_table_row(const Bet& bet) {
  const int k = bet.index();
  const std::string small = std::to_string(k);
  const std::string large = std::to_string(kBallsPerUrn - k);
  if (k == 0 || k == kBallsPerUrn) return {large, small, large, small};
  return {"≥" + large, "≤" + small, "≤" + large, "≥" + small};
}

namespace {

// Pads by code points so the UTF-8 inequality signs count as one column.
std::string pad(const std::string& s, std::size_t width) {
  std::size_t columns = 0;
  for (unsigned char c : s) columns += (c & 0xC0) != 0x80 ? 1 : 0;
  return std::string(width > columns ? width - columns : 0, ' ') + s;
}

}  // namespace

std::string render_bet_table() {
  std::ostringstream os;
  os << "        |     Urn 1     |     Urn 2     \n"
     << "    Bet | White | Black | White |  Red  \n"
     << "--------+-------+-------+-------+-------\n";
  for (int k = 0; k <= kBallsPerUrn; ++k) {
    const auto cells = bet_table_row(Bet(k));
    os << pad(std::to_string(k), 7) << " |";
    for (std::size_t i = 0; i < cells.size(); ++i) {
      os << pad(cells[i], 6) << (i + 1 < cells.size() ? " |" : "\n");
    }
  }
  return os.str();
}

std::string bet_narrative() {
  return "Two urns hold 100 balls each. Urn 1 has white and black balls, Urn 2 has\n"
         "white and red balls. You will face one of the two urns, and nobody can\n"
         "tell you which one or with what probability.\n"
         "  black ball: you lose EUR 100\n"
         "  red ball:   you win the euro amount whose utility gain equals the\n"
         "              utility loss of losing EUR 100\n"
         "  white ball: nothing happens\n"
         "Bet k guarantees that Urn 1 holds at most k black balls and that Urn 2\n"
         "holds at least k red balls. Bet 0 means not taking part at all.\n";
}

Probability elicit_interactive(std::istream& in, std::ostream& out, int max_attempts) {
  out << render_bet_table() << '\n' << bet_narrative() << '\n';
  for (int attempt = 1; attempt <= max_attempts; ++attempt) {
    out << "Choose a bet (0-100): " << std::flush;
    std::string line;
    if (!std::getline(in, line)) throw ElicitationError("input ended before a bet was chosen");

    std::istringstream parse(line);
    int k = -1;
    std::string rest;
    if (parse >> k && !(parse >> rest) && k >= 0 && k <= kBallsPerUrn) {
      const Probability alpha = bet_to_alpha(Bet(k));
      out << "\nBet " << k << " corresponds to alpha = " << alpha.value() << '\n';
      return alpha;
    }
    out << "Invalid bet '" << line << "': enter a whole number from 0 to 100.\n";
  }
  throw ElicitationError("no valid bet after " + std::to_string(max_attempts) + " attempts");
}

}  // namespace judgment
