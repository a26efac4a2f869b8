#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace beaver {

enum class ErrorCode {
  kMalformedText,
  kStateOutOfRange,
  kSymbolOutOfRange,
  kDoesNotHalt,
  kNotBinary,
  kTooFewStates,
  kNotChampion,
  kConversionOverflow,
  kClaimViolated,
  kMalformedBits,
  kReplayDivergence,
  kInconsistentClassification,
  kUnreachableState,
  kUnderflow,
  kSpaceTooLarge,
};

const char* ErrorCodeName(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(ErrorCodeName(code)) + ": " + what),
        code_(code) {}

  ErrorCode code() const { return code_; }

 private:
  ErrorCode code_;
};

enum class Direction : std::uint8_t { kLeft, kRight };

inline Direction Opposite(Direction d) {
  return d == Direction::kLeft ? Direction::kRight : Direction::kLeft;
}

inline int Delta(Direction d) { return d == Direction::kLeft ? -1 : 1; }

// Tape symbol. 0 is the blank.
using Symbol = std::uint16_t;

// Zero-based state index; kHalt marks the halting state (n+1 in 1-based terms).
using State = std::int16_t;
inline constexpr State kHalt = -1;

struct Rule {
  Symbol write = 0;
  Direction move = Direction::kRight;
  State next = kHalt;

  bool halts() const { return next == kHalt; }
  friend bool operator==(const Rule&, const Rule&) = default;
};

// Cell of the transition table addressed by (state, read symbol).
struct Cell {
  State state = 0;
  Symbol symbol = 0;
  friend bool operator==(const Cell&, const Cell&) = default;
  friend auto operator<=>(const Cell&, const Cell&) = default;
};

// Compact text format supports letters A..Y for states and digits for symbols.
inline constexpr int kMaxStates = 25;
inline constexpr int kMaxCompactSymbols = 10;
// Extended format (decimal symbols, ';'-joined rules) is capped here.
inline constexpr int kMaxSymbols = 1024;

// Complete n-state, m-symbol quintuple transition table.
class Machine {
 public:
  // Throws Error on any out-of-range field or a table of the wrong size.
  Machine(int states, int symbols, std::vector<Rule> table);

  // Every cell (1RZ) halts.
  static Machine AllHalt(int states, int symbols);

  int states() const { return states_; }
  int symbols() const { return symbols_; }

  const Rule& rule(State q, Symbol s) const { return table_[Index(q, s)]; }
  const Rule& rule(Cell c) const { return rule(c.state, c.symbol); }
  void set_rule(State q, Symbol s, Rule r);
  void set_rule(Cell c, Rule r) { set_rule(c.state, c.symbol, r); }

  const std::vector<Rule>& table() const { return table_; }

  friend bool operator==(const Machine&, const Machine&) = default;

 private:
  std::size_t Index(State q, Symbol s) const {
    return static_cast<std::size_t>(q) * symbols_ + s;
  }
  void Validate(const Rule& r) const;

  int states_;
  int symbols_;
  std::vector<Rule> table_;
};

// Parses "1RB1LB_1LA1RZ" (compact) or "12RA;0LB;..._..." (extended).
Machine ParseMachine(std::string_view text);

// Compact form when symbols() <= 10, extended form otherwise.
std::string FormatMachine(const Machine& machine);
bool UsesExtendedFormat(const Machine& machine);

std::string FormatRule(const Rule& rule, bool extended = false);
char StateLetter(State q);

Machine Mirror(const Machine& machine);

int CountHalting(const Machine& machine);

}  // namespace beaver
