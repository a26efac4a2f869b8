#include "beaver/machine.hpp"

#include <cctype>
#include <charconv>

namespace beaver {

const char* ErrorCodeName(ErrorCode code) {
  switch (code) {
    case ErrorCode::kMalformedText: return "MalformedText";
    case ErrorCode::kStateOutOfRange: return "StateOutOfRange";
    case ErrorCode::kSymbolOutOfRange: return "SymbolOutOfRange";
    case ErrorCode::kDoesNotHalt: return "DoesNotHalt";
    case ErrorCode::kNotBinary: return "NotBinary";
    case ErrorCode::kTooFewStates: return "TooFewStates";
    case ErrorCode::kNotChampion: return "NotChampion";
    case ErrorCode::kConversionOverflow: return "ConversionOverflow";
    case ErrorCode::kClaimViolated: return "ClaimViolated";
    case ErrorCode::kMalformedBits: return "MalformedBits";
    case ErrorCode::kReplayDivergence: return "ReplayDivergence";
    case ErrorCode::kInconsistentClassification: return "InconsistentClassification";
    case ErrorCode::kUnreachableState: return "UnreachableState";
    case ErrorCode::kUnderflow: return "Underflow";
    case ErrorCode::kSpaceTooLarge: return "SpaceTooLarge";
  }
  return "Unknown";
}

Machine::Machine(int states, int symbols, std::vector<Rule> table)
    : states_(states), symbols_(symbols), table_(std::move(table)) {
  if (states_ < 1 || states_ > kMaxStates) {
    throw Error(ErrorCode::kStateOutOfRange,
                "state count " + std::to_string(states_) + " outside 1.." +
                    std::to_string(kMaxStates));
  }
  if (symbols_ < 2 || symbols_ > kMaxSymbols) {
    throw Error(ErrorCode::kSymbolOutOfRange,
                "symbol count " + std::to_string(symbols_) + " outside 2.." +
                    std::to_string(kMaxSymbols));
  }
  if (table_.size() != static_cast<std::size_t>(states_) * symbols_) {
    throw Error(ErrorCode::kMalformedText, "incomplete transition table");
  }
  for (const Rule& r : table_) Validate(r);
}

Machine Machine::AllHalt(int states, int symbols) {
  std::vector<Rule> table(static_cast<std::size_t>(states) * symbols,
                          Rule{1, Direction::kRight, kHalt});
  return Machine(states, symbols, std::move(table));
}

void Machine::set_rule(State q, Symbol s, Rule r) {
  if (q < 0 || q >= states_) {
    throw Error(ErrorCode::kStateOutOfRange, "no state " + std::to_string(q));
  }
  if (s >= symbols_) {
    throw Error(ErrorCode::kSymbolOutOfRange, "no symbol " + std::to_string(s));
  }
  Validate(r);
  table_[Index(q, s)] = r;
}

void Machine::Validate(const Rule& r) const {
  if (r.write >= symbols_) {
    throw Error(ErrorCode::kSymbolOutOfRange,
                "write symbol " + std::to_string(r.write) + " >= " +
                    std::to_string(symbols_));
  }
  if (r.next != kHalt && (r.next < 0 || r.next >= states_)) {
    throw Error(ErrorCode::kStateOutOfRange,
                "target state " + std::to_string(r.next + 1) + " > " +
                    std::to_string(states_));
  }
}

char StateLetter(State q) {
  return q == kHalt ? 'Z' : static_cast<char>('A' + q);
}

std::string FormatRule(const Rule& rule, bool extended) {
  std::string out;
  if (extended) {
    out = std::to_string(rule.write);
  } else {
    out.push_back(static_cast<char>('0' + rule.write));
  }
  out.push_back(rule.move == Direction::kLeft ? 'L' : 'R');
  out.push_back(StateLetter(rule.next));
  return out;
}

bool UsesExtendedFormat(const Machine& machine) {
  return machine.symbols() > kMaxCompactSymbols;
}

std::string FormatMachine(const Machine& machine) {
  const bool extended = UsesExtendedFormat(machine);
  std::string out;
  for (State q = 0; q < machine.states(); ++q) {
    if (q > 0) out.push_back('_');
    for (Symbol s = 0; s < machine.symbols(); ++s) {
      if (extended && s > 0) out.push_back(';');
      out += FormatRule(machine.rule(q, s), extended);
    }
  }
  return out;
}

namespace {

struct RawRule {
  int write;
  Direction move;
  int next;  // 0-based, -1 for halt
};

std::vector<std::string_view> Split(std::string_view text, char sep) {
  std::vector<std::string_view> parts;
  std::size_t start = 0;
  while (true) {
    std::size_t pos = text.find(sep, start);
    parts.push_back(text.substr(start, pos - start));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return parts;
}

[[noreturn]] void Malformed(const std::string& why) {
  throw Error(ErrorCode::kMalformedText, why);
}

Direction ParseDirection(char c) {
  if (c == 'L') return Direction::kLeft;
  if (c == 'R') return Direction::kRight;
  Malformed(std::string("bad direction '") + c + "'");
}

int ParseStateLetter(char c) {
  if (c == 'Z') return -1;
  if (c < 'A' || c > 'Y') Malformed(std::string("bad state letter '") + c + "'");
  return c - 'A';
}

RawRule ParseExtendedRule(std::string_view text) {
  if (text.size() < 3) Malformed("rule '" + std::string(text) + "' too short");
  std::string_view digits = text.substr(0, text.size() - 2);
  int write = 0;
  auto [ptr, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), write);
  if (ec != std::errc() || ptr != digits.data() + digits.size() ||
      !std::isdigit(static_cast<unsigned char>(digits.front()))) {
    Malformed("bad symbol '" + std::string(digits) + "'");
  }
  return {write, ParseDirection(text[text.size() - 2]),
          ParseStateLetter(text.back())};
}

}  // namespace

Machine ParseMachine(std::string_view text) {
  if (text.empty()) Malformed("empty machine text");
  const bool extended = text.find(';') != std::string_view::npos;
  std::vector<std::string_view> rows = Split(text, '_');
  if (rows.size() > static_cast<std::size_t>(kMaxStates)) {
    Malformed("more than " + std::to_string(kMaxStates) + " states");
  }

  std::vector<std::vector<RawRule>> parsed;
  for (std::string_view row : rows) {
    std::vector<RawRule> rules;
    if (extended) {
      for (std::string_view r : Split(row, ';')) rules.push_back(ParseExtendedRule(r));
    } else {
      if (row.empty() || row.size() % 3 != 0) {
        Malformed("row '" + std::string(row) + "' is not a sequence of 3-character rules");
      }
      for (std::size_t i = 0; i < row.size(); i += 3) {
        char w = row[i];
        if (w < '0' || w > '9') Malformed(std::string("bad symbol '") + w + "'");
        rules.push_back({w - '0', ParseDirection(row[i + 1]), ParseStateLetter(row[i + 2])});
      }
    }
    if (!parsed.empty() && rules.size() != parsed.front().size()) {
      Malformed("rows have different lengths");
    }
    parsed.push_back(std::move(rules));
  }

  const int n = static_cast<int>(parsed.size());
  const int m = static_cast<int>(parsed.front().size());
  if (m < 2) Malformed("fewer than 2 symbols");
  if (!extended && m > kMaxCompactSymbols) Malformed("compact format allows at most 10 symbols");
  if (m > kMaxSymbols) Malformed("too many symbols");

  std::vector<Rule> table;
  table.reserve(static_cast<std::size_t>(n) * m);
  for (const auto& row : parsed) {
    for (const RawRule& r : row) {
      if (r.write >= m) {
        throw Error(ErrorCode::kSymbolOutOfRange,
                    "symbol " + std::to_string(r.write) + " with only " +
                        std::to_string(m) + " symbols");
      }
      if (r.next >= n) {
        throw Error(ErrorCode::kStateOutOfRange,
                    std::string("state ") + StateLetter(static_cast<State>(r.next)) +
                        " with only " + std::to_string(n) + " states");
      }
      table.push_back({static_cast<Symbol>(r.write), r.move, static_cast<State>(r.next)});
    }
  }
  return Machine(n, m, std::move(table));
}

Machine Mirror(const Machine& machine) {
  std::vector<Rule> table = machine.table();
  for (Rule& r : table) r.move = Opposite(r.move);
  return Machine(machine.states(), machine.symbols(), std::move(table));
}

int CountHalting(const Machine& machine) {
  int count = 0;
  for (const Rule& r : machine.table()) count += r.halts() ? 1 : 0;
  return count;
}

}  // namespace beaver
