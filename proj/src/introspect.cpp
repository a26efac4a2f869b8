#include "beaver/introspect.hpp"

#include <algorithm>
#include <charconv>

namespace beaver {

namespace {

RunResult RequireHalt(const Machine& machine, const SimLimits& limits) {
  RunResult run = Simulate(machine, limits);
  if (!run.halted()) {
    throw Error(ErrorCode::kDoesNotHalt, FormatMachine(machine) + " did not halt within " +
                                             std::to_string(limits.max_steps) + " steps");
  }
  return run;
}

// Renames states through `rename` (old -> new, or -1 to drop). Dropped
// targets go to state 0.
Machine Relabel(const Machine& machine, const std::vector<int>& rename, int new_states) {
  std::vector<int> inverse(static_cast<std::size_t>(new_states), -1);
  for (std::size_t old = 0; old < rename.size(); ++old) {
    if (rename[old] >= 0) inverse[static_cast<std::size_t>(rename[old])] = static_cast<int>(old);
  }
  std::vector<Rule> table;
  for (int q = 0; q < new_states; ++q) {
    for (Symbol s = 0; s < machine.symbols(); ++s) {
      Rule r = machine.rule(static_cast<State>(inverse[static_cast<std::size_t>(q)]), s);
      if (!r.halts()) {
        const int target = rename[static_cast<std::size_t>(r.next)];
        r.next = static_cast<State>(target < 0 ? 0 : target);
      }
      table.push_back(r);
    }
  }
  return Machine(new_states, machine.symbols(), std::move(table));
}

class BitWriter {
 public:
  void Put(bool b) { bits_.push_back(b); }
  void PutNumber(std::uint64_t value, int width) {
    for (int i = width - 1; i >= 0; --i) Put(((value >> i) & 1U) != 0);
  }
  std::vector<bool> Take() { return std::move(bits_); }
  std::size_t size() const { return bits_.size(); }

 private:
  std::vector<bool> bits_;
};

class BitReader {
 public:
  explicit BitReader(const std::vector<bool>& bits) : bits_(bits) {}

  bool Get() {
    if (pos_ >= bits_.size()) throw Error(ErrorCode::kMalformedBits, "description truncated");
    return bits_[pos_++];
  }
  std::uint64_t GetNumber(int width) {
    std::uint64_t v = 0;
    for (int i = 0; i < width; ++i) v = (v << 1) | (Get() ? 1U : 0U);
    return v;
  }
  std::size_t position() const { return pos_; }

 private:
  const std::vector<bool>& bits_;
  std::size_t pos_ = 0;
};

int BitLength(std::uint64_t x) {
  int len = 0;
  while (x > 0) {
    ++len;
    x >>= 1;
  }
  return len;
}

std::size_t Part1Length(int states) {
  return 2 * static_cast<std::size_t>(std::max(1, BitLength(static_cast<std::uint64_t>(states - 1))));
}

}  // namespace

int CeilLog2(std::int64_t x) {
  int k = 0;
  while ((std::int64_t{1} << k) < x) ++k;
  return k;
}

int FloorLog2(std::int64_t x) { return BitLength(static_cast<std::uint64_t>(x)) - 1; }

Machine PruneUnused(const Machine& machine, const SimLimits& limits) {
  RunResult run = RequireHalt(machine, limits);
  if (static_cast<int>(run.first_visit_order.size()) == machine.states()) return machine;
  std::vector<bool> used(static_cast<std::size_t>(machine.states()), false);
  for (State q : run.first_visit_order) used[static_cast<std::size_t>(q)] = true;
  std::vector<int> rename(used.size(), -1);
  int kept = 0;
  for (std::size_t q = 0; q < used.size(); ++q) {
    if (used[q]) rename[q] = kept++;
  }
  return Relabel(machine, rename, kept);
}

NormalizedMachine NormalizeFirstVisit(const Machine& machine, const SimLimits& limits) {
  RunResult run = RequireHalt(machine, limits);
  if (static_cast<int>(run.first_visit_order.size()) != machine.states()) {
    throw Error(ErrorCode::kUnreachableState,
                std::to_string(machine.states() - static_cast<int>(run.first_visit_order.size())) +
                    " state(s) never visited; prune first");
  }
  std::vector<int> rename(static_cast<std::size_t>(machine.states()), -1);
  for (std::size_t i = 0; i < run.first_visit_order.size(); ++i) {
    rename[static_cast<std::size_t>(run.first_visit_order[i])] = static_cast<int>(i);
  }
  Machine renamed = Relabel(machine, rename, machine.states());
  RunResult witness = Simulate(renamed, limits);
  return {std::move(renamed), std::move(witness)};
}

TransitionClass ClassifyTransitions(const NormalizedMachine& nm) {
  const Machine& machine = nm.machine;
  TransitionClass cls;
  cls.states = machine.states();
  cls.symbols = machine.symbols();
  cls.kinds.assign(machine.table().size(), TransitionKind::kOrdinary);

  Simulator sim(machine);
  std::vector<bool> entered(static_cast<std::size_t>(machine.states()), false);
  entered[0] = true;
  while (!sim.halted() && sim.steps() < nm.witness.steps) {
    const Cell cell{sim.state(), sim.tape().Read()};
    const State next = machine.rule(cell).next;
    if (next == kHalt || !entered[static_cast<std::size_t>(next)]) {
      if (next != kHalt) entered[static_cast<std::size_t>(next)] = true;
      cls.kinds[static_cast<std::size_t>(cell.state) * cls.symbols + cell.symbol] =
          TransitionKind::kSpecial;
      cls.special_order.push_back(cell);
    }
    sim.Step();
  }
  return cls;
}

std::array<std::size_t, 3> PartLengths(int states, int symbols) {
  const std::size_t n = static_cast<std::size_t>(states);
  const std::size_t m = static_cast<std::size_t>(symbols);
  return {Part1Length(states), n * m * static_cast<std::size_t>(CeilLog2(symbols) + 2),
          n * (m - 1) * static_cast<std::size_t>(CeilLog2(states))};
}

DescriptionBits EncodeDescription(const NormalizedMachine& nm, const TransitionClass& cls) {
  const Machine& machine = nm.machine;
  const int n = machine.states();
  const int m = machine.symbols();
  if (cls.states != n || cls.symbols != m || cls.special_count() != n) {
    throw Error(ErrorCode::kInconsistentClassification,
                std::to_string(cls.special_count()) + " special rules for " + std::to_string(n) +
                    " states");
  }
  for (int j = 0; j < n; ++j) {
    const State target = machine.rule(cls.special_order[static_cast<std::size_t>(j)]).next;
    const State expected = j + 1 < n ? static_cast<State>(j + 1) : kHalt;
    if (target != expected) {
      throw Error(ErrorCode::kInconsistentClassification,
                  "special rule " + std::to_string(j) + " targets " + StateLetter(target) +
                      ", expected " + StateLetter(expected));
    }
  }

  // Ordinary cells: first use in the run, then the never-used ones.
  std::vector<Cell> ordinary;
  std::vector<bool> listed(machine.table().size(), false);
  Simulator sim(machine);
  while (!sim.halted()) {
    const Cell cell{sim.state(), sim.tape().Read()};
    const std::size_t idx = static_cast<std::size_t>(cell.state) * m + cell.symbol;
    if (!cls.special(cell) && !listed[idx]) {
      listed[idx] = true;
      ordinary.push_back(cell);
    }
    sim.Step();
  }
  for (State q = 0; q < n; ++q) {
    for (Symbol s = 0; s < m; ++s) {
      const std::size_t idx = static_cast<std::size_t>(q) * m + s;
      if (!cls.special({q, s}) && !listed[idx]) ordinary.push_back({q, s});
    }
  }

  BitWriter out;
  const int len = std::max(1, BitLength(static_cast<std::uint64_t>(n - 1)));
  for (int i = 0; i < len - 1; ++i) out.Put(true);
  out.Put(false);
  out.PutNumber(static_cast<std::uint64_t>(n - 1), len);
  const std::size_t len1 = out.size();

  const int symbol_width = CeilLog2(m);
  for (State q = 0; q < n; ++q) {
    for (Symbol s = 0; s < m; ++s) {
      const Rule& r = machine.rule(q, s);
      out.PutNumber(r.write, symbol_width);
      out.Put(r.move == Direction::kRight);
      out.Put(cls.special({q, s}));
    }
  }
  const std::size_t len2 = out.size() - len1;

  const int state_width = CeilLog2(n);
  for (const Cell& cell : ordinary) {
    const Rule& r = machine.rule(cell);
    // Unused halting rules are described as jumps to state A.
    out.PutNumber(r.halts() ? 0 : static_cast<std::uint64_t>(r.next), state_width);
  }
  const std::size_t len3 = out.size() - len1 - len2;
  return {out.Take(), {len1, len2, len3}};
}

Machine DecodeDescription(const DescriptionBits& desc, int symbols, const SimLimits& limits) {
  if (symbols < 2) throw Error(ErrorCode::kMalformedBits, "need at least 2 symbols");
  BitReader in(desc.bits);
  int len = 1;
  while (in.Get()) {
    if (++len > 8) throw Error(ErrorCode::kMalformedBits, "state count prefix too long");
  }
  const std::uint64_t n_minus_1 = in.GetNumber(len);
  if (n_minus_1 + 1 > static_cast<std::uint64_t>(kMaxStates)) {
    throw Error(ErrorCode::kMalformedBits, "state count " + std::to_string(n_minus_1 + 1));
  }
  const int n = static_cast<int>(n_minus_1) + 1;
  const int m = symbols;
  const auto expected = PartLengths(n, m);
  if (in.position() != expected[0] || desc.part_lengths != expected ||
      desc.bits.size() != expected[0] + expected[1] + expected[2]) {
    throw Error(ErrorCode::kMalformedBits, "length does not match " + std::to_string(n) +
                                               " states and " + std::to_string(m) + " symbols");
  }

  const int symbol_width = CeilLog2(m);
  std::vector<Rule> table;
  std::vector<bool> special;
  for (int q = 0; q < n; ++q) {
    for (int s = 0; s < m; ++s) {
      const std::uint64_t write = in.GetNumber(symbol_width);
      if (write >= static_cast<std::uint64_t>(m)) {
        throw Error(ErrorCode::kMalformedBits, "write symbol " + std::to_string(write));
      }
      const Direction dir = in.Get() ? Direction::kRight : Direction::kLeft;
      special.push_back(in.Get());
      table.push_back(Rule{static_cast<Symbol>(write), dir, 0});
    }
  }
  if (std::count(special.begin(), special.end(), true) != n) {
    throw Error(ErrorCode::kMalformedBits, "special flag count differs from state count");
  }
  const int state_width = CeilLog2(n);
  std::vector<State> destinations;
  for (int i = 0; i < n * (m - 1); ++i) {
    const std::uint64_t d = in.GetNumber(state_width);
    if (d >= static_cast<std::uint64_t>(n)) {
      throw Error(ErrorCode::kMalformedBits, "destination " + std::to_string(d));
    }
    destinations.push_back(static_cast<State>(d));
  }

  // Replay: targets are fixed the first time each cell fires.
  std::vector<bool> resolved(table.size(), false);
  std::size_t next_destination = 0;
  int entered = 1;
  Tape tape;
  State state = 0;
  std::int64_t steps = 0;
  while (state != kHalt) {
    if (steps >= limits.max_steps) {
      throw Error(ErrorCode::kReplayDivergence,
                  "replay exceeded " + std::to_string(limits.max_steps) + " steps");
    }
    const std::size_t idx = static_cast<std::size_t>(state) * m + tape.Read();
    Rule& r = table[idx];
    if (!resolved[idx]) {
      resolved[idx] = true;
      if (special[idx]) {
        // Special targets resolve in increasing order; the last one halts.
        r.next = entered < n ? static_cast<State>(entered++) : kHalt;
      } else {
        r.next = destinations[next_destination++];
      }
    }
    tape.Write(r.write);
    tape.Move(r.move);
    state = r.next;
    ++steps;
  }
  for (std::size_t idx = 0; idx < table.size(); ++idx) {
    if (resolved[idx]) continue;
    if (special[idx]) throw Error(ErrorCode::kMalformedBits, "special rule never fired");
    table[idx].next = destinations[next_destination++];
  }
  return Machine(n, m, std::move(table));
}

std::string SerializeBits(const DescriptionBits& desc) {
  static constexpr char kHex[] = "0123456789abcdef";
  std::string out = std::to_string(desc.part_lengths[0]) + "," +
                    std::to_string(desc.part_lengths[1]) + "," +
                    std::to_string(desc.part_lengths[2]) + ":";
  for (std::size_t i = 0; i < desc.bits.size(); i += 4) {
    int nibble = 0;
    for (std::size_t j = 0; j < 4; ++j) {
      nibble = (nibble << 1) | (i + j < desc.bits.size() && desc.bits[i + j] ? 1 : 0);
    }
    out.push_back(kHex[nibble]);
  }
  return out;
}

DescriptionBits ParseBits(std::string_view text) {
  auto bad = [&](const std::string& why) {
    return Error(ErrorCode::kMalformedBits, why + " in '" + std::string(text) + "'");
  };
  const std::size_t colon = text.find(':');
  if (colon == std::string_view::npos) throw bad("missing ':'");
  DescriptionBits desc;
  std::string_view header = text.substr(0, colon);
  for (std::size_t part = 0; part < 3; ++part) {
    const std::size_t comma = header.find(',');
    if ((part < 2) == (comma == std::string_view::npos)) throw bad("expected three lengths");
    std::string_view field = header.substr(0, comma);
    auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), desc.part_lengths[part]);
    if (ec != std::errc() || ptr != field.data() + field.size() || field.empty()) {
      throw bad("bad length");
    }
    if (part < 2) header.remove_prefix(comma + 1);
  }
  const std::size_t total = desc.part_lengths[0] + desc.part_lengths[1] + desc.part_lengths[2];
  std::string_view hex = text.substr(colon + 1);
  if (hex.size() != (total + 3) / 4) throw bad("hex length does not match part lengths");
  for (char c : hex) {
    int v;
    if (c >= '0' && c <= '9') {
      v = c - '0';
    } else if (c >= 'a' && c <= 'f') {
      v = c - 'a' + 10;
    } else {
      throw bad("bad hex digit");
    }
    for (int j = 3; j >= 0; --j) desc.bits.push_back(((v >> j) & 1) != 0);
  }
  desc.bits.resize(total);
  return desc;
}

std::int64_t DescriptionLengthBound(std::int64_t states, int symbols, std::int64_t c) {
  const std::int64_t lg = CeilLog2(states);
  return states * symbols * lg - states * lg + c * states;
}

std::int64_t RequiredConstant(std::size_t length, int states, int symbols) {
  const std::int64_t fixed = DescriptionLengthBound(states, symbols, 0);
  const std::int64_t rest = static_cast<std::int64_t>(length) - fixed;
  // Ceiling division that also handles a negative remainder.
  return rest >= 0 ? (rest + states - 1) / states : -((-rest) / states);
}

bool CapacityCheck(std::int64_t states, const BoundParams& params) {
  if (states <= params.d) {
    throw Error(ErrorCode::kUnderflow, "n=" + std::to_string(states) +
                                           " does not exceed d=" + std::to_string(params.d));
  }
  const std::int64_t rom = states - params.d;
  return rom * params.symbols * FloorLog2(rom) >=
         DescriptionLengthBound(states, params.symbols, params.c);
}

std::optional<std::int64_t> CapacityThreshold(const BoundParams& params, std::int64_t scan_limit) {
  std::optional<std::int64_t> threshold;
  for (std::int64_t n = scan_limit; n > std::max<std::int64_t>(params.d, 1); --n) {
    if (!CapacityCheck(n, params)) break;
    threshold = n;
  }
  return threshold;
}

}  // namespace beaver
