#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "beaver/machine.hpp"
#include "beaver/simulator.hpp"

namespace beaver {

// A halting machine whose blank-tape run visits every state, new states
// appearing in increasing order.
struct NormalizedMachine {
  Machine machine;
  RunResult witness;
};

// Drops states that never occur in the blank-tape run; rules into a dropped
// state are redirected to state A. Throws kDoesNotHalt.
Machine PruneUnused(const Machine& machine, const SimLimits& limits);

// Renames states by first visit. Throws kDoesNotHalt or kUnreachableState.
NormalizedMachine NormalizeFirstVisit(const Machine& machine, const SimLimits& limits);

enum class TransitionKind : std::uint8_t { kOrdinary, kSpecial };

// A rule is special when following it enters a state (or the halt state)
// for the first time.
struct TransitionClass {
  int states = 0;
  int symbols = 0;
  std::vector<TransitionKind> kinds;  // state-major
  std::vector<Cell> special_order;    // in firing order

  bool special(Cell c) const {
    return kinds[static_cast<std::size_t>(c.state) * symbols + c.symbol] ==
           TransitionKind::kSpecial;
  }
  int special_count() const { return static_cast<int>(special_order.size()); }
};

TransitionClass ClassifyTransitions(const NormalizedMachine& nm);

struct DescriptionBits {
  std::vector<bool> bits;
  std::array<std::size_t, 3> part_lengths{};

  std::size_t size() const { return bits.size(); }
};

int CeilLog2(std::int64_t x);
int FloorLog2(std::int64_t x);

// Part 2 and 3 lengths fixed by (n, m); part 1 is 2 * max(1, bitlen(n-1)).
std::array<std::size_t, 3> PartLengths(int states, int symbols);

// Part 1: n-1 self-delimited (unary length prefix, then binary).
// Part 2: per state and symbol, the written symbol, direction and special flag.
// Part 3: targets of ordinary rules, run order first, then unused cells.
DescriptionBits EncodeDescription(const NormalizedMachine& nm, const TransitionClass& cls);

// Rebuilds the table, resolving special targets by replaying the blank-tape
// run. Throws kMalformedBits or kReplayDivergence.
Machine DecodeDescription(const DescriptionBits& bits, int symbols, const SimLimits& limits);

// "len1,len2,len3:" followed by the bits as hex, most significant bit first.
std::string SerializeBits(const DescriptionBits& bits);
DescriptionBits ParseBits(std::string_view text);

// n*m*ceil(log2 n) - n*ceil(log2 n) + c*n.
std::int64_t DescriptionLengthBound(std::int64_t states, int symbols, std::int64_t c);

// Smallest integer c for which a description of `length` bits fits the bound.
std::int64_t RequiredConstant(std::size_t length, int states, int symbols);

struct BoundParams {
  int symbols = 2;
  int halting = 1;  // k; carried for reporting only
  std::int64_t c = 1;
  std::int64_t d = 0;  // overhead states of the extractor and interpreter
};

// (n-d)*m*floor(log2(n-d)) >= DescriptionLengthBound(n, m, c). Throws kUnderflow when n <= d.
bool CapacityCheck(std::int64_t states, const BoundParams& params);

// Least n in (d, scan_limit] from which CapacityCheck holds through scan_limit.
std::optional<std::int64_t> CapacityThreshold(const BoundParams& params, std::int64_t scan_limit);

}  // namespace beaver
