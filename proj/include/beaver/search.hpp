#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "beaver/machine.hpp"
#include "beaver/simulator.hpp"

namespace beaver {

// Default cap on the estimated raw machine count (2m(n+1))^(nm). Admits
// (4,2) and (2,3); rejects (5,2), (3,3), (2,4).
inline constexpr double kDefaultClassCeiling = 1e11;

struct SearchSpace {
  int states = 2;
  int symbols = 2;
  SimLimits limits;
  // Non-halt deciders. The cycle decider is exact-repeat only.
  bool cycle_decider = true;
  bool halt_reachability_decider = true;
  double class_ceiling = kDefaultClassCeiling;
};

// Cutoffs used when none is given: 10^4 for n <= 3, 10^5 above.
std::int64_t DefaultCutoff(int states, int symbols);
SearchSpace MakeSpace(int states, int symbols);

double EstimateClassCount(int states, int symbols);
// Throws kSpaceTooLarge when the estimate exceeds the space's ceiling.
void CheckGuard(const SearchSpace& space);

enum class Decision { kHalted, kCycler, kUndecided };
enum class NonHaltProof {
  kNone,
  kConfigurationRepeat,
  kBlankRunaway,
  kRepeatOrRunaway,  // from Simulate, which does not say which one fired
  kHaltUnreachable,
};
const char* DecisionName(Decision d);

struct DecideResult {
  Decision decision = Decision::kUndecided;
  std::int64_t steps = 0;
  std::int64_t nonblank = 0;
  NonHaltProof proof = NonHaltProof::kNone;
};

DecideResult Decide(const Machine& machine, const SearchSpace& space);

// One tree-normal-form representative. Cells never reached in the run are
// left undefined in `partial` ("---") and filled with 1RZ in `machine`.
struct Leaf {
  Machine machine;
  std::string partial;
  DecideResult result;
};

// Visits every representative in a fixed depth-first order.
void EnumerateTnf(const SearchSpace& space, const std::function<void(const Leaf&)>& visit);

// Convenience: complete machines of every Halted leaf.
std::vector<Machine> HaltingMachines(const SearchSpace& space);

struct Champion {
  std::string machine;
  std::int64_t steps = 0;
  std::int64_t nonblank = 0;

  friend bool operator==(const Champion&, const Champion&) = default;
  friend auto operator<=>(const Champion&, const Champion&) = default;
};

struct SearchReport {
  int states = 0;
  int symbols = 0;
  std::int64_t cutoff = 0;
  std::int64_t sigma = 0;
  std::int64_t s_max = 0;
  // Sorted by machine string.
  std::vector<Champion> sigma_champions;
  std::vector<Champion> s_champions;
  std::int64_t halted = 0;
  std::int64_t cycler = 0;
  std::int64_t undecided = 0;
  // Subsets of `cycler` proven other than by exact repetition.
  std::int64_t halt_unreachable = 0;
  std::int64_t blank_runaway = 0;

  friend bool operator==(const SearchReport&, const SearchReport&) = default;
};

struct SearchOptions {
  int workers = 1;
  // Subtrees rooted at this many defined cells become independent work items.
  int split_depth = 4;
};

SearchReport Search(const SearchSpace& space, const SearchOptions& options = {});

std::string FormatReport(const SearchReport& report);

// S(n,m) > n over the searched space.
bool CheckLemma2(const SearchReport& report);

struct Lemma3Result {
  bool holds = true;
  std::int64_t checked = 0;
  std::int64_t halting = 0;
  std::vector<std::string> counterexamples;
};

// Brute force over machines whose blank-symbol rules all move one way.
Lemma3Result CheckLemma3(int states, int symbols, const SimLimits& limits);

// Largest productivity among machines attaining s_max.
std::int64_t ActivityProductivityGap(const SearchReport& report);

}  // namespace beaver
