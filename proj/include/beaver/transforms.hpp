#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "beaver/machine.hpp"
#include "beaver/search.hpp"
#include "beaver/simulator.hpp"

namespace beaver {

struct Scores {
  std::int64_t steps = 0;
  std::int64_t nonblank = 0;
};

struct TransformReport {
  std::string kind;
  Scores input_scores;
  Scores output_scores;
  bool input_halted = false;
  bool output_halted = false;
  int states_before = 0;
  int states_after = 0;
  int symbols_before = 0;
  int symbols_after = 0;
  int halting_before = 0;
  int halting_after = 0;
  // Both machines were simulated and the output scores come from that run.
  bool checked = false;
  // Output machine string needs the extended (>10 symbol) format.
  bool extended_format = false;
  // Championship was asserted by the caller rather than checked.
  bool champion_assumed = false;
  // Free-form detail, e.g. which construction case fired.
  std::string note;

  std::int64_t activity_gain() const { return output_scores.steps - input_scores.steps; }
};

std::string FormatTransformReport(const TransformReport& report);

enum class Relation { kAny, kGreater, kGreaterOrEqual, kEqual };

struct Claims {
  Relation activity = Relation::kAny;
  Relation productivity = Relation::kAny;
  // If non-empty, output steps - input steps must be one of these.
  std::vector<std::int64_t> activity_deltas;
  std::optional<std::int64_t> productivity_delta;
  bool halting_count_preserved = false;
  bool output_halts = true;
};

// Carries both runs when a claimed inequality fails.
class ClaimViolation : public Error {
 public:
  ClaimViolation(const std::string& what, TransformReport report, RunResult input,
                 RunResult output)
      : Error(ErrorCode::kClaimViolated, what),
        report_(std::move(report)),
        input_(std::move(input)),
        output_(std::move(output)) {}

  const TransformReport& report() const { return report_; }
  const RunResult& input_run() const { return input_; }
  const RunResult& output_run() const { return output_; }

 private:
  TransformReport report_;
  RunResult input_;
  RunResult output_;
};

// Simulates both machines and checks the claims. `output_limits` defaults to
// `limits`; constructions that slow the run down pass a larger budget.
TransformReport VerifyTransform(const Machine& input, const Machine& output, const Claims& claims,
                                const SimLimits& limits,
                                std::optional<SimLimits> output_limits = std::nullopt);

struct TransformResult {
  Machine machine;
  TransformReport report;
};

// One extra state that skips non-blanks to the right and writes 1 on the
// first blank. Only the halting rule used on the blank tape is redirected.
TransformResult AddState(const Machine& machine, const SimLimits& limits);

// Evidence that a binary machine has maximal activity in its space.
struct ChampionshipEvidence {
  int states = 0;
  int symbols = 0;
  std::optional<std::int64_t> s_max;
  bool assume = false;

  static ChampionshipEvidence FromReport(const SearchReport& report);
  static ChampionshipEvidence Assumed();
};

// Three-symbol machine with activity one or two above a binary champion.
TransformResult AddThirdSymbol(const Machine& machine, const ChampionshipEvidence& evidence,
                               const SimLimits& limits);

// Projection of the tripled alphabet [a, a_L, a_R] onto base symbols.
struct Homomorphism {
  int base_symbols = 2;
  Symbol operator()(Symbol s) const { return static_cast<Symbol>(s % base_symbols); }
};

struct TripleResult {
  Machine machine;
  TransformReport report;
  Homomorphism h;
};

// Marks each written symbol with the side the head leaves it on; marked cells
// bounce the head back once. With `require_halt`, a non-halting input is an error.
TripleResult TripleAlphabet(const Machine& machine, const SimLimits& limits,
                            bool require_halt = false);

struct LockstepResult {
  bool ok = true;
  std::int64_t matched_steps = 0;
  std::string failure;
};

// Runs input and tripled output side by side; before each input step the
// output must sit on the same cell in the same state with h(output tape)
// equal to the input tape.
LockstepResult CheckLockstep(const Machine& input, const Machine& tripled, const Homomorphism& h,
                             std::int64_t max_input_steps);

// Symbol bound 4m(n+1)+m for the two-state conversion of an (n,m) machine.
int TwoStateSymbolBound(int states, int symbols);

// AddState, then a two-state simulation whose symbols carry the simulated
// state between neighbouring cells by counting.
TransformResult ToTwoState(const Machine& machine, const SimLimits& limits);

}  // namespace beaver
