#include <optional>

#include "beaver/transforms.hpp"

namespace beaver {

ChampionshipEvidence ChampionshipEvidence::FromReport(const SearchReport& report) {
  ChampionshipEvidence e;
  e.states = report.states;
  e.symbols = report.symbols;
  e.s_max = report.s_max;
  return e;
}

ChampionshipEvidence ChampionshipEvidence::Assumed() {
  ChampionshipEvidence e;
  e.assume = true;
  return e;
}

namespace {

constexpr Symbol kNew = 2;

// Lowest state t whose rule on `read` moves `dir`, skipping the cell being
// rewritten.
std::optional<State> LowestMoving(const Machine& m, Symbol read, Direction dir, Cell skip) {
  for (State t = 0; t < m.states(); ++t) {
    if (Cell{t, read} == skip) continue;
    if (m.rule(t, read).move == dir) return t;
  }
  return std::nullopt;
}

}  // namespace

TransformResult AddThirdSymbol(const Machine& input, const ChampionshipEvidence& evidence,
                               const SimLimits& limits) {
  if (input.symbols() != 2) {
    throw Error(ErrorCode::kNotBinary, "expected 2 symbols, got " + std::to_string(input.symbols()));
  }
  if (input.states() < 2) throw Error(ErrorCode::kTooFewStates, "need at least 2 states");

  const bool mirrored = input.rule(0, 0).move == Direction::kLeft;
  const Machine machine = mirrored ? Mirror(input) : input;
  RunResult run = Simulate(machine, limits);
  if (!run.halted()) {
    throw Error(ErrorCode::kDoesNotHalt, FormatMachine(input) + " did not halt within " +
                                             std::to_string(limits.max_steps) + " steps");
  }
  if (!evidence.assume) {
    if (!evidence.s_max || evidence.states != input.states() || evidence.symbols != 2) {
      throw Error(ErrorCode::kNotChampion,
                  "no search evidence for (" + std::to_string(input.states()) + ",2)");
    }
    if (run.steps != *evidence.s_max) {
      throw Error(ErrorCode::kNotChampion, "activity " + std::to_string(run.steps) +
                                               " below S=" + std::to_string(*evidence.s_max));
    }
  }

  const int n = machine.states();
  std::vector<Rule> table;
  for (State q = 0; q < n; ++q) {
    table.push_back(machine.rule(q, 0));
    table.push_back(machine.rule(q, 1));
    table.push_back(Rule{kNew, Direction::kRight, 0});
  }
  Machine out(n, 3, std::move(table));

  const Cell last = *run.halting_rule_used;
  const std::int64_t i = run.halting_head;
  const Symbol left = run.final_tape.at(i - 1);
  const Symbol right = run.final_tape.at(i + 1);

  // The rewritten halting rule writes the new symbol at cell i and steps to a
  // neighbour in state `via`; the neighbour's rule either halts (+1) or comes
  // back to cell i in state `landing`, whose rule on the new symbol halts (+2).
  Direction step;
  State via;
  Symbol neighbour;
  std::string which;
  if (left == 0) {
    which = "a";
    step = Direction::kLeft;
    via = 0;
    neighbour = 0;
  } else if (auto t = LowestMoving(machine, 1, Direction::kRight, last)) {
    which = "b";
    step = Direction::kLeft;
    via = *t;
    neighbour = 1;
  } else if (right == 1) {
    which = "c";
    step = Direction::kRight;
    via = 0;
    // Any state other than the rewritten one works; all on-1 rules move Left.
    for (State t = 0; t < n; ++t) {
      if (Cell{t, 1} != last) {
        via = t;
        break;
      }
    }
    neighbour = 1;
  } else {
    which = "d";
    step = Direction::kRight;
    auto t = LowestMoving(machine, 0, Direction::kLeft, last);
    if (!t) {
      throw Error(ErrorCode::kNotChampion,
                  "no state moves left on blank; machine cannot be a champion");
    }
    via = *t;
    neighbour = 0;
  }
  out.set_rule(last, Rule{kNew, step, via});
  const Rule& bounce = out.rule(via, neighbour);
  const State landing = bounce.halts() ? via : bounce.next;
  out.set_rule(landing, kNew, Rule{kNew, Direction::kRight, kHalt});

  Claims claims;
  claims.activity_deltas = {1, 2};
  SimLimits out_limits = limits;
  out_limits.max_steps = run.steps + 3;
  TransformReport report = VerifyTransform(machine, out, claims, limits, out_limits);
  report.kind = "third-symbol";
  report.champion_assumed = evidence.assume;
  report.note = "case " + which + ", halting cell " + std::to_string(i) + ", s=" +
                StateLetter(landing) + (mirrored ? ", input mirrored" : "");
  return {std::move(out), std::move(report)};
}

}  // namespace beaver
