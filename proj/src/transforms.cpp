#include "beaver/transforms.hpp"

#include <algorithm>
#include <sstream>

namespace beaver {

std::string FormatTransformReport(const TransformReport& r) {
  std::ostringstream out;
  out << "kind=" << r.kind << "\n";
  out << "states " << r.states_before << "->" << r.states_after << " symbols "
      << r.symbols_before << "->" << r.symbols_after << " halting-rules " << r.halting_before
      << "->" << r.halting_after << "\n";
  out << "steps " << r.input_scores.steps << "->" << r.output_scores.steps << " nonblank "
      << r.input_scores.nonblank << "->" << r.output_scores.nonblank << "\n";
  out << "halted " << (r.input_halted ? "yes" : "no") << "->" << (r.output_halted ? "yes" : "no")
      << " checked=" << (r.checked ? "true" : "false")
      << " strict=" << (r.output_scores.steps > r.input_scores.steps ? "true" : "false");
  if (r.extended_format) out << " extended-format";
  if (r.champion_assumed) out << " champion-assumed";
  out << "\n";
  if (!r.note.empty()) out << "note: " << r.note << "\n";
  return out.str();
}

namespace {

bool Holds(Relation rel, std::int64_t out, std::int64_t in) {
  switch (rel) {
    case Relation::kAny: return true;
    case Relation::kGreater: return out > in;
    case Relation::kGreaterOrEqual: return out >= in;
    case Relation::kEqual: return out == in;
  }
  return false;
}

const char* RelationText(Relation rel) {
  switch (rel) {
    case Relation::kAny: return "any";
    case Relation::kGreater: return ">";
    case Relation::kGreaterOrEqual: return ">=";
    case Relation::kEqual: return "==";
  }
  return "?";
}

}  // namespace

TransformReport VerifyTransform(const Machine& input, const Machine& output, const Claims& claims,
                                const SimLimits& limits, std::optional<SimLimits> output_limits) {
  RunResult in_run = Simulate(input, limits);
  RunResult out_run = Simulate(output, output_limits.value_or(limits));

  TransformReport report;
  report.input_scores = {in_run.steps, in_run.nonblank};
  report.output_scores = {out_run.steps, out_run.nonblank};
  report.input_halted = in_run.halted();
  report.output_halted = out_run.halted();
  report.states_before = input.states();
  report.states_after = output.states();
  report.symbols_before = input.symbols();
  report.symbols_after = output.symbols();
  report.halting_before = CountHalting(input);
  report.halting_after = CountHalting(output);
  report.checked = true;
  report.extended_format = UsesExtendedFormat(output);

  std::vector<std::string> failures;
  if (claims.output_halts && !out_run.halted()) failures.push_back("output does not halt");
  if (!Holds(claims.activity, out_run.steps, in_run.steps)) {
    failures.push_back(std::string("activity ") + RelationText(claims.activity) + " failed");
  }
  if (!Holds(claims.productivity, out_run.nonblank, in_run.nonblank)) {
    failures.push_back(std::string("productivity ") + RelationText(claims.productivity) +
                       " failed");
  }
  if (!claims.activity_deltas.empty() &&
      std::find(claims.activity_deltas.begin(), claims.activity_deltas.end(),
                out_run.steps - in_run.steps) == claims.activity_deltas.end()) {
    failures.push_back("activity delta " + std::to_string(out_run.steps - in_run.steps) +
                       " not allowed");
  }
  if (claims.productivity_delta && out_run.nonblank - in_run.nonblank != *claims.productivity_delta) {
    failures.push_back("productivity delta " + std::to_string(out_run.nonblank - in_run.nonblank) +
                       " != " + std::to_string(*claims.productivity_delta));
  }
  if (claims.halting_count_preserved && report.halting_before != report.halting_after) {
    failures.push_back("halting rule count changed");
  }
  if (!failures.empty()) {
    std::string what = FormatMachine(input) + " -> " + FormatMachine(output) + ":";
    for (const auto& f : failures) what += " " + f + ";";
    throw ClaimViolation(what, report, std::move(in_run), std::move(out_run));
  }
  return report;
}

TransformResult AddState(const Machine& machine, const SimLimits& limits) {
  RunResult run = Simulate(machine, limits);
  if (!run.halted()) {
    throw Error(ErrorCode::kDoesNotHalt, FormatMachine(machine) + " did not halt within " +
                                             std::to_string(limits.max_steps) + " steps");
  }
  const int n = machine.states();
  const int m = machine.symbols();
  if (n + 1 > kMaxStates) throw Error(ErrorCode::kStateOutOfRange, "no room for another state");

  std::vector<Rule> table;
  table.reserve(static_cast<std::size_t>(n + 1) * m);
  for (State q = 0; q < n; ++q) {
    for (Symbol s = 0; s < m; ++s) table.push_back(machine.rule(q, s));
  }
  const State skip = static_cast<State>(n);
  table.push_back(Rule{1, Direction::kRight, kHalt});
  for (Symbol s = 1; s < m; ++s) table.push_back(Rule{s, Direction::kRight, skip});

  const Cell used = *run.halting_rule_used;
  Rule& redirected = table[static_cast<std::size_t>(used.state) * m + used.symbol];
  redirected.next = skip;

  Machine out(n + 1, m, std::move(table));
  Claims claims;
  claims.activity = Relation::kGreater;
  claims.productivity_delta = 1;
  claims.halting_count_preserved = true;
  // The skip phase adds at most (visited extent + 1) steps.
  SimLimits out_limits = limits;
  out_limits.max_steps = run.steps + (run.final_tape.rightmost() - run.final_tape.leftmost()) + 2;
  TransformReport report = VerifyTransform(machine, out, claims, limits, out_limits);
  report.kind = "add-state";
  return {std::move(out), std::move(report)};
}

TripleResult TripleAlphabet(const Machine& machine, const SimLimits& limits, bool require_halt) {
  const int n = machine.states();
  const int m = machine.symbols();
  const int m3 = 3 * m;
  if (m3 > kMaxSymbols) throw Error(ErrorCode::kConversionOverflow, "tripled alphabet too large");
  auto marked_left = [m](Symbol a) { return static_cast<Symbol>(m + a); };
  auto marked_right = [m](Symbol a) { return static_cast<Symbol>(2 * m + a); };

  std::vector<Rule> table;
  table.reserve(static_cast<std::size_t>(n) * m3);
  for (State q = 0; q < n; ++q) {
    for (Symbol s = 0; s < m; ++s) {
      Rule r = machine.rule(q, s);
      // a_R: the cell is right of the head after a Left move, and vice versa.
      r.write = r.move == Direction::kLeft ? marked_right(r.write) : marked_left(r.write);
      table.push_back(r);
    }
    for (Symbol a = 0; a < m; ++a) table.push_back(Rule{a, Direction::kRight, q});
    for (Symbol a = 0; a < m; ++a) table.push_back(Rule{a, Direction::kLeft, q});
  }
  Machine out(n, m3, std::move(table));

  RunResult in_run = Simulate(machine, limits);
  if (require_halt && !in_run.halted()) {
    throw Error(ErrorCode::kDoesNotHalt, FormatMachine(machine) + " did not halt");
  }
  // Each input step costs at most three output steps.
  SimLimits out_limits = limits;
  out_limits.max_steps = 3 * limits.max_steps + 3;
  Claims claims;
  claims.activity = Relation::kGreaterOrEqual;
  claims.output_halts = in_run.halted();
  TransformReport report = VerifyTransform(machine, out, claims, limits, out_limits);
  if (report.input_halted != report.output_halted) {
    throw ClaimViolation("halting behaviour differs", report, in_run, Simulate(out, out_limits));
  }
  report.kind = "triple";
  report.note = "turns=" + std::to_string(in_run.turns);
  return {std::move(out), std::move(report), Homomorphism{m}};
}

LockstepResult CheckLockstep(const Machine& input, const Machine& tripled, const Homomorphism& h,
                             std::int64_t max_input_steps) {
  LockstepResult result;
  Simulator base(input);
  Simulator marked(tripled);
  auto fail = [&](const std::string& why) {
    result.ok = false;
    result.failure = "step " + std::to_string(base.steps()) + ": " + why;
    return result;
  };

  while (true) {
    // Marked cells send the head out and back; at most two such steps.
    for (int bounce = 0; bounce < 3 && !marked.halted() &&
                         marked.tape().Read() >= static_cast<Symbol>(h.base_symbols);
         ++bounce) {
      if (bounce == 2) return fail("more than two bounce steps in a row");
      marked.Step();
    }
    if (base.halted() != marked.halted()) return fail("halting status differs");
    if (base.tape().head() != marked.tape().head()) return fail("head cells differ");
    if (!base.halted() && base.state() != marked.state()) return fail("states differ");
    const std::int64_t lo = std::min(base.tape().leftmost(), marked.tape().leftmost());
    const std::int64_t hi = std::max(base.tape().rightmost(), marked.tape().rightmost());
    for (std::int64_t i = lo; i <= hi; ++i) {
      if (h(marked.tape().at(i)) != base.tape().at(i)) {
        return fail("h(output tape) differs at cell " + std::to_string(i));
      }
    }
    ++result.matched_steps;
    if (base.halted() || base.steps() >= max_input_steps) break;
    base.Step();
    marked.Step();
  }
  return result;
}

}  // namespace beaver
