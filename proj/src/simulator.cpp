#include "beaver/simulator.hpp"

namespace beaver {

namespace {
constexpr std::int64_t kInitialTape = 64;
}

Tape::Tape() : cells_(kInitialTape, 0), origin_(kInitialTape / 2) {}

void Tape::Write(Symbol s) {
  Symbol& cell = cells_[static_cast<std::size_t>(head_ + origin_)];
  nonblank_ += (s != 0) - (cell != 0);
  cell = s;
}

bool Tape::Move(Direction d) {
  head_ += Delta(d);
  if (head_ + origin_ < 0 || head_ + origin_ >= static_cast<std::int64_t>(cells_.size())) {
    Grow(d);
  }
  if (head_ < leftmost_) {
    leftmost_ = head_;
    return true;
  }
  if (head_ > rightmost_) {
    rightmost_ = head_;
    return true;
  }
  return false;
}

void Tape::Grow(Direction d) {
  const std::int64_t extra = static_cast<std::int64_t>(cells_.size());
  if (d == Direction::kLeft) {
    cells_.insert(cells_.begin(), static_cast<std::size_t>(extra), 0);
    origin_ += extra;
  } else {
    cells_.resize(cells_.size() + static_cast<std::size_t>(extra), 0);
  }
}

Symbol Tape::at(std::int64_t cell) const {
  const std::int64_t i = cell + origin_;
  if (i < 0 || i >= static_cast<std::int64_t>(cells_.size())) return 0;
  return cells_[static_cast<std::size_t>(i)];
}

std::vector<Symbol> Tape::Window() const {
  return {cells_.begin() + (leftmost_ + origin_), cells_.begin() + (rightmost_ + origin_ + 1)};
}

const char* VerdictName(Verdict v) {
  switch (v) {
    case Verdict::kHalted: return "Halted";
    case Verdict::kStepLimit: return "StepLimit";
    case Verdict::kCycler: return "Cycler";
  }
  return "?";
}

Simulator::Simulator(Machine machine)
    : machine_(std::move(machine)), seen_(machine_.states(), false) {
  seen_[0] = true;
  first_visit_order_.push_back(0);
}

void Simulator::Step() {
  if (halted()) return;
  const Cell cell{state_, tape_.Read()};
  const Rule& rule = machine_.rule(cell);
  tape_.Write(rule.write);
  entered_fresh_ = tape_.Move(rule.move);
  if (last_move_ && *last_move_ != rule.move) ++turns_;
  last_move_ = rule.move;
  last_cell_ = cell;
  state_ = rule.next;
  ++steps_;
  if (state_ != kHalt && !seen_[state_]) {
    seen_[state_] = true;
    first_visit_order_.push_back(state_);
  }
}

bool CycleDetector::Observe(std::int64_t step, State state, const Tape& tape) {
  if (armed_ && state == state_ && tape.head() == head_ && tape.leftmost() == leftmost_ &&
      tape.rightmost() == rightmost_) {
    bool same = true;
    for (std::int64_t i = leftmost_; i <= rightmost_ && same; ++i) {
      same = tape.at(i) == window_[static_cast<std::size_t>(i - leftmost_)];
    }
    if (same) return true;
  }
  if (step >= next_snapshot_) {
    next_snapshot_ *= 2;
    state_ = state;
    head_ = tape.head();
    leftmost_ = tape.leftmost();
    rightmost_ = tape.rightmost();
    window_ = tape.Window();
    armed_ = true;
  }
  return false;
}

RunResult Simulate(const Machine& machine, const SimLimits& limits) {
  Simulator sim(machine);
  CycleDetector cycles;
  RunResult result;
  result.verdict = Verdict::kStepLimit;
  while (sim.steps() < limits.max_steps) {
    const std::int64_t head = sim.tape().head();
    sim.Step();
    if (sim.halted()) {
      result.verdict = Verdict::kHalted;
      result.halting_rule_used = sim.last_cell();
      result.halting_head = head;
      break;
    }
    if (limits.detect_cycles && sim.entered_fresh() &&
        RunsAwayOnBlanks(machine.states(), sim.state(), *sim.last_move(),
                         [&](State q) { return &machine.rule(q, 0); })) {
      result.verdict = Verdict::kCycler;
      break;
    }
    if (limits.detect_cycles && cycles.Observe(sim.steps(), sim.state(), sim.tape())) {
      result.verdict = Verdict::kCycler;
      break;
    }
  }
  result.steps = sim.steps();
  result.nonblank = sim.tape().nonblank();
  result.final_head = sim.tape().head();
  result.final_tape = sim.tape();
  result.first_visit_order = sim.first_visit_order();
  result.turns = sim.turns();
  return result;
}

}  // namespace beaver
