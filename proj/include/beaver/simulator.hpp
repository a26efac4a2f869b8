#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "beaver/machine.hpp"

namespace beaver {

// Two-way infinite tape, blank by default. Storage covers the visited extent.
class Tape {
 public:
  Tape();

  Symbol Read() const { return cells_[static_cast<std::size_t>(head_ + origin_)]; }
  void Write(Symbol s);
  // Returns true when the head lands on a never-visited cell.
  bool Move(Direction d);

  std::int64_t head() const { return head_; }
  std::int64_t leftmost() const { return leftmost_; }
  std::int64_t rightmost() const { return rightmost_; }

  // Any cell index; blank outside storage.
  Symbol at(std::int64_t cell) const;
  std::int64_t nonblank() const { return nonblank_; }
  // Contents of [leftmost, rightmost].
  std::vector<Symbol> Window() const;

  // Same head, visited extent, and contents.
  friend bool operator==(const Tape& a, const Tape& b) {
    return a.head_ == b.head_ && a.leftmost_ == b.leftmost_ &&
           a.rightmost_ == b.rightmost_ && a.Window() == b.Window();
  }

 private:
  void Grow(Direction d);

  std::vector<Symbol> cells_;
  std::int64_t origin_;  // storage index of cell 0
  std::int64_t head_ = 0;
  std::int64_t leftmost_ = 0;
  std::int64_t rightmost_ = 0;
  std::int64_t nonblank_ = 0;
};

struct SimLimits {
  std::int64_t max_steps = 10'000;
  bool detect_cycles = true;
};

enum class Verdict { kHalted, kStepLimit, kCycler };
const char* VerdictName(Verdict v);

struct RunResult {
  Verdict verdict = Verdict::kStepLimit;
  std::int64_t steps = 0;
  std::int64_t nonblank = 0;
  std::int64_t final_head = 0;
  Tape final_tape;
  // States in order of first entry, starting with the initial state.
  std::vector<State> first_visit_order;
  std::optional<Cell> halting_rule_used;
  // Cell read by the halting transition.
  std::int64_t halting_head = 0;
  // Number of times consecutive moves changed direction.
  std::int64_t turns = 0;

  bool halted() const { return verdict == Verdict::kHalted; }
};

// Single-stepping simulator on a blank tape, for lockstep comparisons.
class Simulator {
 public:
  explicit Simulator(Machine machine);

  // Applies one transition. No-op once halted.
  void Step();

  bool halted() const { return state_ == kHalt; }
  State state() const { return state_; }
  std::int64_t steps() const { return steps_; }
  const Tape& tape() const { return tape_; }
  const Machine& machine() const { return machine_; }
  const std::vector<State>& first_visit_order() const { return first_visit_order_; }
  std::optional<Cell> last_cell() const { return last_cell_; }
  std::int64_t turns() const { return turns_; }
  std::optional<Direction> last_move() const { return last_move_; }
  // Whether the last step moved onto a never-visited cell.
  bool entered_fresh() const { return entered_fresh_; }

 private:
  Machine machine_;
  Tape tape_;
  State state_ = 0;
  std::int64_t steps_ = 0;
  std::int64_t turns_ = 0;
  std::optional<Direction> last_move_;
  bool entered_fresh_ = false;
  std::optional<Cell> last_cell_;
  std::vector<bool> seen_;
  std::vector<State> first_visit_order_;
};

// Exact-repeat configuration detector (Brent-style power-of-two snapshots).
// A configuration is (state, head, visited window); the window only grows,
// so equal windows imply equal absolute positions.
class CycleDetector {
 public:
  // Returns true when the configuration equals the saved snapshot.
  bool Observe(std::int64_t step, State state, const Tape& tape);

 private:
  std::int64_t next_snapshot_ = 1;
  State state_ = kHalt;
  std::int64_t head_ = 0, leftmost_ = 0, rightmost_ = 0;
  std::vector<Symbol> window_;
  bool armed_ = false;
};

// True when, from state q on a fresh cell reached moving `d`, the blank-symbol
// rules keep moving `d` through a repeating chain of states: the head then
// walks over blank tape forever. `lookup(q)` returns the rule on blank for
// state q, or nullptr when it is undefined.
template <typename Lookup>
bool RunsAwayOnBlanks(int states, State q, Direction d, Lookup lookup) {
  std::vector<bool> seen(static_cast<std::size_t>(states), false);
  while (q != kHalt && !seen[static_cast<std::size_t>(q)]) {
    seen[static_cast<std::size_t>(q)] = true;
    const Rule* r = lookup(q);
    if (r == nullptr || r->move != d) return false;
    q = r->next;
  }
  return q != kHalt;
}

RunResult Simulate(const Machine& machine, const SimLimits& limits);

}  // namespace beaver
