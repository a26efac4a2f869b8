#include "beaver/transforms.hpp"

namespace beaver {

int TwoStateSymbolBound(int states, int symbols) { return 4 * symbols * (states + 1) + symbols; }

namespace {

// Two-state simulation of an N-state, m-symbol machine with 4mN+m symbols.
//
// Symbols: plain c; Recv(c, i, e), a cell holding c that has counted i
// arrivals from a sender on side e; Send(w, r, d), a cell that will hold w
// once r more round trips to its neighbour on side d are done. A transfer of
// simulated state j ends with the receiver at count j+1 and the head arriving
// in state A.
//
// Machine states: A starts, means "done" on a Recv and "moved left" on a
// plain cell; B means "count once more" on a Recv and "moved right" on a plain
// cell. From the blank start, cells 0 and 1 count against each other up to N;
// cell 0 then runs simulated state 0, and the leftover Recv(0, N, L) at cell 1
// acts as a plain blank on its next visit.
class TwoStateBuilder {
 public:
  TwoStateBuilder(const Machine& inner) : inner_(inner), n_(inner.states()), m_(inner.symbols()) {}

  int symbol_count() const { return m_ + 4 * m_ * n_; }

  Machine Build() const {
    const int total = symbol_count();
    std::vector<Rule> table(static_cast<std::size_t>(2) * total);
    auto set = [&](State q, int symbol, Rule r) {
      table[static_cast<std::size_t>(q) * total + symbol] = r;
    };

    for (int c = 0; c < m_; ++c) {
      set(kA, c, Rule{Recv(c, 1, Direction::kRight), Direction::kRight, kB});
      set(kB, c, Rule{Recv(c, 1, Direction::kLeft), Direction::kLeft, kB});
    }
    for (Direction e : {Direction::kLeft, Direction::kRight}) {
      for (int i = 1; i <= n_; ++i) {
        for (int c = 0; c < m_; ++c) {
          const int sym = Recv(c, i, e);
          set(kA, sym, Execute(static_cast<State>(i - 1), c));
          if (i < n_) {
            set(kB, sym, Rule{Recv(c, i + 1, e), e, kB});
          } else if (e == Direction::kRight) {
            set(kB, sym, Execute(0, c));
          } else {
            set(kB, sym, Rule{Recv(c, 1, Direction::kLeft), Direction::kLeft, kB});
          }
        }
      }
    }
    for (Direction d : {Direction::kLeft, Direction::kRight}) {
      for (int r = 1; r <= n_; ++r) {
        for (int w = 0; w < m_; ++w) {
          Rule rule = r > 1 ? Rule{Send(w, r - 1, d), d, kB}
                            : Rule{static_cast<Symbol>(w), d, kA};
          set(kA, Send(w, r, d), rule);
          set(kB, Send(w, r, d), rule);
        }
      }
    }
    return Machine(2, total, std::move(table));
  }

 private:
  static constexpr State kA = 0;
  static constexpr State kB = 1;

  static int Index(Direction d) { return d == Direction::kLeft ? 0 : 1; }

  Symbol Recv(int c, int count, Direction e) const {
    return static_cast<Symbol>(m_ + (Index(e) * n_ + (count - 1)) * m_ + c);
  }
  Symbol Send(int w, int rounds, Direction d) const {
    return static_cast<Symbol>(m_ + 2 * m_ * n_ + (Index(d) * n_ + (rounds - 1)) * m_ + w);
  }

  // Applies the simulated rule for (state, c) at the current cell.
  Rule Execute(State state, int c) const {
    const Rule& r = inner_.rule(state, static_cast<Symbol>(c));
    if (r.halts()) return Rule{r.write, r.move, kHalt};
    return Rule{Send(r.write, r.next + 1, r.move), r.move,
                r.move == Direction::kLeft ? kA : kB};
  }

  const Machine& inner_;
  int n_;
  int m_;
};

}  // namespace

TransformResult ToTwoState(const Machine& machine, const SimLimits& limits) {
  if (machine.states() < 2) throw Error(ErrorCode::kTooFewStates, "need at least 2 states");
  const int bound = TwoStateSymbolBound(machine.states(), machine.symbols());
  if (bound > kMaxSymbols) {
    throw Error(ErrorCode::kConversionOverflow,
                std::to_string(bound) + " symbols exceed the limit " + std::to_string(kMaxSymbols));
  }
  TransformResult grown = AddState(machine, limits);
  const Machine& inner = grown.machine;
  TwoStateBuilder builder(inner);
  Machine out = builder.Build();

  // Each simulated step costs at most 2(N+1) output steps, plus 2N to start.
  const std::int64_t n = inner.states();
  SimLimits out_limits = limits;
  out_limits.max_steps = grown.report.output_scores.steps * (2 * n + 2) + 2 * n + 2;
  Claims claims;
  claims.activity = Relation::kGreater;
  claims.productivity = Relation::kGreater;
  TransformReport report = VerifyTransform(machine, out, claims, limits, out_limits);
  report.kind = "two-state";
  report.note = "via " + std::to_string(inner.states()) + "-state machine " +
                FormatMachine(inner) + "; bound " + std::to_string(bound) + " symbols";
  return {std::move(out), std::move(report)};
}

}  // namespace beaver
