#include "beaver/search.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <sstream>
#include <thread>

namespace beaver {

std::int64_t DefaultCutoff(int states, int /*symbols*/) {
  return states <= 3 ? 10'000 : 100'000;
}

SearchSpace MakeSpace(int states, int symbols) {
  SearchSpace space;
  space.states = states;
  space.symbols = symbols;
  space.limits.max_steps = DefaultCutoff(states, symbols);
  space.limits.detect_cycles = true;
  return space;
}

double EstimateClassCount(int states, int symbols) {
  return std::pow(2.0 * symbols * (states + 1), static_cast<double>(states) * symbols);
}

void CheckGuard(const SearchSpace& space) {
  if (space.states < 1 || space.states > kMaxStates || space.symbols < 2 ||
      space.symbols > kMaxCompactSymbols) {
    throw Error(ErrorCode::kSpaceTooLarge, "space (" + std::to_string(space.states) + "," +
                                               std::to_string(space.symbols) +
                                               ") outside the enumerable range");
  }
  const double estimate = EstimateClassCount(space.states, space.symbols);
  if (estimate > space.class_ceiling) {
    std::ostringstream msg;
    msg << "space (" << space.states << "," << space.symbols << ") has ~" << estimate
        << " machines, above the class ceiling " << space.class_ceiling;
    throw Error(ErrorCode::kSpaceTooLarge, msg.str());
  }
}

const char* DecisionName(Decision d) {
  switch (d) {
    case Decision::kHalted: return "halted";
    case Decision::kCycler: return "cycler";
    case Decision::kUndecided: return "undecided";
  }
  return "?";
}

namespace {

bool HaltReachableFrom(const Machine& machine, State start) {
  std::vector<bool> seen(machine.states(), false);
  std::vector<State> stack{start};
  seen[start] = true;
  while (!stack.empty()) {
    State q = stack.back();
    stack.pop_back();
    for (Symbol s = 0; s < machine.symbols(); ++s) {
      const Rule& r = machine.rule(q, s);
      if (r.halts()) return true;
      if (!seen[r.next]) {
        seen[r.next] = true;
        stack.push_back(r.next);
      }
    }
  }
  return false;
}

}  // namespace

DecideResult Decide(const Machine& machine, const SearchSpace& space) {
  if (space.halt_reachability_decider && !HaltReachableFrom(machine, 0)) {
    return {Decision::kCycler, 0, 0, NonHaltProof::kHaltUnreachable};
  }
  SimLimits limits = space.limits;
  limits.detect_cycles = space.cycle_decider;
  RunResult run = Simulate(machine, limits);
  switch (run.verdict) {
    case Verdict::kHalted:
      return {Decision::kHalted, run.steps, run.nonblank, NonHaltProof::kNone};
    case Verdict::kCycler:
      return {Decision::kCycler, run.steps, run.nonblank, NonHaltProof::kRepeatOrRunaway};
    case Verdict::kStepLimit:
      break;
  }
  return {Decision::kUndecided, run.steps, run.nonblank, NonHaltProof::kNone};
}

namespace {

// A partially defined machine paused in the middle of its blank-tape run.
struct Node {
  std::vector<Rule> rules;
  std::vector<std::uint8_t> defined;
  int defined_count = 0;
  State max_state = 0;
  Symbol max_symbol = 0;
  Tape tape;
  State state = 0;
  std::int64_t steps = 0;
  CycleDetector cycles;
};

class TnfEngine {
 public:
  TnfEngine(const SearchSpace& space, const std::function<void(const Leaf&)>& visit,
            std::vector<Node>* frontier, int split_depth)
      : space_(space),
        n_(space.states),
        m_(space.symbols),
        visit_(visit),
        frontier_(frontier),
        split_depth_(split_depth) {}

  void RunFromRoot() {
    Node root;
    root.rules.assign(static_cast<std::size_t>(n_) * m_, Rule{});
    root.defined.assign(root.rules.size(), 0);
    Branch(std::move(root));
  }

  // Runs until the node needs an undefined cell, then branches on it.
  void Explore(Node node) {
    const std::int64_t cutoff = space_.limits.max_steps;
    while (true) {
      if (node.steps >= cutoff) {
        Emit(node, {Decision::kUndecided, node.steps, node.tape.nonblank(), NonHaltProof::kNone});
        return;
      }
      const std::size_t idx = static_cast<std::size_t>(node.state) * m_ + node.tape.Read();
      if (!node.defined[idx]) {
        Branch(std::move(node));
        return;
      }
      const Rule& r = node.rules[idx];
      node.tape.Write(r.write);
      const bool fresh = node.tape.Move(r.move);
      node.state = r.next;
      ++node.steps;
      if (space_.cycle_decider && fresh &&
          RunsAwayOnBlanks(n_, node.state, r.move, [&](State q) -> const Rule* {
            const std::size_t i = static_cast<std::size_t>(q) * m_;
            return node.defined[i] ? &node.rules[i] : nullptr;
          })) {
        Emit(node, {Decision::kCycler, node.steps, node.tape.nonblank(),
                    NonHaltProof::kBlankRunaway});
        return;
      }
      if (space_.cycle_decider && node.cycles.Observe(node.steps, node.state, node.tape)) {
        Emit(node, {Decision::kCycler, node.steps, node.tape.nonblank(),
                    NonHaltProof::kConfigurationRepeat});
        return;
      }
    }
  }

  // Enumerates every canonical definition of the cell under the head.
  void Branch(Node node) {
    if (frontier_ != nullptr && node.defined_count >= split_depth_) {
      frontier_->push_back(std::move(node));
      return;
    }
    const Symbol read = node.tape.Read();
    const std::size_t idx = static_cast<std::size_t>(node.state) * m_ + read;
    const Symbol max_write = static_cast<Symbol>(std::min(m_ - 1, node.max_symbol + 1));
    const State max_next = static_cast<State>(std::min(n_ - 1, node.max_state + 1));

    for (Symbol w = 0; w <= max_write; ++w) {
      Node leaf = node;
      Define(leaf, idx, Rule{w, Direction::kRight, kHalt});
      const std::int64_t nonblank = node.tape.nonblank() - (read != 0) + (w != 0);
      Emit(leaf, {Decision::kHalted, node.steps + 1, nonblank, NonHaltProof::kNone});
    }

    if (node.steps == 0) {
      // First transition is fixed to 1R into the second state (or A when n=1).
      Node child = std::move(node);
      Define(child, idx, Rule{1, Direction::kRight, static_cast<State>(std::min(1, n_ - 1))});
      Continue(std::move(child));
      return;
    }
    for (Symbol w = 0; w <= max_write; ++w) {
      for (Direction d : {Direction::kLeft, Direction::kRight}) {
        for (State next = 0; next <= max_next; ++next) {
          Node child = node;
          Define(child, idx, Rule{w, d, next});
          Continue(std::move(child));
        }
      }
    }
  }

 private:
  void Define(Node& node, std::size_t idx, const Rule& rule) {
    node.rules[idx] = rule;
    node.defined[idx] = 1;
    ++node.defined_count;
    node.max_symbol = std::max(node.max_symbol, rule.write);
    if (!rule.halts()) node.max_state = std::max(node.max_state, rule.next);
  }

  void Continue(Node child) {
    if (space_.halt_reachability_decider && !UndefinedReachable(child)) {
      Emit(child, {Decision::kCycler, child.steps, child.tape.nonblank(),
                   NonHaltProof::kHaltUnreachable});
      return;
    }
    Explore(std::move(child));
  }

  // Inner nodes hold no halting rules, so only undefined cells can halt.
  bool UndefinedReachable(const Node& node) const {
    std::vector<bool> seen(n_, false);
    std::vector<State> stack{node.state};
    seen[node.state] = true;
    while (!stack.empty()) {
      State q = stack.back();
      stack.pop_back();
      for (int s = 0; s < m_; ++s) {
        const std::size_t idx = static_cast<std::size_t>(q) * m_ + s;
        if (!node.defined[idx]) return true;
        State next = node.rules[idx].next;
        if (next != kHalt && !seen[next]) {
          seen[next] = true;
          stack.push_back(next);
        }
      }
    }
    return false;
  }

  void Emit(const Node& node, const DecideResult& result) {
    std::vector<Rule> filled = node.rules;
    std::string partial;
    for (std::size_t i = 0; i < filled.size(); ++i) {
      if (i > 0 && i % m_ == 0) partial.push_back('_');
      if (!node.defined[i]) {
        filled[i] = Rule{1, Direction::kRight, kHalt};
        partial += "---";
      } else {
        partial += FormatRule(filled[i]);
      }
    }
    visit_(Leaf{Machine(n_, m_, std::move(filled)), std::move(partial), result});
  }

  const SearchSpace& space_;
  int n_;
  int m_;
  const std::function<void(const Leaf&)>& visit_;
  std::vector<Node>* frontier_;
  int split_depth_;
};

void Accumulate(SearchReport& report, const Leaf& leaf) {
  switch (leaf.result.decision) {
    case Decision::kHalted: {
      ++report.halted;
      Champion c{FormatMachine(leaf.machine), leaf.result.steps, leaf.result.nonblank};
      if (c.steps > report.s_max) {
        report.s_max = c.steps;
        report.s_champions.clear();
      }
      if (c.steps == report.s_max) report.s_champions.push_back(c);
      if (c.nonblank > report.sigma) {
        report.sigma = c.nonblank;
        report.sigma_champions.clear();
      }
      if (c.nonblank == report.sigma) report.sigma_champions.push_back(c);
      break;
    }
    case Decision::kCycler:
      ++report.cycler;
      if (leaf.result.proof == NonHaltProof::kHaltUnreachable) ++report.halt_unreachable;
      if (leaf.result.proof == NonHaltProof::kBlankRunaway) ++report.blank_runaway;
      break;
    case Decision::kUndecided:
      ++report.undecided;
      break;
  }
}

void MergeChampions(std::int64_t& best, std::vector<Champion>& mine, std::int64_t other_best,
                    const std::vector<Champion>& other) {
  if (other_best > best) {
    best = other_best;
    mine = other;
  } else if (other_best == best) {
    mine.insert(mine.end(), other.begin(), other.end());
  }
}

void Merge(SearchReport& into, const SearchReport& part) {
  into.halted += part.halted;
  into.cycler += part.cycler;
  into.undecided += part.undecided;
  into.halt_unreachable += part.halt_unreachable;
  into.blank_runaway += part.blank_runaway;
  MergeChampions(into.sigma, into.sigma_champions, part.sigma, part.sigma_champions);
  MergeChampions(into.s_max, into.s_champions, part.s_max, part.s_champions);
}

void Canonicalize(std::vector<Champion>& list) {
  std::sort(list.begin(), list.end());
  list.erase(std::unique(list.begin(), list.end()), list.end());
}

}  // namespace

void EnumerateTnf(const SearchSpace& space, const std::function<void(const Leaf&)>& visit) {
  CheckGuard(space);
  TnfEngine engine(space, visit, nullptr, 0);
  engine.RunFromRoot();
}

std::vector<Machine> HaltingMachines(const SearchSpace& space) {
  std::vector<Machine> out;
  EnumerateTnf(space, [&](const Leaf& leaf) {
    if (leaf.result.decision == Decision::kHalted) out.push_back(leaf.machine);
  });
  return out;
}

SearchReport Search(const SearchSpace& space, const SearchOptions& options) {
  CheckGuard(space);
  SearchReport report;
  report.states = space.states;
  report.symbols = space.symbols;
  report.cutoff = space.limits.max_steps;

  // Shallow leaves and the frontier of independent subtrees.
  std::vector<Node> frontier;
  std::function<void(const Leaf&)> root_visit = [&](const Leaf& leaf) {
    Accumulate(report, leaf);
  };
  TnfEngine(space, root_visit, &frontier, std::max(1, options.split_depth)).RunFromRoot();

  const int workers = std::max(1, options.workers);
  std::vector<SearchReport> partials(static_cast<std::size_t>(workers));
  std::atomic<std::size_t> next{0};
  auto work = [&](int w) {
    SearchReport& mine = partials[static_cast<std::size_t>(w)];
    std::function<void(const Leaf&)> visit = [&](const Leaf& leaf) { Accumulate(mine, leaf); };
    TnfEngine engine(space, visit, nullptr, 0);
    for (std::size_t i = next++; i < frontier.size(); i = next++) {
      engine.Branch(std::move(frontier[i]));
    }
  };
  if (workers == 1) {
    work(0);
  } else {
    std::vector<std::thread> threads;
    for (int w = 0; w < workers; ++w) threads.emplace_back(work, w);
    for (auto& t : threads) t.join();
  }
  for (const SearchReport& part : partials) Merge(report, part);
  Canonicalize(report.sigma_champions);
  Canonicalize(report.s_champions);
  return report;
}

std::string FormatReport(const SearchReport& report) {
  std::ostringstream out;
  out << "space n=" << report.states << " m=" << report.symbols << " cutoff=" << report.cutoff
      << "\n";
  out << "sigma=" << report.sigma << " s_max=" << report.s_max << "\n";
  out << "halted=" << report.halted << " cycler=" << report.cycler
      << " (halt-unreachable=" << report.halt_unreachable
      << " blank-runaway=" << report.blank_runaway << ") undecided=" << report.undecided
      << "\n";
  out << "s_champions:\n";
  for (const Champion& c : report.s_champions) {
    out << "  " << c.machine << " steps=" << c.steps << " nonblank=" << c.nonblank << "\n";
  }
  out << "sigma_champions:\n";
  for (const Champion& c : report.sigma_champions) {
    out << "  " << c.machine << " steps=" << c.steps << " nonblank=" << c.nonblank << "\n";
  }
  return out.str();
}

bool CheckLemma2(const SearchReport& report) { return report.s_max > report.states; }

Lemma3Result CheckLemma3(int states, int symbols, const SimLimits& limits) {
  Lemma3Result result;
  const int choices = symbols * (states + 1);
  for (Direction dir : {Direction::kLeft, Direction::kRight}) {
    std::vector<int> digits(static_cast<std::size_t>(states), 0);
    while (true) {
      std::vector<Rule> table(static_cast<std::size_t>(states) * symbols,
                              Rule{1, Direction::kRight, kHalt});
      for (int q = 0; q < states; ++q) {
        const int d = digits[static_cast<std::size_t>(q)];
        const int next = d / symbols;  // 0 halts, k targets state k-1
        table[static_cast<std::size_t>(q) * symbols] =
            Rule{static_cast<Symbol>(d % symbols), dir, static_cast<State>(next - 1)};
      }
      Machine machine(states, symbols, std::move(table));
      RunResult run = Simulate(machine, limits);
      ++result.checked;
      if (run.halted()) {
        ++result.halting;
        if (run.steps > states) {
          result.holds = false;
          result.counterexamples.push_back(FormatMachine(machine));
        }
      }
      int pos = 0;
      while (pos < states && ++digits[static_cast<std::size_t>(pos)] == choices) {
        digits[static_cast<std::size_t>(pos++)] = 0;
      }
      if (pos == states) break;
    }
  }
  return result;
}

std::int64_t ActivityProductivityGap(const SearchReport& report) {
  std::int64_t best = 0;
  for (const Champion& c : report.s_champions) best = std::max(best, c.nonblank);
  return best;
}

}  // namespace beaver
