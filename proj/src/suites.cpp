#include "beaver/suites.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

#include "beaver/introspect.hpp"
#include "beaver/transforms.hpp"

namespace beaver {

std::string FormatSuiteResult(const SuiteResult& r) {
  std::ostringstream out;
  out << r.name << ": " << (r.passed ? "pass" : "FAIL") << " (" << r.checked << " checked, "
      << r.counterexamples.size() << " counterexamples)\n";
  for (const auto& d : r.details) out << "  " << d << "\n";
  for (const auto& c : r.counterexamples) out << "  counterexample: " << c << "\n";
  return out.str();
}

const std::vector<std::string>& SuiteNames() {
  static const std::vector<std::string> names{"lemma1", "lemma2", "lemma3", "thm2",
                                              "thm3",   "thm4",   "introspect"};
  return names;
}

namespace {

std::string SpaceName(const SearchSpace& space) {
  return "(" + std::to_string(space.states) + "," + std::to_string(space.symbols) + ")";
}

}  // namespace

SuiteResult RunLemma1Suite(const SearchSpace& space) {
  SuiteResult result;
  result.name = "lemma1 " + SpaceName(space);
  for (const Machine& machine : HaltingMachines(space)) {
    ++result.checked;
    try {
      AddState(machine, space.limits);
    } catch (const Error& e) {
      result.Fail(e.what());
    }
  }
  return result;
}

SuiteResult RunLemma2Suite(const SearchSpace& space) {
  SuiteResult result;
  result.name = "lemma2 " + SpaceName(space);
  SearchReport report = Search(space);
  result.checked = report.halted;
  result.details.push_back("s_max=" + std::to_string(report.s_max) + " n=" +
                           std::to_string(space.states));
  if (!CheckLemma2(report)) result.Fail("s_max " + std::to_string(report.s_max) + " <= n");
  return result;
}

SuiteResult RunLemma3Suite(const SearchSpace& space) {
  SuiteResult result;
  result.name = "lemma3 " + SpaceName(space);
  Lemma3Result l3 = CheckLemma3(space.states, space.symbols, space.limits);
  result.checked = l3.checked;
  result.details.push_back(std::to_string(l3.halting) + " one-direction machines halt");
  for (const auto& c : l3.counterexamples) result.Fail(c + " halts after more than n steps");
  return result;
}

SuiteResult RunTheorem2Suite(const SearchSpace& space, const std::optional<SearchReport>& report) {
  SuiteResult result;
  result.name = "thm2 " + SpaceName(space);
  if (space.symbols != 2) {
    result.Fail("the third-symbol construction takes binary machines only");
    return result;
  }
  const SearchReport searched = report ? *report : Search(space);
  const ChampionshipEvidence evidence = ChampionshipEvidence::FromReport(searched);
  for (const Champion& c : searched.s_champions) {
    ++result.checked;
    try {
      TransformResult t = AddThirdSymbol(ParseMachine(c.machine), evidence, space.limits);
      result.details.push_back(c.machine + " -> " + FormatMachine(t.machine) + " steps " +
                               std::to_string(t.report.input_scores.steps) + "->" +
                               std::to_string(t.report.output_scores.steps) + " (" +
                               t.report.note + ")");
    } catch (const Error& e) {
      result.Fail(c.machine + ": " + e.what());
    }
  }
  if (result.checked == 0) result.Fail("no champions to transform");
  return result;
}

SuiteResult RunTheorem3Suite(const SearchSpace& space) {
  SuiteResult result;
  result.name = "thm3 " + SpaceName(space);
  for (const Machine& machine : HaltingMachines(space)) {
    ++result.checked;
    try {
      TransformResult t = ToTwoState(machine, space.limits);
      const int bound = TwoStateSymbolBound(machine.states(), machine.symbols());
      if (t.machine.states() != 2) result.Fail(FormatMachine(machine) + ": not two states");
      if (t.machine.symbols() > bound) {
        result.Fail(FormatMachine(machine) + ": " + std::to_string(t.machine.symbols()) +
                    " symbols > " + std::to_string(bound));
      }
    } catch (const Error& e) {
      result.Fail(e.what());
    }
  }
  return result;
}

SuiteResult RunTheorem4Suite(const SearchSpace& space) {
  SuiteResult result;
  result.name = "thm4 " + SpaceName(space);
  std::int64_t strict = 0;
  for (const Machine& machine : HaltingMachines(space)) {
    ++result.checked;
    try {
      TripleResult t = TripleAlphabet(machine, space.limits, true);
      LockstepResult lock = CheckLockstep(machine, t.machine, t.h, space.limits.max_steps);
      if (!lock.ok) result.Fail(FormatMachine(machine) + ": " + lock.failure);
      RunResult run = Simulate(machine, space.limits);
      if (run.turns > 0 && t.report.activity_gain() < 2) {
        result.Fail(FormatMachine(machine) + ": turns but gains only " +
                    std::to_string(t.report.activity_gain()));
      }
      if (t.report.activity_gain() > 0) ++strict;
    } catch (const Error& e) {
      result.Fail(e.what());
    }
  }
  result.details.push_back(std::to_string(strict) + " strict increases");
  return result;
}

SuiteResult RunIntrospectSuite(const SearchSpace& space) {
  SuiteResult result;
  result.name = "introspect " + SpaceName(space);
  struct Measured {
    int n;
    std::size_t length;
  };
  std::vector<Measured> lengths;
  std::int64_t fitted_c = 0;
  for (const Machine& machine : HaltingMachines(space)) {
    ++result.checked;
    const std::string name = FormatMachine(machine);
    try {
      NormalizedMachine nm = NormalizeFirstVisit(PruneUnused(machine, space.limits), space.limits);
      const int n = nm.machine.states();
      const int m = nm.machine.symbols();
      TransitionClass cls = ClassifyTransitions(nm);
      if (cls.special_count() != n) {
        result.Fail(name + ": " + std::to_string(cls.special_count()) + " special rules");
        continue;
      }
      DescriptionBits bits = EncodeDescription(nm, cls);
      if (bits.part_lengths != PartLengths(n, m) ||
          bits.size() != bits.part_lengths[0] + bits.part_lengths[1] + bits.part_lengths[2] ||
          (n >= 2 && bits.part_lengths[0] > static_cast<std::size_t>(2 * CeilLog2(n)))) {
        result.Fail(name + ": part lengths violate the length law");
      }
      Machine decoded = DecodeDescription(bits, m, space.limits);
      RunResult replay = Simulate(decoded, space.limits);
      if (!replay.halted() || replay.steps != nm.witness.steps ||
          !(replay.final_tape == nm.witness.final_tape)) {
        result.Fail(name + ": decoded " + FormatMachine(decoded) + " behaves differently");
      }
      lengths.push_back({n, bits.size()});
      fitted_c = std::max(fitted_c, RequiredConstant(bits.size(), n, m));
    } catch (const Error& e) {
      result.Fail(name + ": " + e.what());
    }
  }
  for (const Measured& x : lengths) {
    if (static_cast<std::int64_t>(x.length) >
        DescriptionLengthBound(x.n, space.symbols, fitted_c)) {
      result.Fail("length " + std::to_string(x.length) + " exceeds bound with fitted c");
    }
  }
  result.details.push_back("fitted c=" + std::to_string(fitted_c));
  return result;
}

SuiteResult RunSuite(const std::string& name, const SearchSpace& space) {
  if (name == "lemma1") return RunLemma1Suite(space);
  if (name == "lemma2") return RunLemma2Suite(space);
  if (name == "lemma3") return RunLemma3Suite(space);
  if (name == "thm2") return RunTheorem2Suite(space);
  if (name == "thm3") return RunTheorem3Suite(space);
  if (name == "thm4") return RunTheorem4Suite(space);
  if (name == "introspect") return RunIntrospectSuite(space);
  throw std::invalid_argument("unknown suite '" + name + "'");
}

}  // namespace beaver
