#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "beaver/search.hpp"
#include "beaver/transforms.hpp"
#include "oracle.hpp"

using namespace beaver;

namespace {

const SimLimits kLimits{10'000, true};

ErrorCode CodeOf(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("no error thrown");
  return ErrorCode::kMalformedText;
}

}  // namespace

TEST_CASE("add a state to the one-state halter") {
  TransformResult t = AddState(ParseMachine("1RZ1RZ"), kLimits);
  CHECK(t.machine.states() == 2);
  oracle::Outcome o = oracle::Run(t.machine, 100);
  CHECK(o.halted);
  CHECK(o.steps == 2);
  CHECK(o.nonblank == 2);
  CHECK(t.report.input_scores.steps == 1);
  CHECK(t.report.output_scores.steps == 2);
  CHECK(t.report.output_scores.nonblank == 2);
  CHECK(t.report.halting_before == t.report.halting_after);
}

TEST_CASE("add a state to a halter that leaves the tape blank") {
  TransformResult t = AddState(ParseMachine("0RZ0RZ"), kLimits);
  CHECK(t.report.output_scores.steps == 2);
  CHECK(t.report.output_scores.nonblank == 1);
}

TEST_CASE("add state over every halting raw (2,2) table") {
  oracle::ForEachTable(2, 2, [&](const Machine& m) {
    oracle::Outcome in = oracle::Run(m, 100);
    if (!in.halted) return;
    TransformResult t = AddState(m, kLimits);
    oracle::Outcome out = oracle::Run(t.machine, 1000);
    REQUIRE(out.halted);
    CHECK(out.steps > in.steps);
    CHECK(out.nonblank == in.nonblank + 1);
    CHECK(CountHalting(t.machine) == CountHalting(m));
  });
}

TEST_CASE("add state needs a halting input") {
  CHECK(CodeOf([] { AddState(ParseMachine("1RA1RA"), kLimits); }) == ErrorCode::kDoesNotHalt);
}

TEST_CASE("verify transform catches a false strict claim") {
  Machine m = ParseMachine("1RB1LB_1LA1RZ");
  Claims strict;
  strict.activity = Relation::kGreater;
  try {
    VerifyTransform(m, m, strict, kLimits);
    FAIL("expected a claim violation");
  } catch (const ClaimViolation& v) {
    CHECK(v.code() == ErrorCode::kClaimViolated);
    CHECK(v.input_run().steps == 6);
    CHECK(v.output_run().steps == 6);
  }
  Claims equal;
  equal.activity = Relation::kEqual;
  equal.productivity = Relation::kEqual;
  equal.halting_count_preserved = true;
  TransformReport r = VerifyTransform(m, m, equal, kLimits);
  CHECK(r.checked);
  CHECK(r.activity_gain() == 0);

  TransformResult added = AddState(ParseMachine("1RZ1RZ"), kLimits);
  Claims lemma;
  lemma.activity = Relation::kGreater;
  lemma.productivity_delta = 1;
  lemma.halting_count_preserved = true;
  CHECK_NOTHROW(VerifyTransform(ParseMachine("1RZ1RZ"), added.machine, lemma, kLimits));
}

TEST_CASE("verify transform demands a halting output") {
  Claims any;
  CHECK(CodeOf([&] { VerifyTransform(ParseMachine("1RZ1RZ"), ParseMachine("1RA1RA"), any, kLimits); }) ==
        ErrorCode::kClaimViolated);
}

TEST_CASE("third symbol on the champions") {
  struct Case {
    const char* machine;
    int states;
    std::int64_t steps;
  };
  for (Case c : {Case{"1RB1LB_1LA1RZ", 2, 6}, Case{"1RB1RZ_1LB0RC_1LC1LA", 3, 21},
                 Case{"1RB1LB_1LA0LC_1RZ1LD_1RD0RA", 4, 107}}) {
    Machine m = ParseMachine(c.machine);
    ChampionshipEvidence evidence;
    evidence.states = c.states;
    evidence.symbols = 2;
    evidence.s_max = c.steps;
    TransformResult t = AddThirdSymbol(m, evidence, {200'000, true});
    CHECK(t.machine.symbols() == 3);
    CHECK(t.machine.states() == c.states);
    oracle::Outcome o = oracle::Run(t.machine, 1000);
    REQUIRE(o.halted);
    CHECK((o.steps == c.steps + 1 || o.steps == c.steps + 2));
    CHECK(t.report.output_scores.steps == o.steps);
    CHECK_FALSE(t.report.champion_assumed);
  }
}

TEST_CASE("third symbol on every (2,2) and (3,2) activity champion") {
  for (auto n : {2, 3}) {
    SearchReport r = Search(MakeSpace(n, 2));
    for (const Champion& c : r.s_champions) {
      Machine m = ParseMachine(c.machine);
      for (const Machine& input : {m, Mirror(m)}) {
        TransformResult t = AddThirdSymbol(input, ChampionshipEvidence::FromReport(r), kLimits);
        const std::int64_t gain = t.report.activity_gain();
        CHECK_MESSAGE((gain == 1 || gain == 2), c.machine);
      }
    }
  }
}

TEST_CASE("third symbol preconditions") {
  ChampionshipEvidence six;
  six.states = 2;
  six.symbols = 2;
  six.s_max = 6;
  CHECK(CodeOf([&] { AddThirdSymbol(ParseMachine("1RB2LA1RA_2LA2RB0RZ"), six, kLimits); }) ==
        ErrorCode::kNotBinary);
  CHECK(CodeOf([&] { AddThirdSymbol(ParseMachine("1RZ1RZ"), six, kLimits); }) ==
        ErrorCode::kTooFewStates);
  CHECK(CodeOf([&] { AddThirdSymbol(ParseMachine("1RB1RZ_1LA1RZ"), six, kLimits); }) ==
        ErrorCode::kNotChampion);
  CHECK(CodeOf([&] { AddThirdSymbol(ParseMachine("1RB1LB_1LA1RZ"), ChampionshipEvidence{}, kLimits); }) ==
        ErrorCode::kNotChampion);
  TransformResult assumed =
      AddThirdSymbol(ParseMachine("1RB1LB_1LA1RZ"), ChampionshipEvidence::Assumed(), kLimits);
  CHECK(assumed.report.champion_assumed);
}

TEST_CASE("triple alphabet on a machine that never turns") {
  TripleResult t = TripleAlphabet(ParseMachine("1RZ1RZ"), kLimits);
  CHECK(t.machine.symbols() == 6);
  CHECK(t.report.output_scores.steps == 1);
  CHECK(t.report.activity_gain() == 0);
  Claims strict;
  strict.activity = Relation::kGreater;
  CHECK(CodeOf([&] { VerifyTransform(ParseMachine("1RZ1RZ"), t.machine, strict, kLimits); }) ==
        ErrorCode::kClaimViolated);
}

TEST_CASE("triple alphabet on the (2,2) champion") {
  Machine m = ParseMachine("1RB1LB_1LA1RZ");
  TripleResult t = TripleAlphabet(m, kLimits);
  CHECK(t.machine.symbols() == 6);
  oracle::Outcome o = oracle::Run(t.machine, 1000);
  REQUIRE(o.halted);
  CHECK(o.steps > 6);
  // Projected final tape equals the input's final tape.
  oracle::Outcome base = oracle::Run(m, 100);
  std::map<std::int64_t, int> projected;
  for (auto [cell, s] : o.tape) {
    if (s % 2) projected[cell] = s % 2;
  }
  CHECK(projected == base.tape);
  LockstepResult lock = CheckLockstep(m, t.machine, t.h, 100);
  CHECK(lock.ok);
  // Six steps plus the halted configuration.
  CHECK(lock.matched_steps == 7);
}

TEST_CASE("lockstep detects a wrong projection") {
  Machine m = ParseMachine("1RB1LB_1LA1RZ");
  TripleResult t = TripleAlphabet(m, kLimits);
  // Relabel written symbols so the projection no longer matches.
  Machine broken = t.machine;
  Rule r = broken.rule(0, 0);
  r.write = 0;
  broken.set_rule(0, 0, r);
  CHECK_FALSE(CheckLockstep(m, broken, t.h, 100).ok);
}

TEST_CASE("triple alphabet keeps non-halting inputs non-halting") {
  TripleResult t = TripleAlphabet(ParseMachine("1RA1RA"), kLimits);
  CHECK_FALSE(t.report.output_halted);
  CHECK(CodeOf([] { TripleAlphabet(ParseMachine("1RA1RA"), kLimits, true); }) ==
        ErrorCode::kDoesNotHalt);
}

TEST_CASE("two-state conversion of the (2,2) champion") {
  CHECK(TwoStateSymbolBound(2, 2) == 26);
  TransformResult t = ToTwoState(ParseMachine("1RB1LB_1LA1RZ"), kLimits);
  CHECK(t.machine.states() == 2);
  CHECK(t.machine.symbols() <= 26);
  oracle::Outcome o = oracle::Run(t.machine, 10'000);
  REQUIRE(o.halted);
  CHECK(o.steps > 6);
  CHECK(o.nonblank > 4);
  CHECK(t.report.extended_format);
  CHECK(ParseMachine(FormatMachine(t.machine)) == t.machine);
}

TEST_CASE("two-state conversion over every halting raw (2,2) table") {
  oracle::ForEachTable(2, 2, [&](const Machine& m) {
    oracle::Outcome in = oracle::Run(m, 100);
    if (!in.halted) return;
    TransformResult t = ToTwoState(m, kLimits);
    oracle::Outcome out = oracle::Run(t.machine, 100'000);
    REQUIRE(out.halted);
    CHECK(out.steps > in.steps);
    CHECK(out.nonblank > in.nonblank);
    CHECK(t.machine.states() == 2);
    CHECK(t.machine.symbols() <= 26);
  });
}

TEST_CASE("two-state conversion on a larger machine") {
  // 3-symbol champion: symbol bound 4*3*3+3 = 39.
  TransformResult t = ToTwoState(ParseMachine("1RB2LB1RZ_2LA2RB1LB"), kLimits);
  CHECK(t.machine.symbols() <= 39);
  CHECK(t.report.output_scores.steps > 38);
}

TEST_CASE("two-state conversion preconditions") {
  CHECK(CodeOf([] { ToTwoState(ParseMachine("1RZ1RZ"), kLimits); }) == ErrorCode::kTooFewStates);
  CHECK(CodeOf([] { ToTwoState(Machine::AllHalt(25, 10), kLimits); }) ==
        ErrorCode::kConversionOverflow);
  CHECK(CodeOf([] { ToTwoState(ParseMachine("1RB1LB_1LA1RA"), kLimits); }) ==
        ErrorCode::kDoesNotHalt);
}
