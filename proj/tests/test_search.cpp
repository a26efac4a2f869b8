#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <numeric>
#include <set>

#include "beaver/search.hpp"
#include "oracle.hpp"

using namespace beaver;

namespace {

// Partial table as tokens: "---" or a three-character rule.
std::vector<std::string> Tokens(const std::string& partial) {
  std::vector<std::string> out;
  for (std::size_t i = 0; i < partial.size();) {
    if (partial[i] == '_') {
      ++i;
      continue;
    }
    out.push_back(partial.substr(i, 3));
    i += 3;
  }
  return out;
}

// Smallest rendering over renamings of states B.., non-blank symbols, and mirror.
std::string Canonical(const std::string& partial, int n, int m) {
  const std::vector<std::string> cells = Tokens(partial);
  std::vector<int> states(n - 1), symbols(m - 1);
  std::string best;
  std::iota(states.begin(), states.end(), 1);
  do {
    std::iota(symbols.begin(), symbols.end(), 1);
    do {
      for (bool mirror : {false, true}) {
        std::vector<std::string> out(cells.size());
        auto ps = [&](int q) { return q == 0 ? 0 : states[q - 1]; };
        auto pm = [&](int s) { return s == 0 ? 0 : symbols[s - 1]; };
        for (int q = 0; q < n; ++q) {
          for (int s = 0; s < m; ++s) {
            std::string tok = cells[q * m + s];
            if (tok != "---") {
              tok[0] = static_cast<char>('0' + pm(tok[0] - '0'));
              if (mirror) tok[1] = tok[1] == 'L' ? 'R' : 'L';
              if (tok[2] != 'Z') tok[2] = static_cast<char>('A' + ps(tok[2] - 'A'));
            }
            out[ps(q) * m + pm(s)] = tok;
          }
        }
        std::string joined;
        for (const auto& t : out) joined += t;
        if (best.empty() || joined < best) best = joined;
      }
    } while (std::next_permutation(symbols.begin(), symbols.end()));
  } while (std::next_permutation(states.begin(), states.end()));
  return best;
}

struct BruteForce {
  std::int64_t sigma = 0;
  std::int64_t s_max = 0;
  std::set<std::pair<std::int64_t, std::int64_t>> scores;
};

BruteForce AllTables(int n, int m, std::int64_t cutoff) {
  BruteForce b;
  oracle::ForEachTable(n, m, [&](const Machine& machine) {
    oracle::Outcome o = oracle::Run(machine, cutoff);
    if (!o.halted) return;
    b.sigma = std::max(b.sigma, o.nonblank);
    b.s_max = std::max(b.s_max, o.steps);
    b.scores.insert({o.steps, o.nonblank});
  });
  return b;
}

}  // namespace

TEST_CASE("resource guard") {
  CHECK(EstimateClassCount(2, 2) == doctest::Approx(20736.0));
  for (auto [n, m] : {std::pair{1, 2}, {2, 2}, {3, 2}, {4, 2}, {2, 3}}) {
    CHECK_NOTHROW(CheckGuard(MakeSpace(n, m)));
  }
  for (auto [n, m] : {std::pair{5, 2}, {3, 3}, {2, 4}}) {
    try {
      CheckGuard(MakeSpace(n, m));
      FAIL("expected the guard to fire");
    } catch (const Error& e) {
      CHECK(e.code() == ErrorCode::kSpaceTooLarge);
    }
  }
  SearchSpace raised = MakeSpace(5, 2);
  raised.class_ceiling = 1e20;
  CHECK_NOTHROW(CheckGuard(raised));
  CHECK_THROWS_AS(Search(MakeSpace(3, 3)), Error);
}

TEST_CASE("default cutoffs") {
  CHECK(DefaultCutoff(2, 2) == 10'000);
  CHECK(DefaultCutoff(3, 2) == 10'000);
  CHECK(DefaultCutoff(4, 2) == 100'000);
  CHECK(MakeSpace(4, 2).limits.max_steps == 100'000);
}

TEST_CASE("decide") {
  SearchSpace space = MakeSpace(2, 2);
  DecideResult cyc = Decide(ParseMachine("1RA1RA"), MakeSpace(1, 2));
  CHECK(cyc.decision == Decision::kCycler);
  DecideResult champ = Decide(ParseMachine("1RB1LB_1LA1RZ"), space);
  CHECK(champ.decision == Decision::kHalted);
  CHECK(champ.steps == 6);
  CHECK(champ.nonblank == 4);
  // No halting rule reachable from A.
  DecideResult unreachable = Decide(ParseMachine("1RB1LB_1LA1RA"), space);
  CHECK(unreachable.decision == Decision::kCycler);
  CHECK(unreachable.proof == NonHaltProof::kHaltUnreachable);

  // A long-running (4,2) halter under a cutoff it cannot meet.
  SearchSpace tight = MakeSpace(4, 2);
  tight.limits.max_steps = 50;
  Machine brady = ParseMachine("1RB1LB_1LA0LC_1RZ1LD_1RD0RA");
  DecideResult und = Decide(brady, tight);
  CHECK(und.decision == Decision::kUndecided);
  DecideResult full = Decide(brady, MakeSpace(4, 2));
  CHECK(full.decision == Decision::kHalted);
  CHECK(full.steps == 107);
  CHECK(full.nonblank == 13);
}

TEST_CASE("one-state space") {
  SearchReport r = Search(MakeSpace(1, 2));
  CHECK(r.sigma == 1);
  CHECK(r.s_max == 1);
  CHECK(r.halted >= 1);
  CHECK(r.undecided == 0);
}

TEST_CASE("(2,2) maxima against every raw table") {
  BruteForce brute = AllTables(2, 2, 1000);
  SearchReport r = Search(MakeSpace(2, 2));
  CHECK(brute.sigma == 4);
  CHECK(brute.s_max == 6);
  CHECK(r.sigma == brute.sigma);
  CHECK(r.s_max == brute.s_max);
  CHECK(r.sigma <= r.s_max);

  // Representatives only ever report scores some raw table attains.
  std::set<std::pair<std::int64_t, std::int64_t>> tnf;
  EnumerateTnf(MakeSpace(2, 2), [&](const Leaf& leaf) {
    if (leaf.result.decision == Decision::kHalted) {
      tnf.insert({leaf.result.steps, leaf.result.nonblank});
    }
  });
  CHECK(std::includes(brute.scores.begin(), brute.scores.end(), tnf.begin(), tnf.end()));
  CHECK(tnf.count({6, 4}) == 1);
}

TEST_CASE("(1,2) maxima against every raw table") {
  BruteForce brute = AllTables(1, 2, 100);
  SearchReport r = Search(MakeSpace(1, 2));
  CHECK(r.sigma == brute.sigma);
  CHECK(r.s_max == brute.s_max);
}

TEST_CASE("representatives are pairwise inequivalent") {
  for (auto [n, m] : {std::pair{2, 2}, {2, 3}, {3, 2}}) {
    std::set<std::string> seen;
    std::int64_t count = 0;
    EnumerateTnf(MakeSpace(n, m), [&](const Leaf& leaf) {
      ++count;
      CHECK(leaf.machine.states() == n);
      CHECK(leaf.machine.symbols() == m);
      const std::string canon = Canonical(leaf.partial, n, m);
      CHECK_MESSAGE(seen.insert(canon).second, leaf.partial);
    });
    CHECK(count == static_cast<std::int64_t>(seen.size()));
  }
}

TEST_CASE("first transition is fixed") {
  EnumerateTnf(MakeSpace(3, 2), [&](const Leaf& leaf) {
    if (leaf.partial.substr(0, 3) == "---") return;
    const Rule& r = leaf.machine.rule(0, 0);
    if (r.halts()) return;
    CHECK(r.write == 1);
    CHECK(r.move == Direction::kRight);
    CHECK(r.next == 1);
  });
}

TEST_CASE("champions reproduce under simulate") {
  for (auto [n, m] : {std::pair{2, 2}, {3, 2}, {2, 3}}) {
    SearchReport r = Search(MakeSpace(n, m));
    for (const auto* list : {&r.s_champions, &r.sigma_champions}) {
      CHECK_FALSE(list->empty());
      for (const Champion& c : *list) {
        RunResult run = Simulate(ParseMachine(c.machine), {r.cutoff, true});
        CHECK(run.halted());
        CHECK(run.steps == c.steps);
        CHECK(run.nonblank == c.nonblank);
      }
    }
    CHECK(r.sigma <= r.s_max);
  }
}

TEST_CASE("published small values") {
  SearchReport r22 = Search(MakeSpace(2, 2));
  CHECK(r22.sigma == 4);
  CHECK(r22.s_max == 6);
  SearchReport r32 = Search(MakeSpace(3, 2));
  CHECK(r32.sigma == 6);
  CHECK(r32.s_max == 21);
  CHECK(ActivityProductivityGap(r32) == 5);
  SearchReport r23 = Search(MakeSpace(2, 3));
  CHECK(r23.sigma == 9);
  CHECK(r23.s_max == 38);
  for (const SearchReport* r : {&r22, &r32, &r23}) CHECK(CheckLemma2(*r));
}

TEST_CASE("worker count does not change the report") {
  for (auto [n, m] : {std::pair{2, 2}, {2, 3}, {3, 2}}) {
    SearchReport one = Search(MakeSpace(n, m), {1, 4});
    for (int workers : {2, 3, 8}) {
      SearchReport many = Search(MakeSpace(n, m), {workers, 4});
      CHECK(many == one);
      CHECK(FormatReport(many) == FormatReport(one));
    }
  }
}

TEST_CASE("one-direction machines halt within n steps") {
  for (auto [n, m] : {std::pair{1, 2}, {2, 2}, {2, 3}, {3, 2}}) {
    Lemma3Result r = CheckLemma3(n, m, {});
    CHECK(r.holds);
    CHECK(r.counterexamples.empty());
    CHECK(r.checked > 0);
    CHECK(r.halting > 0);
  }
}

TEST_CASE("lemma 2 check") {
  SearchReport fake;
  fake.states = 3;
  fake.s_max = 3;
  CHECK_FALSE(CheckLemma2(fake));
  fake.s_max = 4;
  CHECK(CheckLemma2(fake));
}
