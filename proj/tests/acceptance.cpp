// Acceptance run: one PASS/FAIL line per criterion, then a summary.
//
// The parallel speedup part of criterion 5 needs at least 8 hardware threads.
// On smaller hosts it is reported as FAIL with the reason, and counted as
// blocked by the environment rather than failing the exit status.

#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "beaver/search.hpp"
#include "beaver/suites.hpp"

using namespace beaver;

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
  bool environment_blocked = false;
};

using Clock = std::chrono::steady_clock;

double Seconds(Clock::time_point since) {
  return std::chrono::duration<double>(Clock::now() - since).count();
}

std::vector<int> failed;
std::vector<int> blocked;

void Report(int id, const std::string& title, double seconds, const Outcome& o) {
  std::printf("criterion %2d: %s  %-44s %8.2fs  %s\n", id, o.pass ? "PASS" : "FAIL", title.c_str(),
              seconds, o.detail.c_str());
  std::fflush(stdout);
  if (!o.pass) (o.environment_blocked ? blocked : failed).push_back(id);
}

void Run(int id, const std::string& title, const std::function<Outcome()>& body) {
  const auto start = Clock::now();
  Outcome o;
  try {
    o = body();
  } catch (const std::exception& e) {
    o = {false, std::string("error: ") + e.what()};
  }
  Report(id, title, Seconds(start), o);
}

struct Timed {
  SearchReport report;
  double seconds = 0;
};

Timed TimedSearch(int n, int m, std::int64_t cutoff, int workers = 1) {
  SearchSpace space = MakeSpace(n, m);
  space.limits.max_steps = cutoff;
  const auto start = Clock::now();
  SearchOptions options;
  options.workers = workers;
  SearchReport r = Search(space, options);
  return {std::move(r), Seconds(start)};
}

Outcome Values(const Timed& t, std::int64_t sigma, std::int64_t s_max, double budget) {
  std::ostringstream d;
  d << "sigma=" << t.report.sigma << " s_max=" << t.report.s_max
    << " undecided=" << t.report.undecided << " search " << t.seconds << "s (budget " << budget
    << "s)";
  return {t.report.sigma == sigma && t.report.s_max == s_max && t.seconds < budget, d.str()};
}

Outcome FromSuites(const std::vector<SuiteResult>& results) {
  Outcome o{true, ""};
  for (const SuiteResult& r : results) {
    o.pass = o.pass && r.passed;
    o.detail += r.name + (r.passed ? " pass" : " FAIL") + " (" + std::to_string(r.checked) +
                " checked";
    for (const auto& d : r.details) {
      if (d.find("->") == std::string::npos) o.detail += ", " + d;
    }
    o.detail += ") ";
    if (!r.passed) std::cout << FormatSuiteResult(r);
  }
  return o;
}

SearchSpace Space(int n, int m) {
  SearchSpace s = MakeSpace(n, m);
  s.limits.max_steps = n <= 3 ? 10'000 : 100'000;
  return s;
}

}  // namespace

int main() {
  std::vector<SearchReport> searched;
  SearchReport r32;
  SearchReport r42;
  SearchReport r22;

  Run(1, "search(1,2) = 1/1", [&] {
    Timed t = TimedSearch(1, 2, 10'000);
    searched.push_back(t.report);
    return Values(t, 1, 1, 1.0);
  });
  Run(2, "search(2,2) = 4/6", [&] {
    Timed t = TimedSearch(2, 2, 10'000);
    searched.push_back(t.report);
    r22 = t.report;
    return Values(t, 4, 6, 5.0);
  });
  Run(3, "search(3,2) = 6/21", [&] {
    Timed t = TimedSearch(3, 2, 10'000);
    searched.push_back(t.report);
    r32 = t.report;
    return Values(t, 6, 21, 60.0);
  });
  Run(4, "search(2,3) = 9/38", [&] {
    Timed t = TimedSearch(2, 3, 10'000);
    searched.push_back(t.report);
    return Values(t, 9, 38, 300.0);
  });
  Run(5, "search(4,2) = 13/107, parallel speedup", [&] {
    Timed t = TimedSearch(4, 2, 100'000);
    searched.push_back(t.report);
    r42 = t.report;
    Outcome o = Values(t, 13, 107, 1800.0);
    const unsigned threads = std::thread::hardware_concurrency();
    if (!o.pass) return o;
    if (threads < 8) {
      o.pass = false;
      o.environment_blocked = true;
      o.detail += "; speedup to 8 workers not measurable on " + std::to_string(threads) +
                  " hardware thread(s)";
      return o;
    }
    Timed p = TimedSearch(4, 2, 100'000, 8);
    const double speedup = t.seconds / p.seconds;
    o.detail += "; 8 workers " + std::to_string(p.seconds) + "s, speedup " +
                std::to_string(speedup);
    o.pass = p.report == t.report && speedup >= 6.0;
    return o;
  });
  Run(6, "(3,2) max nonblank at s_max is 5", [&] {
    const std::int64_t gap = ActivityProductivityGap(r32);
    return Outcome{gap == 5, "max nonblank among steps=21 machines: " + std::to_string(gap)};
  });
  Run(7, "add-state suite on (2,2), (2,3)", [&] {
    return FromSuites({RunLemma1Suite(Space(2, 2)), RunLemma1Suite(Space(2, 3))});
  });
  Run(8, "s_max > n on searched spaces with n >= 2", [&] {
    Outcome o{!searched.empty(), ""};
    for (const SearchReport& r : searched) {
      // The bound is claimed for n, m >= 2 only; S(1,2) = 1.
      if (r.states < 2) {
        o.detail += "(" + std::to_string(r.states) + "," + std::to_string(r.symbols) +
                    "): n<2 excluded ";
        continue;
      }
      const bool ok = CheckLemma2(r);
      o.pass = o.pass && ok;
      o.detail += "(" + std::to_string(r.states) + "," + std::to_string(r.symbols) + "): " +
                  std::to_string(r.s_max) + (ok ? ">" : "<=") + std::to_string(r.states) + " ";
    }
    return o;
  });
  Run(9, "one-direction halters within n steps", [&] {
    return FromSuites(
        {RunLemma3Suite(Space(2, 2)), RunLemma3Suite(Space(2, 3)), RunLemma3Suite(Space(3, 2))});
  });
  Run(10, "third symbol adds 1 or 2 steps to champions", [&] {
    return FromSuites({RunTheorem2Suite(Space(2, 2), r22), RunTheorem2Suite(Space(3, 2), r32),
                       RunTheorem2Suite(Space(4, 2), r42)});
  });
  Run(11, "triple alphabet lockstep on (2,2)", [&] {
    return FromSuites({RunTheorem4Suite(Space(2, 2))});
  });
  Run(12, "two-state conversion on (2,2)", [&] {
    return FromSuites({RunTheorem3Suite(Space(2, 2))});
  });
  Run(13, "description round trip on (2,2), (2,3)", [&] {
    return FromSuites({RunIntrospectSuite(Space(2, 2)), RunIntrospectSuite(Space(2, 3))});
  });
  Run(14, "(3,2) report identical for 1 and 8 workers", [&] {
    Timed one = TimedSearch(3, 2, 10'000, 1);
    Timed eight = TimedSearch(3, 2, 10'000, 8);
    const std::string a = FormatReport(one.report);
    const std::string b = FormatReport(eight.report);
    return Outcome{a == b, std::to_string(a.size()) + " bytes, " + (a == b ? "identical" : "differ")};
  });

  std::printf("summary: %d of 14 passed", 14 - static_cast<int>(failed.size() + blocked.size()));
  if (!blocked.empty()) {
    std::printf("; blocked by environment:");
    for (int id : blocked) std::printf(" %d", id);
  }
  if (!failed.empty()) {
    std::printf("; failed:");
    for (int id : failed) std::printf(" %d", id);
  }
  std::printf("\n");
  return failed.empty() ? 0 : 1;
}
