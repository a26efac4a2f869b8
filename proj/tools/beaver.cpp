// Batch front end: run, search, transform, verify, encode, decode, table.

#include <cstdlib>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "beaver/introspect.hpp"
#include "beaver/ledger.hpp"
#include "beaver/machine.hpp"
#include "beaver/search.hpp"
#include "beaver/simulator.hpp"
#include "beaver/suites.hpp"
#include "beaver/transforms.hpp"

namespace {

using namespace beaver;
using nlohmann::ordered_json;

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitFailed = 2;
constexpr int kExitGuard = 3;
constexpr int kExitCycler = 4;
constexpr int kExitStepLimit = 5;

bool json_lines = false;

void EmitJson(const ordered_json& record) {
  if (json_lines) std::cout << record.dump() << "\n";
}

std::string RenderTape(const RunResult& r, int symbols) {
  const Tape& tape = r.final_tape;
  std::ostringstream out;
  for (std::int64_t c = tape.leftmost(); c <= tape.rightmost(); ++c) {
    if (symbols > kMaxCompactSymbols && c != tape.leftmost()) out << ",";
    if (c == r.final_head) out << "[";
    out << tape.at(c);
    if (c == r.final_head) out << "]";
  }
  return out.str();
}

int ExitFor(const Error& e) {
  switch (e.code()) {
    case ErrorCode::kSpaceTooLarge:
    case ErrorCode::kConversionOverflow:
      return kExitGuard;
    case ErrorCode::kMalformedText:
    case ErrorCode::kStateOutOfRange:
    case ErrorCode::kSymbolOutOfRange:
    case ErrorCode::kMalformedBits:
      return kExitUsage;
    default:
      return kExitFailed;
  }
}

int Workers(int flag) {
  if (const char* env = std::getenv("BEAVER_WORKERS")) {
    try {
      int w = std::stoi(env);
      if (w >= 1) return w;
    } catch (const std::exception&) {
    }
    std::cerr << "ignoring BEAVER_WORKERS=" << env << "\n";
  }
  return flag;
}

int CmdRun(const std::string& text, std::int64_t max_steps, bool no_cycle_detect) {
  Machine machine = ParseMachine(text);
  SimLimits limits{max_steps, !no_cycle_detect};
  RunResult r = Simulate(machine, limits);
  std::cout << VerdictName(r.verdict) << " steps=" << r.steps << " nonblank=" << r.nonblank
            << "\n";
  std::cout << "tape: " << RenderTape(r, machine.symbols()) << "\n";
  EmitJson({{"machine", FormatMachine(machine)},
            {"verdict", VerdictName(r.verdict)},
            {"steps", r.steps},
            {"nonblank", r.nonblank}});
  switch (r.verdict) {
    case Verdict::kHalted:
      return kExitOk;
    case Verdict::kCycler:
      return kExitCycler;
    case Verdict::kStepLimit:
      return kExitStepLimit;
  }
  return kExitOk;
}

SearchSpace SpaceFor(int n, int m, std::optional<std::int64_t> cutoff) {
  SearchSpace space = MakeSpace(n, m);
  if (cutoff) space.limits.max_steps = *cutoff;
  return space;
}

int CmdSearch(int n, int m, std::optional<std::int64_t> cutoff, int workers,
              const std::string& ledger) {
  SearchSpace space = SpaceFor(n, m, cutoff);
  CheckGuard(space);
  SearchOptions options;
  options.workers = Workers(workers);
  SearchReport report = Search(space, options);
  std::cout << FormatReport(report);
  std::vector<LedgerRecord> records = ChampionRecords(report);
  if (!ledger.empty()) AppendLedger(ledger, records);
  EmitJson({{"n", n},
            {"m", m},
            {"cutoff", report.cutoff},
            {"sigma", report.sigma},
            {"s_max", report.s_max},
            {"halted", report.halted},
            {"cycler", report.cycler},
            {"undecided", report.undecided}});
  return kExitOk;
}

int CmdTransform(const std::string& kind, const std::string& text, const std::string& ledger,
                 bool assume_champion, std::int64_t max_steps) {
  Machine machine = ParseMachine(text);
  SimLimits limits{max_steps, true};
  Machine out = machine;
  TransformReport report;
  if (kind == "add-state") {
    TransformResult t = AddState(machine, limits);
    out = t.machine;
    report = t.report;
  } else if (kind == "third-symbol") {
    ChampionshipEvidence evidence;
    if (assume_champion) {
      evidence = ChampionshipEvidence::Assumed();
    } else {
      evidence.states = machine.states();
      evidence.symbols = machine.symbols();
      evidence.s_max = LedgerSMax(ReadLedger(ledger), machine.states(), machine.symbols());
    }
    TransformResult t = AddThirdSymbol(machine, evidence, limits);
    out = t.machine;
    report = t.report;
  } else if (kind == "two-state") {
    TransformResult t = ToTwoState(machine, limits);
    out = t.machine;
    report = t.report;
  } else if (kind == "triple") {
    TripleResult t = TripleAlphabet(machine, limits);
    out = t.machine;
    report = t.report;
  } else {
    std::cerr << "unknown kind '" << kind << "'\n";
    return kExitUsage;
  }
  std::cout << FormatMachine(out) << "\n" << FormatTransformReport(report);
  EmitJson({{"kind", report.kind},
            {"input", FormatMachine(machine)},
            {"output", FormatMachine(out)},
            {"steps_before", report.input_scores.steps},
            {"steps_after", report.output_scores.steps},
            {"nonblank_before", report.input_scores.nonblank},
            {"nonblank_after", report.output_scores.nonblank}});
  return kExitOk;
}

int CmdVerify(const std::string& suite, int n, int m, std::optional<std::int64_t> cutoff) {
  SearchSpace space = SpaceFor(n, m, cutoff);
  CheckGuard(space);
  SuiteResult result = RunSuite(suite, space);
  std::cout << FormatSuiteResult(result);
  EmitJson({{"suite", suite},
            {"n", n},
            {"m", m},
            {"passed", result.passed},
            {"checked", result.checked},
            {"counterexamples", result.counterexamples}});
  return result.passed ? kExitOk : kExitFailed;
}

int CmdEncode(const std::string& text, std::int64_t max_steps) {
  Machine machine = ParseMachine(text);
  SimLimits limits{max_steps, true};
  NormalizedMachine nm = NormalizeFirstVisit(PruneUnused(machine, limits), limits);
  DescriptionBits bits = EncodeDescription(nm, ClassifyTransitions(nm));
  std::cout << "normalized " << FormatMachine(nm.machine) << "\n";
  std::cout << "bits " << bits.size() << " (" << bits.part_lengths[0] << "+"
            << bits.part_lengths[1] << "+" << bits.part_lengths[2] << ")\n";
  std::cout << SerializeBits(bits) << "\n";
  EmitJson({{"machine", FormatMachine(nm.machine)},
            {"length", bits.size()},
            {"bits", SerializeBits(bits)}});
  return kExitOk;
}

int CmdDecode(const std::string& text, int symbols, std::int64_t max_steps) {
  DescriptionBits bits = ParseBits(text);
  Machine machine = DecodeDescription(bits, symbols, SimLimits{max_steps, true});
  std::cout << FormatMachine(machine) << "\n";
  EmitJson({{"machine", FormatMachine(machine)}});
  return kExitOk;
}

int CmdTable(int max_n, int max_m, std::optional<std::int64_t> cutoff, int workers) {
  SearchOptions options;
  options.workers = Workers(workers);
  std::vector<std::string> footnotes;
  std::ostringstream out;
  out << "n\\m";
  for (int m = 2; m <= max_m; ++m) out << "\t" << m;
  out << "\n";
  for (int n = 1; n <= max_n; ++n) {
    out << n;
    for (int m = 2; m <= max_m; ++m) {
      SearchSpace space = SpaceFor(n, m, cutoff);
      try {
        CheckGuard(space);
      } catch (const Error&) {
        out << "\t—";
        continue;
      }
      SearchReport r = Search(space, options);
      out << "\t" << r.sigma << "/" << r.s_max;
      if (r.undecided > 0) {
        footnotes.push_back("(" + std::to_string(n) + "," + std::to_string(m) + "): " +
                            std::to_string(r.undecided) + " undecided at cutoff " +
                            std::to_string(r.cutoff));
        out << "*" << footnotes.size();
      }
      EmitJson({{"n", n}, {"m", m}, {"sigma", r.sigma}, {"s_max", r.s_max},
                {"undecided", r.undecided}});
    }
    out << "\n";
  }
  std::cout << out.str();
  std::cout << "cells: sigma/s_max; — outside the search guard\n";
  for (std::size_t i = 0; i < footnotes.size(); ++i) {
    std::cout << "*" << i + 1 << " " << footnotes[i] << "\n";
  }
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Busy beaver search and machine transformations"};
  app.require_subcommand(1);
  app.add_flag("--json-lines", json_lines, "Also print one JSON record per result");

  std::string machine_text;
  std::int64_t max_steps = 10'000;
  bool no_cycle_detect = false;
  auto* run = app.add_subcommand("run", "Run a machine on a blank tape");
  run->add_option("machine", machine_text, "Machine string")->required();
  run->add_option("--max-steps", max_steps, "Step limit")->check(CLI::PositiveNumber);
  run->add_flag("--no-cycle-detect", no_cycle_detect, "Disable cycle detection");

  int n = 0;
  int m = 0;
  std::optional<std::int64_t> cutoff;
  int workers = 1;
  std::string ledger = kDefaultLedgerPath;
  auto* search = app.add_subcommand("search", "Exhaustive search of one (n, m) space");
  search->add_option("n", n, "States")->required()->check(CLI::PositiveNumber);
  search->add_option("m", m, "Symbols")->required()->check(CLI::Range(2, kMaxCompactSymbols));
  search->add_option("--cutoff", cutoff, "Step cutoff")->check(CLI::PositiveNumber);
  search->add_option("--workers", workers, "Worker threads")->check(CLI::PositiveNumber);
  search->add_option("--ledger", ledger, "Champion ledger path (empty to skip)");

  std::string kind;
  bool assume_champion = false;
  auto* transform = app.add_subcommand("transform", "Apply a machine transformation");
  transform->add_option("--kind", kind, "add-state|third-symbol|two-state|triple")
      ->required()
      ->check(CLI::IsMember({"add-state", "third-symbol", "two-state", "triple"}));
  transform->add_option("machine", machine_text, "Machine string")->required();
  transform->add_option("--ledger", ledger, "Ledger consulted for championship");
  transform->add_flag("--assume-champion", assume_champion,
                      "Skip the ledger championship check");
  transform->add_option("--max-steps", max_steps, "Step limit for the input run");

  std::string suite;
  auto* verify = app.add_subcommand("verify", "Run a property suite over a space");
  verify->add_option("--suite", suite, "Suite name")->required()->check(
      CLI::IsMember(SuiteNames()));
  verify->add_option("n", n, "States")->required()->check(CLI::PositiveNumber);
  verify->add_option("m", m, "Symbols")->required()->check(CLI::Range(2, kMaxCompactSymbols));
  verify->add_option("--cutoff", cutoff, "Step cutoff")->check(CLI::PositiveNumber);

  auto* encode = app.add_subcommand("encode", "Encode a halting machine's description");
  encode->add_option("machine", machine_text, "Machine string")->required();
  encode->add_option("--max-steps", max_steps, "Step limit");

  std::string bits_text;
  auto* decode = app.add_subcommand("decode", "Rebuild a machine from its description");
  decode->add_option("bits", bits_text, "Encoded description")->required();
  decode->add_option("--symbols", m, "Symbols")->required()->check(CLI::Range(2, kMaxSymbols));
  decode->add_option("--max-steps", max_steps, "Step limit for the replay");

  int max_n = 3;
  int max_m = 2;
  auto* table = app.add_subcommand("table", "Score grid over small spaces");
  table->add_option("--max-n", max_n, "Largest state count")->check(CLI::PositiveNumber);
  table->add_option("--max-m", max_m, "Largest symbol count")
      ->check(CLI::Range(2, kMaxCompactSymbols));
  table->add_option("--cutoff", cutoff, "Step cutoff")->check(CLI::PositiveNumber);
  table->add_option("--workers", workers, "Worker threads")->check(CLI::PositiveNumber);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (*run) return CmdRun(machine_text, max_steps, no_cycle_detect);
    if (*search) return CmdSearch(n, m, cutoff, workers, ledger);
    if (*transform) return CmdTransform(kind, machine_text, ledger, assume_champion, max_steps);
    if (*verify) return CmdVerify(suite, n, m, cutoff);
    if (*encode) return CmdEncode(machine_text, max_steps);
    if (*decode) return CmdDecode(bits_text, m, max_steps);
    if (*table) return CmdTable(max_n, max_m, cutoff, workers);
  } catch (const Error& e) {
    std::cerr << e.what() << "\n";
    return ExitFor(e);
  } catch (const std::exception& e) {
    std::cerr << e.what() << "\n";
    return kExitUsage;
  }
  return kExitUsage;
}
