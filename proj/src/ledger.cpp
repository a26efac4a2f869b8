#include "beaver/ledger.hpp"

#include <algorithm>
#include <fstream>
#include <json.hpp>

namespace beaver {

std::string FormatLedgerLine(const LedgerRecord& r) {
  nlohmann::ordered_json j;
  j["n"] = r.n;
  j["m"] = r.m;
  j["machine"] = r.machine;
  j["steps"] = r.steps;
  j["nonblank"] = r.nonblank;
  j["verdict"] = r.verdict;
  j["cutoff"] = r.cutoff;
  return j.dump();
}

LedgerRecord ParseLedgerLine(const std::string& line) {
  try {
    const auto j = nlohmann::json::parse(line);
    LedgerRecord r;
    r.n = j.at("n").get<int>();
    r.m = j.at("m").get<int>();
    r.machine = j.at("machine").get<std::string>();
    r.steps = j.at("steps").get<std::int64_t>();
    r.nonblank = j.at("nonblank").get<std::int64_t>();
    r.verdict = j.at("verdict").get<std::string>();
    r.cutoff = j.at("cutoff").get<std::int64_t>();
    return r;
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::kMalformedText, std::string("ledger line: ") + e.what());
  }
}

std::vector<LedgerRecord> ChampionRecords(const SearchReport& report) {
  std::vector<Champion> all = report.s_champions;
  all.insert(all.end(), report.sigma_champions.begin(), report.sigma_champions.end());
  std::sort(all.begin(), all.end());
  all.erase(std::unique(all.begin(), all.end()), all.end());
  std::vector<LedgerRecord> out;
  for (const Champion& c : all) {
    out.push_back({report.states, report.symbols, c.machine, c.steps, c.nonblank, "halted",
                   report.cutoff});
  }
  return out;
}

void AppendLedger(const std::string& path, const std::vector<LedgerRecord>& records) {
  std::ofstream out(path, std::ios::app);
  if (!out) throw std::runtime_error("cannot open ledger " + path);
  for (const auto& r : records) out << FormatLedgerLine(r) << "\n";
}

std::vector<LedgerRecord> ReadLedger(const std::string& path) {
  std::vector<LedgerRecord> records;
  std::ifstream in(path);
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty()) records.push_back(ParseLedgerLine(line));
  }
  return records;
}

std::optional<std::int64_t> LedgerSMax(const std::vector<LedgerRecord>& records, int n, int m) {
  std::optional<std::int64_t> best;
  for (const auto& r : records) {
    if (r.n == n && r.m == m && r.verdict == "halted" && (!best || r.steps > *best)) best = r.steps;
  }
  return best;
}

}  // namespace beaver
