#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "beaver/search.hpp"

namespace beaver {

// One line of the champion ledger:
// {"n":2,"m":2,"machine":"1RB1LB_1LA1RZ","steps":6,"nonblank":4,"verdict":"halted","cutoff":10000}
struct LedgerRecord {
  int n = 0;
  int m = 0;
  std::string machine;
  std::int64_t steps = 0;
  std::int64_t nonblank = 0;
  std::string verdict = "halted";
  std::int64_t cutoff = 0;

  friend bool operator==(const LedgerRecord&, const LedgerRecord&) = default;
};

inline constexpr const char* kDefaultLedgerPath = "beaver-ledger.jsonl";

std::string FormatLedgerLine(const LedgerRecord& record);
// Throws kMalformedText on a bad line.
LedgerRecord ParseLedgerLine(const std::string& line);

// Activity and productivity champions of a report, each listed once.
std::vector<LedgerRecord> ChampionRecords(const SearchReport& report);

void AppendLedger(const std::string& path, const std::vector<LedgerRecord>& records);
// Missing file reads as empty.
std::vector<LedgerRecord> ReadLedger(const std::string& path);

// Largest halting step count recorded for (n, m), if any.
std::optional<std::int64_t> LedgerSMax(const std::vector<LedgerRecord>& records, int n, int m);

}  // namespace beaver
