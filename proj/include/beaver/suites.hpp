#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "beaver/search.hpp"

namespace beaver {

struct SuiteResult {
  std::string name;
  bool passed = true;
  std::int64_t checked = 0;
  std::vector<std::string> counterexamples;
  // Extra figures worth printing, e.g. the fitted description constant.
  std::vector<std::string> details;

  void Fail(std::string what) {
    passed = false;
    counterexamples.push_back(std::move(what));
  }
};

std::string FormatSuiteResult(const SuiteResult& result);

// Names accepted by RunSuite.
const std::vector<std::string>& SuiteNames();

// Adding a state: activity up, productivity up by exactly one, halting count kept.
SuiteResult RunLemma1Suite(const SearchSpace& space);
SuiteResult RunLemma2Suite(const SearchSpace& space);
SuiteResult RunLemma3Suite(const SearchSpace& space);
// Third symbol on every activity champion; `report` reuses a finished search.
SuiteResult RunTheorem2Suite(const SearchSpace& space,
                             const std::optional<SearchReport>& report = std::nullopt);
SuiteResult RunTheorem3Suite(const SearchSpace& space);
SuiteResult RunTheorem4Suite(const SearchSpace& space);
SuiteResult RunIntrospectSuite(const SearchSpace& space);

// Dispatches by name; throws std::invalid_argument on an unknown suite.
SuiteResult RunSuite(const std::string& name, const SearchSpace& space);

}  // namespace beaver
