#pragma once

#include <string>
#include <vector>

namespace stonespec {

/// Outcome of a property check over many cases.
struct SuiteReport {
  long cases = 0;
  std::vector<std::string> failures;
  bool ok() const { return failures.empty(); }
  void fail(std::string message) { failures.push_back(std::move(message)); }
  void merge(const SuiteReport& other) {
    cases += other.cases;
    failures.insert(failures.end(), other.failures.begin(), other.failures.end());
  }
};

}  // namespace stonespec
