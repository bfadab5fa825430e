#pragma once

#include <optional>
#include <string>
#include <vector>

#include "ramlock/descriptor.hpp"

namespace ramlock {

struct SelftestOptions {
  u64 seed = 0;
  /// Test-only: flip the outcome of the first check of every suite.
  bool inject_fault = false;
};

struct SuiteResult {
  std::string name;
  std::string property;
  int checked = 0;
  int passed = 0;
  std::string first_failure;        // name of the first failing property
  std::optional<Json> counterexample;

  bool ok() const { return checked > 0 && passed == checked; }
  Json to_json() const;
};

struct SelftestReport {
  u64 seed = 0;
  std::vector<SuiteResult> suites;

  bool ok() const;
  Json to_json() const;
};

/// Suite names in run order.
const std::vector<std::string>& selftest_suites();
/// Suite or group name ("all", "hilbert", "galmod", "curves") to suite names;
/// InvalidArgument for unknown names.
std::vector<std::string> expand_suite(const std::string& name);

SuiteResult run_suite(const std::string& name, const SelftestOptions& opts);
SelftestReport run_selftest(const std::vector<std::string>& suites, const SelftestOptions& opts);

}  // namespace ramlock
