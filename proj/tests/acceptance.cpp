#include <array>
#include <cstdio>
#include <iostream>
#include <string>
#include <utility>
#include <vector>

#include "ramlock/selftest.hpp"

namespace {

/// stdout of a shell command and its exit status.
std::pair<std::string, int> run(const std::string& cmd) {
  std::string out;
  FILE* f = popen(cmd.c_str(), "r");
  if (f == nullptr) return {out, -1};
  std::array<char, 4096> buf;
  size_t n;
  while ((n = fread(buf.data(), 1, buf.size(), f)) > 0) out.append(buf.data(), n);
  return {out, pclose(f)};
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::string>> criteria = {
      {"AC1", "symbols"},      {"AC2", "hilbert-table"}, {"AC3", "kummer-level"},    {"AC4", "coinv"},
      {"AC5", "claim1"},       {"AC6", "stabilization"}, {"AC7", "sandwich"},        {"AC8", "georam"},
      {"AC9", "connected-etale"}, {"AC10", "ozeki"},     {"AC11", "formal"}};
  int failed = 0;
  ramlock::SelftestOptions opts;
  for (const auto& [ac, suite] : criteria) {
    const ramlock::SuiteResult r = ramlock::run_suite(suite, opts);
    std::cout << ac << " " << (r.ok() ? "PASS" : "FAIL") << " " << suite << " " << r.passed << "/" << r.checked;
    if (!r.ok()) std::cout << " first failure: " << r.first_failure << " " << r.counterexample.value_or(nullptr).dump();
    std::cout << "\n";
    failed += r.ok() ? 0 : 1;
  }

  const std::string cli = RAMLOCK_CLI, data = RAMLOCK_DATA_DIR;
  const std::vector<std::string> jobs = {
      cli + " bounds --field " + data + "/q5.toml --curve " + data + "/y2_x3_minus_x.toml --json --seed 7",
      cli + " invariants --field " + data + "/q3_zeta3.toml --json --seed 7",
      cli + " hilbert-table --field " + data + "/q3_zeta3.toml --json --seed 7",
      cli + " selftest --suite galmod --json --seed 7"};
  bool same = true;
  std::string detail;
  for (const auto& job : jobs) {
    const auto a = run(job), b = run(job);
    if (a.second != 0 || a.first.empty() || a != b) {
      same = false;
      detail = job;
      break;
    }
  }
  std::cout << "AC12 " << (same ? "PASS" : "FAIL") << " cli determinism " << jobs.size() << " jobs run twice";
  if (!same) std::cout << " differs: " << detail;
  std::cout << "\n";
  failed += same ? 0 : 1;
  return failed == 0 ? 0 : 1;
}
