#include <doctest.h>

#include "ramlock/selftest.hpp"

using namespace ramlock;

TEST_CASE("suite names and groups") {
  CHECK(expand_suite("all") == selftest_suites());
  CHECK(expand_suite("hilbert") == std::vector<std::string>{"hilbert-table", "kummer-level"});
  CHECK(expand_suite("coinv") == std::vector<std::string>{"coinv"});
  for (const char* g : {"galmod", "curves"})
    for (const auto& s : expand_suite(g)) CHECK(expand_suite(s).size() == 1);
  CHECK_THROWS_AS(expand_suite("nope"), Error);
}

TEST_CASE("selftest suites are seeded") {
  SelftestOptions a;
  a.seed = 3;
  const auto r1 = run_selftest({"coinv", "claim1"}, a);
  const auto r2 = run_selftest({"coinv", "claim1"}, a);
  CHECK(r1.ok());
  CHECK(r1.to_json() == r2.to_json());
  CHECK(r1.to_json()["seed"] == 3);
}

TEST_CASE("injected fault reports a counterexample") {
  SelftestOptions o;
  o.inject_fault = true;
  const SuiteResult r = run_suite("claim1", o);
  CHECK(!r.ok());
  CHECK(r.passed + 1 == r.checked);
  CHECK(r.first_failure == "image of mu_{p^M} is Z/p^N");
  REQUIRE(r.counterexample.has_value());
  CHECK((*r.counterexample)["p"] == 3);
  const Json j = r.to_json();
  CHECK(j["ok"] == false);
  CHECK(j.contains("counterexample"));
}
