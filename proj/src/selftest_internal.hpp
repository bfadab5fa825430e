#pragma once

#include <functional>
#include <random>

#include "ramlock/selftest.hpp"

namespace ramlock::selftest {

/// Counts checks and keeps the first counterexample.
class Checker {
 public:
  Checker(SuiteResult& r, bool inject_fault) : r_(r), fault_(inject_fault) {}

  bool operator()(bool cond, const std::string& what, const std::function<Json()>& context) {
    ++r_.checked;
    if (fault_ && r_.checked == 1) cond = !cond;
    if (cond) {
      ++r_.passed;
    } else if (!r_.counterexample) {
      r_.first_failure = what;
      r_.counterexample = context();
    }
    return cond;
  }

 private:
  SuiteResult& r_;
  bool fault_;
};

using Rng = std::mt19937_64;

FieldElement random_unit(const LocalField& k, Rng& rng);
/// Unit times pi^v with v in [-3, 3].
FieldElement random_nonzero(const LocalField& k, Rng& rng);

void suite_symbols(Checker& check, Rng& rng);
void suite_hilbert_table(Checker& check, Rng& rng);
void suite_kummer_level(Checker& check, Rng& rng);
void suite_coinv(Checker& check, Rng& rng);
void suite_claim1(Checker& check, Rng& rng);
void suite_stabilization(Checker& check, Rng& rng);
void suite_sandwich(Checker& check, Rng& rng);
void suite_georam(Checker& check, Rng& rng);
void suite_connected_etale(Checker& check, Rng& rng);
void suite_ozeki(Checker& check, Rng& rng);
void suite_formal(Checker& check, Rng& rng);

}  // namespace ramlock::selftest
