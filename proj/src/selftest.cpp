#include <algorithm>

#include "selftest_internal.hpp"

namespace ramlock {

namespace {

struct SuiteEntry {
  std::string name;
  std::string property;
  void (*fn)(selftest::Checker&, selftest::Rng&);
};

const std::vector<SuiteEntry>& registry() {
  static const std::vector<SuiteEntry> r = {
      {"symbols", "Hilbert symbol vs norm-group oracle, bilinearity, (x,-x) = 0", selftest::suite_symbols},
      {"hilbert-table", "pairing order of filtration pieces is p iff i + j <= p e0", selftest::suite_hilbert_table},
      {"kummer-level", "p-th roots keep their filtration level", selftest::suite_kummer_level},
      {"coinv", "rank-1 coinvariants: SNF = Z/p^{M_G} = enumeration", selftest::suite_coinv},
      {"claim1", "Serre-Tate image of mu_{p^M} is Z/p^N", selftest::suite_claim1},
      {"stabilization", "truncated limits stabilise by M_G + 1 (characters) and M (Serre-Tate)",
       selftest::suite_stabilization},
      {"sandwich", "N <= M <= M^ur and N <= N-hat <= M^ur on the corpus", selftest::suite_sandwich},
      {"georam", "e_k < p - 1 gives a trivial ramified part", selftest::suite_georam},
      {"connected-etale", "#E-hat[p](k) * #image = #E(k)[p]", selftest::suite_connected_etale},
      {"ozeki", "M(k_m) = m and gap(2) >= gap(1) on the CM curve", selftest::suite_ozeki},
      {"formal", "leading term of [p](t) mod pi is p or p^2, classifiers agree", selftest::suite_formal},
  };
  return r;
}

}  // namespace

Json SuiteResult::to_json() const {
  Json j;
  j["suite"] = name;
  j["property"] = property;
  j["checked"] = checked;
  j["passed"] = passed;
  j["ok"] = ok();
  if (!ok()) {
    j["first_failure"] = first_failure;
    j["counterexample"] = counterexample ? *counterexample : Json(nullptr);
  }
  return j;
}

bool SelftestReport::ok() const {
  return std::all_of(suites.begin(), suites.end(), [](const SuiteResult& s) { return s.ok(); });
}

Json SelftestReport::to_json() const {
  Json j;
  j["seed"] = seed;
  Json arr = Json::array();
  for (const auto& s : suites) arr.push_back(s.to_json());
  j["suites"] = arr;
  j["ok"] = ok();
  return j;
}

const std::vector<std::string>& selftest_suites() {
  static const std::vector<std::string> names = [] {
    std::vector<std::string> out;
    for (const auto& e : registry()) out.push_back(e.name);
    return out;
  }();
  return names;
}

std::vector<std::string> expand_suite(const std::string& name) {
  if (name == "all") return selftest_suites();
  if (name == "hilbert") return {"hilbert-table", "kummer-level"};
  if (name == "galmod") return {"coinv", "claim1", "stabilization"};
  if (name == "curves") return {"sandwich", "georam", "connected-etale", "ozeki", "formal"};
  for (const auto& s : selftest_suites())
    if (s == name) return {s};
  fail(ErrorKind::InvalidArgument, "unknown suite '" + name + "'");
}

SuiteResult run_suite(const std::string& name, const SelftestOptions& opts) {
  const auto& reg = registry();
  const auto it = std::find_if(reg.begin(), reg.end(), [&](const SuiteEntry& e) { return e.name == name; });
  require(it != reg.end(), ErrorKind::InvalidArgument, "unknown suite '" + name + "'");
  SuiteResult r;
  r.name = it->name;
  r.property = it->property;
  selftest::Checker check(r, opts.inject_fault);
  std::seed_seq seq{static_cast<unsigned>(opts.seed & 0xffffffffU), static_cast<unsigned>(opts.seed >> 32),
                    static_cast<unsigned>(it - reg.begin())};
  selftest::Rng rng(seq);
  try {
    it->fn(check, rng);
  } catch (const Error& err) {
    check(false, "suite raised " + std::string(to_string(err.kind())), [&] { return Json{{"error", err.what()}}; });
  }
  return r;
}

SelftestReport run_selftest(const std::vector<std::string>& suites, const SelftestOptions& opts) {
  SelftestReport rep;
  rep.seed = opts.seed;
  for (const auto& s : suites) rep.suites.push_back(run_suite(s, opts));
  return rep;
}

}  // namespace ramlock
