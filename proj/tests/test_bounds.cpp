#include <doctest.h>

#include <functional>

#include "ramlock/bounds.hpp"
#include "ramlock/tower.hpp"

using namespace ramlock;

namespace {

ErrorKind kind_of(const std::function<void()>& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.kind();
  }
  return ErrorKind::Internal;
}

LocalField q5() { return LocalField::unramified(5, 1, 20); }

LocalField k5_torsion() { return cyclotomic_extend(unramified_extend(q5(), 4), 1); }

LocalField l3_torsion() {
  std::vector<std::vector<i64>> eis(9, std::vector<i64>{0, 0});
  eis[0] = {6, 0};
  eis[8] = {1, 0};
  return LocalField::make(3, 2, eis, 24);
}

/// First curve y^2 = x^3 + a2 x^2 + a4 x + a6 over k with the requested
/// reduction and p | #E-bar(F_q) when `anomalous`.
WeierstrassCurve find_curve(const LocalField& k, ReductionKind kind, bool anomalous) {
  for (i64 a2 = 0; a2 < 3; ++a2)
    for (i64 a4 = 0; a4 < 9; ++a4)
      for (i64 a6 = 0; a6 < 9; ++a6) {
        try {
          const auto e = WeierstrassCurve::from_ints(k, {0, a2, 0, a4, a6});
          if (e.disc.val() != 0) continue;
          const ReductionData r = reduction_type(e);
          if (r.kind == kind && (!anomalous || r.point_count % k.p() == 0)) return e;
        } catch (const Error&) {
          // singular to working precision
        }
      }
  fail(ErrorKind::NotFound, "no test curve");
}

AbGroupStructure exps(u64 p, std::vector<int> e) { return AbGroupStructure::from_exponents(p, e); }

}  // namespace

TEST_CASE("structure order helpers") {
  CHECK(divides_componentwise(exps(3, {1}), exps(3, {1, 2})));
  CHECK(divides_componentwise(AbGroupStructure{}, exps(3, {2})));
  CHECK(!divides_componentwise(exps(3, {1, 1}), exps(3, {2})));
  CHECK(!divides_componentwise(exps(3, {3}), exps(3, {1, 2})));
  CHECK(direct_sum(exps(5, {2}), exps(5, {1})) == exps(5, {1, 2}));
  CHECK(power(exps(3, {1}), 3) == exps(3, {1, 1, 1}));
}

TEST_CASE("ordinary bounds") {
  const auto e = WeierstrassCurve::from_ints(q5(), {0, 0, 0, -1, 0});
  const BoundReport r = ordinary_bounds(e);
  CHECK(r.lower.trivial());
  CHECK(r.upper.trivial());
  REQUIRE(r.exact.has_value());
  CHECK(r.exact->trivial());
  CHECK(r.exact_case == "e_k < p - 1");
  CHECK(kind_of([] { ordinary_bounds(WeierstrassCurve::from_ints(LocalField::unramified(3, 1, 30), {0, 0, 0, 1, 0})); }) ==
        ErrorKind::NotOrdinary);

  const auto et = WeierstrassCurve::from_ints(k5_torsion(), {0, 0, 0, -1, 0});
  const BoundReport rt = ordinary_bounds(et);
  CHECK(rt.N == 1);
  CHECK(rt.Nhat == 1);
  CHECK(rt.Mur == 1);
  CHECK(rt.lower == exps(5, {1}));
  CHECK(rt.upper == exps(5, {1}));
  REQUIRE(rt.exact.has_value());
  CHECK(*rt.exact == exps(5, {1}));
  CHECK(rt.exact_case == "N = Nhat");
}

TEST_CASE("supersingular bounds") {
  const auto q3e = WeierstrassCurve::from_ints(LocalField::unramified(3, 1, 30), {0, 0, 0, 1, 0});
  CHECK(kind_of([&] { supersingular_bounds(q3e); }) == ErrorKind::TorsionHypothesisFails);

  const auto e = WeierstrassCurve::from_ints(l3_torsion(), {0, 0, 0, 1, 0});
  const BoundReport r = supersingular_bounds(e);
  CHECK(r.N >= 1);
  REQUIRE(r.t0.has_value());
  CHECK(*r.t0 == 1);
  CHECK(r.lower == power(AbGroupStructure::cyclic(3, r.N), 2));
  CHECK(r.upper == power(AbGroupStructure::cyclic(3, r.Mur + r.R.r_leq), 2));
  CHECK(r.R.r_leq == 2);
  CHECK(divides_componentwise(r.lower, r.upper));
  if (r.M == r.Mur) {
    REQUIRE(r.climb_level.has_value());
    CHECK(*r.climb_level >= r.M);
    CHECK(*r.climb_level <= r.M + r.R.r_leq);
  }
}

TEST_CASE("sandwich bounds without torsion hypothesis") {
  const auto ss = WeierstrassCurve::from_ints(LocalField::unramified(3, 1, 30), {0, 0, 0, 1, 0});
  const BoundReport r = sandwich_bounds(ss);
  REQUIRE(r.exact.has_value());
  CHECK(r.exact->trivial());
  CHECK(r.exact_case == "e_k < p - 1");
  const BoundReport t = sandwich_bounds(WeierstrassCurve::from_ints(l3_torsion(), {0, 0, 0, 1, 0}));
  CHECK(t.lower == exps(3, {t.N}));
  CHECK(t.upper == exps(3, {t.Mur}));
  CHECK(!t.exact.has_value());
}

TEST_CASE("report JSON round trip") {
  std::vector<BoundReport> reports = {ordinary_bounds(WeierstrassCurve::from_ints(q5(), {0, 0, 0, -1, 0})),
                                      supersingular_bounds(WeierstrassCurve::from_ints(l3_torsion(), {0, 0, 0, 1, 0})),
                                      abstract_bounds(3, 2, 1, 1),
                                      field_report(cyclotomic_extend(LocalField::unramified(3, 1, 30), 1))};
  for (const auto& r : reports) {
    const Json j = r.to_json();
    CHECK(BoundReport::from_json(j).to_json() == j);
    CHECK(BoundReport::from_json(Json::parse(j.dump())).to_json() == j);
  }
  CHECK(kind_of([] { BoundReport::from_json(Json::object()); }) == ErrorKind::ParseError);
}

TEST_CASE("field invariants report") {
  const BoundReport r = field_report(cyclotomic_extend(LocalField::unramified(3, 1, 30), 1));
  CHECK(r.M == 1);
  CHECK(r.Mur == 1);
  CHECK(r.e0 == Rational{1, 1});
  CHECK(r.R.r_leq == 0);
  CHECK(r.R.r_strict == 1);
  BoundCaps strict;
  strict.m_cap = 1;
  strict.strict = true;
  CHECK(kind_of([&] { field_report(cyclotomic_extend(LocalField::unramified(3, 1, 30), 1), strict); }) ==
        ErrorKind::CapReached);
}

TEST_CASE("exact structure cases") {
  const auto e = find_curve(q5(), ReductionKind::GoodOrdinary, true);
  BoundReport r = ordinary_bounds(e);
  // Supplied data with N < N-hat.
  r.N = 0;
  r.Nhat = 1;
  r.M = r.Mur = 1;
  r.exact.reset();
  r.lower = AbGroupStructure{};
  r.upper = exps(5, {1});
  const auto diag = FiniteGaloisModule::make(5, 1, {1, 1}, {IntMatrix{{2, 0}, {0, 3}}});
  const auto unip = FiniteGaloisModule::make(5, 1, {1, 1}, {IntMatrix{{1, 1}, {0, 1}}});

  const ExactCase c1 = exact_structure_cases(r, diag, unip);
  REQUIRE(c1.exact.has_value());
  CHECK(*c1.exact == exps(5, {1}));
  CHECK(c1.which == "semisimple");

  const ExactCase c2 = exact_structure_cases(r, unip, unip);
  REQUIRE(c2.exact.has_value());
  CHECK(c2.which == "non-semisimple");
  CHECK(*c2.exact == AbGroupStructure::cyclic(5, r.N));
  // Serre-Tate cross-check: the image of the connected part has order p^N.
  CHECK(claim1_image(5, r.M, r.N, 2) == *c2.exact);

  const ExactCase c3 = exact_structure_cases(r, unip, diag);
  CHECK(!c3.exact.has_value());
  CHECK(c3.failed.find("semisimple") != std::string::npos);

  CHECK(kind_of([&] { exact_structure_cases(r, unip, unip, ExactClaims{false, {}, {}}); }) ==
        ErrorKind::InconsistentInput);
  BoundReport r2 = r;
  r2.Mur = 2;
  CHECK(kind_of([&] { exact_structure_cases(r2, unip, unip, ExactClaims{true, {}, {}}); }) ==
        ErrorKind::InconsistentInput);
  const ExactCase c4 = exact_structure_cases(r2, unip, unip);
  CHECK(!c4.exact.has_value());
  CHECK(kind_of([&] { exact_structure_cases(r, FiniteGaloisModule::make(5, 2, {2, 2}, {IntMatrix{{1, 0}, {0, 1}}}), unip); }) ==
        ErrorKind::InconsistentInput);

  BoundReport applied = r;
  apply_exact_case(applied, c1);
  REQUIRE(applied.exact.has_value());
  CHECK(applied.exact_case == "semisimple");
}

TEST_CASE("Ozeki tower") {
  const auto e = WeierstrassCurve::from_ints(q5(), {0, 0, 0, -1, 0});
  CHECK(ozeki_tower(e, 0).levels.empty());
  BoundCaps caps;
  caps.degree_cap = 20;
  const OzekiReport o = ozeki_tower(e, 2, caps);
  CHECK(o.complete);
  CHECK(o.caveats.empty());
  REQUIRE(o.levels.size() == 2);
  for (const auto& l : o.levels) {
    CHECK(l.M == l.m);
    CHECK(l.gap == l.M - l.N);
  }
  CHECK(o.levels[1].N <= o.levels[0].N + 1);
  CHECK(o.levels[1].gap >= o.levels[0].gap);
  BoundCaps small;
  small.degree_cap = 16;
  const OzekiReport partial = ozeki_tower(e, 2, small);
  CHECK(!partial.complete);
  CHECK(partial.levels.size() == 1);
}

TEST_CASE("product aggregation") {
  const auto et = WeierstrassCurve::from_ints(k5_torsion(), {0, 0, 0, -1, 0});
  const BoundReport a = ordinary_bounds(et);
  CHECK(product_aggregate({a}).to_json() == a.to_json());
  const BoundReport aa = product_aggregate({a, a});
  CHECK(aa.lower == exps(5, {1, 1}));
  CHECK(aa.g == 2);

  const LocalField l = l3_torsion();
  const BoundReport ord = ordinary_bounds(find_curve(l, ReductionKind::GoodOrdinary, false));
  const BoundReport ss = supersingular_bounds(WeierstrassCurve::from_ints(l, {0, 0, 0, 1, 0}));
  const BoundReport mixed = product_aggregate({ord, ss});
  CHECK(mixed.lower == direct_sum(ord.lower, ss.lower));
  CHECK(mixed.upper == direct_sum(ord.upper, ss.upper));
  CHECK(mixed.reduction == "product");
  CHECK(product_aggregate({ss, ord}).to_json() == mixed.to_json());
  CHECK(product_aggregate({product_aggregate({ord, ss}), ord}).to_json() ==
        product_aggregate({ord, product_aggregate({ss, ord})}).to_json());

  const BoundReport b = ordinary_bounds(WeierstrassCurve::from_ints(q5(), {0, 0, 0, -1, 0}));
  CHECK(kind_of([&] { product_aggregate({a, b}); }) == ErrorKind::FieldMismatch);
}

TEST_CASE("abstract bounds") {
  const BoundReport r = abstract_bounds(3, 2, 1, 1);
  REQUIRE(r.exact.has_value());
  CHECK(*r.exact == exps(3, {1, 1}));
  CHECK(r.reduction == "user-supplied");
  const BoundReport t = abstract_bounds(3, 1, 0, 0);
  CHECK(t.lower.trivial());
  CHECK(t.upper.trivial());
  CHECK(kind_of([] { abstract_bounds(3, 1, 2, 1); }) == ErrorKind::OrderViolation);
  CHECK(kind_of([] { abstract_bounds(9, 1, 0, 1); }) == ErrorKind::InvalidArgument);
  const BoundReport s = abstract_bounds(5, 1, 1, 3);
  CHECK(!s.exact.has_value());
  CHECK(s.lower == exps(5, {1}));
  CHECK(s.upper == exps(5, {3}));
}
