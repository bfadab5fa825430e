#include <doctest.h>

#include <algorithm>
#include <functional>
#include <random>

#include "ramlock/elliptic.hpp"
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
LocalField q3() { return LocalField::unramified(3, 1, 30); }

/// Q_5(zeta_5) over the unramified quartic: contains E[5] of y^2 = x^3 - x.
LocalField k5_torsion() { return cyclotomic_extend(unramified_extend(q5(), 4), 1); }

/// Q_9(w) with w^8 = -6: contains E[3] of y^2 = x^3 + x.
LocalField l3_torsion() {
  std::vector<std::vector<i64>> eis(9, std::vector<i64>{0, 0});
  eis[0] = {6, 0};
  eis[8] = {1, 0};
  return LocalField::make(3, 2, eis, 24);
}

}  // namespace

TEST_CASE("reduction types") {
  const auto r1 = reduction_type(WeierstrassCurve::from_ints(q5(), {0, 0, 0, -1, 0}));
  CHECK(r1.kind == ReductionKind::GoodOrdinary);
  CHECK(r1.point_count == 8);
  CHECK(r1.trace == -2);
  const auto r2 = reduction_type(WeierstrassCurve::from_ints(q3(), {0, 0, 0, 1, 0}));
  CHECK(r2.kind == ReductionKind::GoodSupersingular);
  CHECK(r2.point_count == 4);
  CHECK(r2.trace == 0);
  CHECK(reduction_type(WeierstrassCurve::from_ints(q5(), {0, 0, 0, 0, -5})).kind == ReductionKind::NotGood);
  CHECK(kind_of([] { reduction_type(WeierstrassCurve::from_ints(q5(), {0, 0, 0, 0, 5 * 5 * 5 * 5 * 5 * 5})); }) ==
        ErrorKind::InvalidArgument);
}

TEST_CASE("classifiers agree on random curves") {
  std::mt19937_64 rng(3);
  for (const LocalField& k : {q3(), q5(), LocalField::unramified(3, 2, 20), LocalField::unramified(7, 1, 15)}) {
    int seen = 0;
    for (int t = 0; t < 60 && seen < 20; ++t) {
      std::array<i64, 5> a;
      for (auto& c : a) c = static_cast<i64>(rng() % 50) - 25;
      WeierstrassCurve e;
      try {
        e = WeierstrassCurve::from_ints(k, a);
      } catch (const Error&) {
        continue;
      }
      if (e.disc.val() != 0) continue;
      const auto r = reduction_type(e);  // throws Internal on disagreement
      CHECK(r.point_count == k.q() + 1 - static_cast<u64>(r.trace));
      CHECK(r.trace * r.trace <= 4 * static_cast<i64>(k.q()));
      ++seen;
    }
    CHECK(seen >= 10);
  }
}

TEST_CASE("division polynomials vanish on torsion") {
  const LocalField k = q5();
  const auto e = WeierstrassCurve::from_ints(k, {0, 0, 0, -1, 0});
  CHECK(division_polynomial(e, 5).size() == 13);
  CHECK(division_polynomial(e, 4).size() == 7);
  // Two-torsion (0, 0) has 4 P = O and 3 P = P.
  const CurvePoint t{false, FieldElement::zero(k), FieldElement::zero(k)};
  CHECK(point_mul(e, t, 2).infinity);
  CHECK(point_mul(e, t, 3).x.equals(t.x));
  CHECK(torsion_level_N(e, 0).value == 0);
  CHECK(torsion_level_N(e, 3).value == 0);
  CHECK(torsion_points(e, 1).empty());
}

namespace {

std::vector<OElt> random_series(const LocalField& k, int d, std::mt19937_64& rng) {
  std::vector<OElt> s(d + 1, k.zero());
  for (int i = 1; i <= d; ++i)
    for (auto& c : s[i].c) c = rng() % k.zmod().mod;
  return s;
}

bool series_equal(const LocalField& k, const std::vector<OElt>& a, const std::vector<OElt>& b, int d) {
  for (int i = 0; i <= d; ++i) {
    const OElt x = i < static_cast<int>(a.size()) ? a[i] : k.zero();
    const OElt y = i < static_cast<int>(b.size()) ? b[i] : k.zero();
    if (!(x == y)) return false;
  }
  return true;
}

/// Lowest degree with a unit coefficient.
int first_unit(const LocalField& k, const std::vector<OElt>& s) {
  for (size_t i = 0; i < s.size(); ++i)
    if (k.val(s[i]) == 0) return static_cast<int>(i);
  return -1;
}

std::vector<FieldElement> fe_series_mul(const std::vector<FieldElement>& a, const std::vector<FieldElement>& b,
                                        int d) {
  std::vector<FieldElement> out(d + 1, FieldElement::zero(a[0].field()));
  for (int i = 0; i <= d; ++i)
    for (int j = 0; i + j <= d; ++j) out[i + j] = out[i + j] + a[i] * b[j];
  return out;
}

}  // namespace

TEST_CASE("formal group laws") {
  std::mt19937_64 rng(17);
  struct Case {
    LocalField k;
    std::array<i64, 5> a;
    int leading;
  };
  const std::vector<Case> cases = {{q5(), {0, 0, 0, -1, 0}, 5},
                                   {q3(), {0, 0, 0, 1, 0}, 9},
                                   {q3(), {1, -1, 1, 2, 1}, -1},
                                   {LocalField::make(3, 1, std::vector<i64>{3, 3, 1}, 30), {0, 1, 0, 0, 1}, -1}};
  for (const auto& c : cases) {
    const auto e = WeierstrassCurve::from_ints(c.k, c.a);
    const LocalField& k = c.k;
    const int d = default_formal_cap(k.p());
    const FormalGroupData fg = formal_group(e, d);
    // F(X, 0) = X and symmetry.
    CHECK(k.val(k.sub(fg.law[1][0], k.one())) >= kInfVal);
    for (int i = 0; i <= d; ++i) {
      if (i != 1) CHECK(k.val(fg.law[i][0]) >= kInfVal);
      for (int j = 0; i + j <= d; ++j) CHECK(fg.law[i][j] == fg.law[j][i]);
    }
    // Associativity on random series.
    const auto a = random_series(k, d, rng), b = random_series(k, d, rng), cc = random_series(k, d, rng);
    CHECK(series_equal(k, fg.add(fg.add(a, b), cc), fg.add(a, fg.add(b, cc)), d));
    CHECK(series_equal(k, fg.add(a, fg.multiply(a, -1)), std::vector<OElt>(d + 1, k.zero()), d));
    // [p](t) = p t + ...
    CHECK(fg.mult_p[1] == k.from_int(static_cast<i64>(k.p())));
    const ReductionData r = reduction_type(e);
    const int lead = first_unit(k, fg.mult_p);
    if (r.kind == ReductionKind::GoodOrdinary) CHECK(lead == static_cast<int>(k.p()));
    if (r.kind == ReductionKind::GoodSupersingular) CHECK(lead == static_cast<int>(k.p() * k.p()));
    if (c.leading > 0) CHECK(lead == c.leading);
    // log([p](t)) = p log(t).
    std::vector<FieldElement> mp;
    for (const auto& x : fg.mult_p) mp.emplace_back(k, x);
    std::vector<FieldElement> acc(d + 1, FieldElement::zero(k)), pw(d + 1, FieldElement::zero(k));
    pw[0] = FieldElement::one(k);
    for (int n = 1; n <= d; ++n) {
      pw = fe_series_mul(pw, mp, d);
      for (int i = 0; i <= d; ++i) acc[i] = acc[i] + fg.log[n] * pw[i];
    }
    for (int i = 1; i <= d; ++i)
      CHECK((acc[i] - FieldElement::from_int(k, static_cast<i64>(k.p())) * fg.log[i]).absprec() >= k.prec() / 2);
  }
  CHECK(kind_of([] { formal_group(WeierstrassCurve::from_ints(q3(), {0, 0, 0, 1, 0}), 9); }) ==
        ErrorKind::CapTooSmall);
}

TEST_CASE("formal torsion roots match torsion points in the kernel of reduction") {
  for (const auto& [k, a] : {std::pair{k5_torsion(), std::array<i64, 5>{0, 0, 0, -1, 0}},
                             std::pair{l3_torsion(), std::array<i64, 5>{0, 0, 0, 1, 0}}}) {
    const auto e = WeierstrassCurve::from_ints(k, a);
    const auto roots = formal_torsion(e, 1);
    CHECK(roots.size() == k.p() * (reduction_type(e).kind == ReductionKind::GoodOrdinary ? 1 : k.p()));
    int matched = 0;
    for (const auto& pt : torsion_points(e, 1)) {
      if (pt.x.val() >= 0) continue;
      const FieldElement t = -(pt.x / pt.y);
      for (const auto& r : roots)
        if ((t - r).absprec() >= k.prec() / 2) {
          ++matched;
          break;
        }
    }
    CHECK(matched + 1 == static_cast<int>(roots.size()));
  }
}

TEST_CASE("nhat and t0 on base fields") {
  const auto ord = WeierstrassCurve::from_ints(q5(), {0, 0, 0, -1, 0});
  const auto r1 = nhat(ord, 3);
  CHECK(r1.value.value == 0);
  CHECK(!r1.value.cap_reached);
  CHECK(r1.min_root_valuation == Rational{1, 4});
  CHECK(kind_of([&] { t0(ord); }) == ErrorKind::NotSupersingular);

  const auto ss = WeierstrassCurve::from_ints(q3(), {0, 0, 0, 1, 0});
  CHECK(nhat(ss, 3).value.value == 0);
  const T0Result t = t0(ss);
  CHECK(!t.rational);
  REQUIRE(t.slopes.size() == 1);
  CHECK(t.slopes[0] == Rational{1, 8});
  CHECK(nhat(ss, 0).value.cap_reached);
}

TEST_CASE("torsion towers") {
  const auto e5 = WeierstrassCurve::from_ints(k5_torsion(), {0, 0, 0, -1, 0});
  CHECK(torsion_level_N(e5, 2).value == 1);
  CHECK(nhat(e5, 2).value.value == 1);

  const auto e3 = WeierstrassCurve::from_ints(l3_torsion(), {0, 0, 0, 1, 0});
  const T0Result t = t0(e3);
  REQUIRE(t.rational);
  CHECK(t.t0 == 1);
  CHECK(t.levels.first + t.levels.second == 3 * e3.k.e() / 2);
  CHECK(t.levels == std::pair<int, int>{3, 9});
  CHECK(nhat(e3, 2).value.value == 1);
  CHECK(torsion_level_N(e3, 1).value == 1);
}

TEST_CASE("connected-etale counts") {
  struct Case {
    LocalField k;
    std::array<i64, 5> a;
  };
  const std::vector<Case> cases = {{q5(), {0, 0, 0, -1, 0}},
                                   {q3(), {0, 0, 0, 1, 0}},
                                   {k5_torsion(), {0, 0, 0, -1, 0}},
                                   {l3_torsion(), {0, 0, 0, 1, 0}},
                                   {LocalField::unramified(5, 2, 20), {0, 0, 0, -1, 0}}};
  for (const auto& c : cases) {
    const auto e = WeierstrassCurve::from_ints(c.k, c.a);
    const size_t formal = formal_torsion(e, 1).size();
    const auto pts = torsion_points(e, 1);
    size_t in_kernel = 1;
    std::vector<std::pair<ResidueField::Elt, ResidueField::Elt>> image;
    for (const auto& pt : pts) {
      if (pt.x.val() < 0) {
        ++in_kernel;
        continue;
      }
      const auto key = std::make_pair(pt.x.residue(), pt.y.residue());
      if (std::find(image.begin(), image.end(), key) == image.end()) image.push_back(key);
    }
    CHECK(formal == in_kernel);
    CHECK(formal * (image.size() + 1) == pts.size() + 1);
  }
}

TEST_CASE("CM kernels agree with p-power torsion of the formal group") {
  const auto e = WeierstrassCurve::from_ints(q5(), {0, 0, 0, -1, 0});
  CHECK(cm_kernel_check(e, CMData{-4, 2, 1}, 0));
  CHECK(cm_kernel_check(e, CMData{-4, 2, 1}, 1));
  CHECK(cm_kernel_check(e, CMData{-4, 1, -2}, 1));
  CHECK(cm_kernel_check(e, CMData{-4, 2, 1}, 2));
  const auto e7 = WeierstrassCurve::from_ints(LocalField::unramified(7, 1, 16), {0, 0, 0, 0, 1});
  CHECK(cm_kernel_check(e7, CMData{-3, 3, 1}, 1));

  const auto ss = WeierstrassCurve::from_ints(q3(), {0, 0, 0, 1, 0});
  CHECK(kind_of([&] { cm_kernel_check(ss, CMData{-4, 1, 1}, 1); }) == ErrorKind::NotSplit);
  CHECK(kind_of([&] { cm_kernel_check(e, CMData{-4, 1, 1}, 1); }) == ErrorKind::InvalidArgument);
  const auto generic = WeierstrassCurve::from_ints(q5(), {0, 0, 0, -1, 1});
  CHECK(kind_of([&] { cm_kernel_check(generic, CMData{-4, 2, 1}, 1); }) == ErrorKind::NotCM);
  CHECK(kind_of([&] { cm_kernel_check(e, CMData{-4, 2, 1}, 3); }) == ErrorKind::CapReached);
}

TEST_CASE("etale kernel lift and Velu quotient") {
  const auto e = WeierstrassCurve::from_ints(k5_torsion(), {0, 0, 0, -1, 0});
  const IsogenyKernel h = isogeny_kernel_data(e, 1);
  REQUIRE(h.points.size() == 4);
  // Reduction is injective on H and lands in the 5-torsion of the reduced curve.
  std::vector<std::pair<ResidueField::Elt, ResidueField::Elt>> red;
  for (const auto& pt : h.points) {
    CHECK(pt.x.val() >= 0);
    CHECK(point_mul(e, pt, 5).infinity);
    const auto key = std::make_pair(pt.x.residue(), pt.y.residue());
    CHECK(std::find(red.begin(), red.end(), key) == red.end());
    red.push_back(key);
  }
  REQUIRE(h.quotient.has_value());
  CHECK(h.quotient->disc.val() == 0);
  CHECK(reduction_type(*h.quotient).kind == ReductionKind::GoodOrdinary);
  CHECK(reduction_type(*h.quotient).point_count == reduction_type(e).point_count);

  const IsogenyKernel trivial = isogeny_kernel_data(e, 0);
  CHECK(trivial.points.empty());
  CHECK(kind_of([&] { isogeny_kernel_data(e, 2); }) == ErrorKind::VeluUnsupported);
  CHECK(kind_of([] { isogeny_kernel_data(WeierstrassCurve::from_ints(q5(), {0, 0, 0, -1, 0}), 1); }) ==
        ErrorKind::HypothesisViolated);
  CHECK(kind_of([] { isogeny_kernel_data(WeierstrassCurve::from_ints(l3_torsion(), {0, 0, 0, 1, 0}), 1); }) ==
        ErrorKind::HypothesisViolated);
}
