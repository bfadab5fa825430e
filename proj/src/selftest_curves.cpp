#include <algorithm>

#include "ramlock/bounds.hpp"
#include "ramlock/tower.hpp"
#include "selftest_internal.hpp"

namespace ramlock::selftest {

namespace {

struct Instance {
  std::string name;
  LocalField k;
  std::array<i64, 5> a;
};

constexpr int kCorpusDegreeCap = 20;

LocalField l3_torsion() {
  std::vector<std::vector<i64>> eis(9, std::vector<i64>{0, 0});
  eis[0] = {6, 0};
  eis[8] = {1, 0};
  return LocalField::make(3, 2, eis, 24);
}

const std::vector<Instance>& corpus() {
  static const std::vector<Instance> c = [] {
    const LocalField q5 = LocalField::unramified(5, 1, 20);
    const LocalField q3 = LocalField::unramified(3, 1, 30);
    const std::array<i64, 5> cm5{0, 0, 0, -1, 0}, ss3{0, 0, 0, 1, 0};
    return std::vector<Instance>{
        {"y^2 = x^3 - x over Q_5", q5, cm5},
        {"y^2 = x^3 - x over Q_5(zeta_5)", cyclotomic_extend(q5, 1), cm5},
        {"y^2 = x^3 - x over Q_5(zeta_25)", cyclotomic_extend(q5, 2, kCorpusDegreeCap), cm5},
        {"y^2 = x^3 - x over Q_625(zeta_5)", cyclotomic_extend(unramified_extend(q5, 4), 1), cm5},
        {"y^2 = x^3 + x over Q_3", q3, ss3},
        {"y^2 = x^3 + x over Q_3(zeta_3)", cyclotomic_extend(q3, 1), ss3},
        {"y^2 = x^3 + x over Q_9((-6)^(1/8))", l3_torsion(), ss3},
    };
  }();
  return c;
}

BoundCaps corpus_caps() {
  BoundCaps caps;
  caps.degree_cap = kCorpusDegreeCap;
  return caps;
}

Json describe(const Instance& in) { return Json{{"instance", in.name}, {"field", field_to_json(in.k)}}; }

bool has_cap_caveat(const BoundReport& r) {
  return std::any_of(r.caveats.begin(), r.caveats.end(),
                     [](const std::string& c) { return c.rfind("CapReached", 0) == 0; });
}

int first_unit(const LocalField& k, const std::vector<OElt>& s) {
  for (size_t i = 0; i < s.size(); ++i)
    if (k.val(s[i]) == 0) return static_cast<int>(i);
  return -1;
}

}  // namespace

void suite_sandwich(Checker& check, Rng&) {
  for (const auto& in : corpus()) {
    const auto e = WeierstrassCurve::from_ints(in.k, in.a);
    const BoundReport r = invariants_report(e, corpus_caps());
    check(r.N <= r.M && r.M <= r.Mur && r.N <= r.Nhat && r.Nhat <= r.Mur && !has_cap_caveat(r),
          "N <= M <= M^ur and N <= N-hat <= M^ur", [&] {
            Json j = describe(in);
            j["report"] = r.to_json();
            return j;
          });
  }
}

void suite_georam(Checker& check, Rng&) {
  int applicable = 0;
  for (const auto& in : corpus()) {
    if (in.k.e() >= static_cast<int>(in.k.p()) - 1) continue;
    ++applicable;
    const auto e = WeierstrassCurve::from_ints(in.k, in.a);
    const BoundReport s = sandwich_bounds(e, corpus_caps());
    check(s.exact && s.exact->trivial(), "sandwich exact is trivial", [&] {
      Json j = describe(in);
      j["report"] = s.to_json();
      return j;
    });
    try {
      const BoundReport r = curve_bounds(e, corpus_caps());
      check(r.exact && r.exact->trivial(), "bounds exact is trivial", [&] {
        Json j = describe(in);
        j["report"] = r.to_json();
        return j;
      });
    } catch (const Error& err) {
      if (err.kind() != ErrorKind::TorsionHypothesisFails) throw;
    }
  }
  check(applicable >= 2, "corpus has instances with e_k < p - 1", [&] { return Json{{"applicable", applicable}}; });
}

void suite_connected_etale(Checker& check, Rng&) {
  for (const auto& in : corpus()) {
    const auto e = WeierstrassCurve::from_ints(in.k, in.a);
    const size_t formal = formal_torsion(e, 1).size();
    const auto pts = torsion_points(e, 1);
    std::vector<std::pair<ResidueField::Elt, ResidueField::Elt>> image;
    for (const auto& pt : pts) {
      if (pt.x.val() < 0) continue;
      const auto key = std::make_pair(pt.x.residue(), pt.y.residue());
      if (std::find(image.begin(), image.end(), key) == image.end()) image.push_back(key);
    }
    // Counts include the identity.
    check(formal * (image.size() + 1) == pts.size() + 1, "#E-hat[p](k) * #image = #E(k)[p]", [&] {
      Json j = describe(in);
      j["formal"] = formal;
      j["image"] = image.size() + 1;
      j["torsion"] = pts.size() + 1;
      return j;
    });
  }
}

void suite_ozeki(Checker& check, Rng&) {
  const Instance& in = corpus().front();
  const auto e = WeierstrassCurve::from_ints(in.k, in.a);
  const OzekiReport o = ozeki_tower(e, 2, corpus_caps());
  const auto ctx = [&] {
    Json j = describe(in);
    j["tower"] = o.to_json();
    return j;
  };
  check(o.complete && o.caveats.empty() && o.levels.size() == 2, "levels m <= 2 computed without caps", ctx);
  for (const auto& l : o.levels) check(l.M == l.m, "M(k_m) = m", ctx);
  if (o.levels.size() == 2) check(o.levels[1].gap >= o.levels[0].gap, "gap(2) >= gap(1)", ctx);
}

void suite_formal(Checker& check, Rng&) {
  for (const auto& in : corpus()) {
    const auto e = WeierstrassCurve::from_ints(in.k, in.a);
    const u64 p = in.k.p();
    const ReductionData r = reduction_type(e);
    const FormalGroupData fg = formal_group(e, default_formal_cap(p));
    const int lead = first_unit(in.k, fg.mult_p);
    const bool ss = r.kind == ReductionKind::GoodSupersingular;
    const auto ctx = [&] {
      Json j = describe(in);
      j["reduction"] = to_string(r.kind);
      j["leading_degree"] = lead;
      j["trace"] = r.trace;
      j["divpoly_degree"] = r.divpoly_degree;
      return j;
    };
    check(lead == static_cast<int>(ss ? p * p : p), "leading degree of [p](t) mod pi", ctx);
    const bool by_trace = r.trace % static_cast<i64>(p) == 0;
    const bool by_divpoly = r.divpoly_degree <= 0;
    check(by_trace == by_divpoly && by_trace == ss, "supersingular classifiers agree", ctx);
  }
}

}  // namespace ramlock::selftest
