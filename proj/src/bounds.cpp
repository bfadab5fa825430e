#include "ramlock/bounds.hpp"

#include <algorithm>

#include "ramlock/tower.hpp"

namespace ramlock {

namespace {

void note_cap(BoundReport& r, const BoundCaps& caps, bool reached, const std::string& what) {
  if (!reached) return;
  require(!caps.strict, ErrorKind::CapReached, what);
  r.caveats.push_back("CapReached: " + what);
}

Json structure_json(const std::optional<AbGroupStructure>& s) { return s ? s->to_json() : Json(nullptr); }

AbGroupStructure structure_from_json(const Json& j) {
  AbGroupStructure s;
  for (const auto& d : j) s.divisors.push_back(d.get<u64>());
  std::sort(s.divisors.begin(), s.divisors.end());
  return s;
}

Rational rational_from_string(const std::string& s) {
  const auto slash = s.find('/');
  if (slash == std::string::npos) return Rational{std::stoll(s), 1};
  return Rational{std::stoll(s.substr(0, slash)), std::stoll(s.substr(slash + 1))};
}

void apply_georam(BoundReport& r) {
  if (r.e > 0 && r.e < static_cast<int>(r.p) - 1) {
    r.exact = AbGroupStructure{};
    r.exact_case = "e_k < p - 1";
  }
}

/// Level of zeta_{p^M} in the filtration of k^x / p.
int zeta_level(const LocalField& k, int M) {
  const auto zeta = root_of_unity(k, M);
  require(zeta.has_value(), ErrorKind::Internal, "missing root of unity of order p^M");
  const MulModPSpace s = MulModPSpace::build(k);
  const auto lvl = filtration_level(s, *zeta);
  require(lvl.has_value(), ErrorKind::Internal, "root of unity of order p^M is a p-th power");
  return *lvl;
}

Json witness_json(int m, const SymbolGenerators& g) {
  Json j;
  j["m"] = m;
  j["found"] = g.found;
  j["zeta_level"] = g.zeta_level;
  j["M"] = g.M;
  auto side = [](const std::optional<SymbolWitness>& w) {
    if (!w) return Json(nullptr);
    Json s;
    s["unit_level"] = w->unit_level;
    s["value"] = w->value;
    return s;
  };
  j["first"] = side(g.first);
  j["second"] = side(g.second);
  j["blocking"] = g.blocking;
  return j;
}

}  // namespace

// --- structures

bool divides_componentwise(const AbGroupStructure& a, const AbGroupStructure& b) {
  if (a.divisors.size() > b.divisors.size()) return false;
  const size_t pad = b.divisors.size() - a.divisors.size();
  for (size_t i = 0; i < a.divisors.size(); ++i)
    if (b.divisors[pad + i] % a.divisors[i] != 0) return false;
  return true;
}

AbGroupStructure direct_sum(const AbGroupStructure& a, const AbGroupStructure& b) {
  AbGroupStructure s = a;
  s.divisors.insert(s.divisors.end(), b.divisors.begin(), b.divisors.end());
  std::sort(s.divisors.begin(), s.divisors.end());
  return s;
}

AbGroupStructure power(const AbGroupStructure& a, int g) {
  AbGroupStructure s;
  for (int i = 0; i < g; ++i) s = direct_sum(s, a);
  return s;
}

void check_sandwich(const BoundReport& r) {
  require(divides_componentwise(r.lower, r.upper), ErrorKind::Internal,
          "lower bound " + r.lower.str() + " is not below upper bound " + r.upper.str());
  if (r.exact) {
    require(divides_componentwise(r.lower, *r.exact) && divides_componentwise(*r.exact, r.upper), ErrorKind::Internal,
            "exact structure " + r.exact->str() + " is outside the sandwich");
  }
}

// --- JSON

Json BoundReport::to_json() const {
  Json j;
  j["field"] = field ? field_to_json(*field) : Json(nullptr);
  j["curve"] = curve ? curve_to_json(CurveDescriptor{*curve, std::nullopt}) : Json(nullptr);
  Json inv;
  inv["p"] = p;
  inv["e"] = e;
  inv["f"] = f;
  inv["M"] = M;
  inv["Mur"] = Mur;
  inv["N"] = N;
  inv["Nhat"] = Nhat;
  inv["e0"] = e0.str();
  inv["t0"] = t0 ? Json(*t0) : Json(nullptr);
  inv["R"] = Json{{"leq", R.r_leq}, {"strict", R.r_strict}};
  inv["reduction"] = reduction;
  inv["g"] = g;
  j["invariants"] = inv;
  Json b;
  b["lower"] = lower.to_json();
  b["upper"] = upper.to_json();
  b["exact"] = structure_json(exact);
  b["case"] = exact ? Json(exact_case) : Json(nullptr);
  j["bounds"] = b;
  if (climb_level) j["climb_level"] = *climb_level;
  if (witness) j["witness"] = *witness;
  j["caveats"] = caveats;
  return j;
}

BoundReport BoundReport::from_json(const Json& j) {
  try {
    BoundReport r;
    if (!j.at("field").is_null()) r.field = field_from_json(j.at("field"));
    if (!j.at("curve").is_null()) r.curve = curve_from_json(j.at("curve")).curve;
    const Json& inv = j.at("invariants");
    r.p = inv.at("p").get<u64>();
    r.e = inv.at("e").get<int>();
    r.f = inv.at("f").get<int>();
    r.M = inv.at("M").get<int>();
    r.Mur = inv.at("Mur").get<int>();
    r.N = inv.at("N").get<int>();
    r.Nhat = inv.at("Nhat").get<int>();
    r.e0 = rational_from_string(inv.at("e0").get<std::string>());
    if (!inv.at("t0").is_null()) r.t0 = inv.at("t0").get<int>();
    r.R = RPair{inv.at("R").at("leq").get<int>(), inv.at("R").at("strict").get<int>()};
    r.reduction = inv.at("reduction").get<std::string>();
    r.g = inv.at("g").get<int>();
    const Json& b = j.at("bounds");
    r.lower = structure_from_json(b.at("lower"));
    r.upper = structure_from_json(b.at("upper"));
    if (!b.at("exact").is_null()) {
      r.exact = structure_from_json(b.at("exact"));
      r.exact_case = b.at("case").get<std::string>();
    }
    if (j.contains("climb_level")) r.climb_level = j.at("climb_level").get<int>();
    if (j.contains("witness")) r.witness = j.at("witness");
    r.caveats = j.at("caveats").get<std::vector<std::string>>();
    return r;
  } catch (const Json::exception& ex) {
    fail(ErrorKind::ParseError, std::string("bound report: ") + ex.what());
  }
}

// --- reports

BoundReport field_report(const LocalField& k, const BoundCaps& caps) {
  require(caps.m_cap >= 1 && caps.n_cap >= 0, ErrorKind::InvalidArgument, "caps must be positive");
  BoundReport r;
  r.field = k;
  r.p = k.p();
  r.e = k.e();
  r.f = k.f();
  r.e0 = e0(k);
  r.R = invariant_R(k);
  const CappedInt M = invariant_M(k, caps.m_cap);
  const CappedInt Mur = invariant_Mur(k, caps.m_cap, caps.f_max, caps.degree_cap);
  r.M = M.value;
  r.Mur = Mur.value;
  note_cap(r, caps, M.cap_reached, "M search stopped at m_cap = " + std::to_string(caps.m_cap));
  note_cap(r, caps, Mur.cap_reached, "M^ur search stopped at m_cap = " + std::to_string(caps.m_cap));
  require(r.M <= r.Mur, ErrorKind::Internal, "M exceeds M^ur");
  return r;
}

namespace {

BoundReport curve_invariants(const WeierstrassCurve& e, const BoundCaps& caps, bool& nhat_capped) {
  BoundReport r = field_report(e.k, caps);
  r.curve = e;
  const ReductionData red = reduction_type(e);
  require(red.kind != ReductionKind::NotGood, ErrorKind::NotGood, "curve does not have good reduction");
  r.reduction = to_string(red.kind);
  const CappedInt N = torsion_level_N(e, caps.n_cap);
  const NhatResult nh = nhat(e, caps.n_cap);
  r.N = N.value;
  r.Nhat = nh.value.value;
  note_cap(r, caps, N.cap_reached, "N search stopped at nmax = " + std::to_string(caps.n_cap));
  note_cap(r, caps, nh.value.cap_reached, "N-hat search stopped at nmax = " + std::to_string(caps.n_cap));
  if (red.kind == ReductionKind::GoodSupersingular) {
    const T0Result t = t0(e);
    if (t.rational) {
      r.t0 = t.t0;
    } else {
      std::string sl;
      for (const auto& s : t.slopes) sl += (sl.empty() ? "" : ", ") + s.str();
      r.caveats.push_back("NotRational t0: E-hat[p] root valuations {" + sl + "}");
    }
  }
  nhat_capped = nh.value.cap_reached;
  const bool capped = N.cap_reached || nh.value.cap_reached;
  require(capped || (r.N <= r.Nhat && r.Nhat <= r.Mur && r.N <= r.M), ErrorKind::Internal,
          "invariant order N <= N-hat <= M^ur, N <= M fails");
  return r;
}

}  // namespace

BoundReport invariants_report(const WeierstrassCurve& e, const BoundCaps& caps) {
  bool nhat_capped = false;
  return curve_invariants(e, caps, nhat_capped);
}

BoundReport ordinary_bounds(const WeierstrassCurve& e, const BoundCaps& caps) {
  require(reduction_type(e).kind == ReductionKind::GoodOrdinary, ErrorKind::NotOrdinary,
          "ordinary bounds need good ordinary reduction");
  bool nhat_capped = false;
  BoundReport r = curve_invariants(e, caps, nhat_capped);
  r.lower = AbGroupStructure::cyclic(r.p, r.N);
  r.upper = AbGroupStructure::cyclic(r.p, std::min(r.Mur, r.Nhat));
  if (r.N == r.Nhat && !nhat_capped) {
    r.exact = r.lower;
    r.exact_case = "N = Nhat";
  }
  apply_georam(r);
  check_sandwich(r);
  return r;
}

BoundReport sandwich_bounds(const WeierstrassCurve& e, const BoundCaps& caps) {
  BoundReport r = invariants_report(e, caps);
  r.lower = AbGroupStructure::cyclic(r.p, r.N);
  r.upper = AbGroupStructure::cyclic(r.p, r.Mur);
  apply_georam(r);
  check_sandwich(r);
  return r;
}

BoundReport supersingular_bounds(const WeierstrassCurve& e, const BoundCaps& caps) {
  require(reduction_type(e).kind == ReductionKind::GoodSupersingular, ErrorKind::NotSupersingular,
          "supersingular bounds need good supersingular reduction");
  const CappedInt n1 = torsion_level_N(e, 1);
  require(n1.value >= 1, ErrorKind::TorsionHypothesisFails,
          "E[p] is not contained in E(k), so the supersingular sandwich does not apply");
  BoundReport r = invariants_report(e, caps);
  const u64 p = r.p;
  r.lower = power(AbGroupStructure::cyclic(p, r.N), 2);
  r.upper = power(AbGroupStructure::cyclic(p, r.Mur + r.R.r_leq), 2);
  r.caveats.push_back("lower bound (Z/p^N)^2 is cited from the K-group structure, not recomputed");
  if (r.R.r_leq != r.R.r_strict)
    r.caveats.push_back("R-definition discrepancy: upper bound uses R = " + std::to_string(r.R.r_leq) +
                        " (e_k <= (p-1) p^R); strict form gives " + std::to_string(r.R.r_strict));
  apply_georam(r);
  check_sandwich(r);

  // Generator search climb.
  if (r.M != r.Mur) {
    r.caveats.push_back("generator climb skipped: M != M^ur");
    return r;
  }
  if (!r.t0) {
    r.caveats.push_back("generator climb skipped: t0 undefined");
    return r;
  }
  const LocalField& k = e.k;
  require(k.e() % static_cast<int>(p - 1) == 0, ErrorKind::Internal, "mu_p in k forces (p - 1) | e_k");
  const int e0i = k.e() / static_cast<int>(p - 1);
  const int t = *r.t0;
  const int i = zeta_level(k, r.M);
  const int base = static_cast<int>(p) * std::min(t, e0i - t);
  int rr = 0;
  i64 scale = 1;
  while (rr <= r.R.r_leq && static_cast<i64>(i) > scale * base) {
    ++rr;
    scale *= static_cast<i64>(p);
  }
  require(rr <= r.R.r_leq, ErrorKind::Internal, "generator climb exceeded M + R");
  const int m = r.M + rr;
  r.climb_level = m;
  try {
    const LocalField km = rr == 0 ? k : cyclotomic_extend(k, m, caps.degree_cap);
    const HilbertPairing h = HilbertPairing::build(km, caps.degree_cap);
    const int sp = static_cast<int>(scale) * static_cast<int>(p);
    r.witness = witness_json(m, symbol_generators_mod_p(h, {sp * t, sp * (e0i - t)}));
  } catch (const Error& err) {
    if (err.kind() != ErrorKind::DegreeCapExceeded && err.kind() != ErrorKind::CapReached &&
        err.kind() != ErrorKind::PrecisionExhausted)
      throw;
    r.caveats.push_back("generator witness at m = " + std::to_string(m) + " not computed: " + err.what());
  }
  return r;
}

BoundReport curve_bounds(const WeierstrassCurve& e, const BoundCaps& caps) {
  const ReductionKind kind = reduction_type(e).kind;
  require(kind != ReductionKind::NotGood, ErrorKind::NotGood, "curve does not have good reduction");
  return kind == ReductionKind::GoodOrdinary ? ordinary_bounds(e, caps) : supersingular_bounds(e, caps);
}

}  // namespace ramlock
