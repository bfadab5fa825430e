#include <algorithm>

#include "ramlock/bounds.hpp"
#include "ramlock/tower.hpp"

namespace ramlock {

namespace {

void require_free_rank2(const FiniteGaloisModule& m, u64 p, int level, const std::string& what) {
  require(m.p == p, ErrorKind::InconsistentInput, what + ": prime differs from the field's");
  require(m.level == level, ErrorKind::InconsistentInput,
          what + ": expected level " + std::to_string(level) + ", got " + std::to_string(m.level));
  require(m.rank() == 2 && m.type == std::vector<int>{level, level}, ErrorKind::InconsistentInput,
          what + ": expected a free module of rank 2");
}

void check_claim(const std::optional<bool>& claim, bool computed, const std::string& name) {
  if (claim && *claim != computed)
    fail(ErrorKind::InconsistentInput, "claimed " + name + " = " + (*claim ? "true" : "false") +
                                           " but the recomputed value is " + (computed ? "true" : "false"));
}

int vp(u64 n, u64 p) {
  int v = 0;
  while (n != 0 && n % p == 0) {
    n /= p;
    ++v;
  }
  return v;
}

}  // namespace

ExactCase exact_structure_cases(const BoundReport& ordinary, const FiniteGaloisModule& rho_nhat,
                                const FiniteGaloisModule& rho_inertia, const ExactClaims& claims) {
  require(ordinary.curve.has_value() && ordinary.reduction == "GoodOrdinary", ErrorKind::InvalidArgument,
          "exact cases need an ordinary report with its curve");
  const u64 p = ordinary.p;
  ExactCase out;
  if (ordinary.N == ordinary.Nhat) {
    out.exact = AbGroupStructure::cyclic(p, ordinary.N);
    out.which = "N = Nhat";
    return out;
  }
  require_free_rank2(rho_nhat, p, ordinary.Nhat, "rho at level N-hat");
  if (semisimplicity_check(rho_nhat)) {
    out.exact = AbGroupStructure::cyclic(p, ordinary.Nhat);
    out.which = "semisimple";
    return out;
  }

  // Non-semisimple case: every hypothesis is recomputed.
  const bool m_eq = ordinary.M == ordinary.Mur;
  const bool residue = vp(reduction_type(*ordinary.curve).point_count, p) >= ordinary.M;
  require_free_rank2(rho_inertia, p, ordinary.N + 1, "inertia action at level N + 1");
  const bool inertia_ns = !semisimplicity_check(rho_inertia);
  check_claim(claims.m_equals_mur, m_eq, "M = M^ur");
  check_claim(claims.residue_torsion, residue, "E-bar[p^M] in E-bar(F_q)");
  check_claim(claims.inertia_non_semisimple, inertia_ns, "inertia restriction non-semisimple");
  if (!m_eq) {
    out.failed = "M = M^ur fails: M = " + std::to_string(ordinary.M) + ", M^ur = " + std::to_string(ordinary.Mur);
  } else if (!residue) {
    out.failed = "E-bar[p^M] is not contained in E-bar(F_q)";
  } else if (!inertia_ns) {
    out.failed = "rho_{N+1} restricted to inertia is semisimple";
  } else {
    require(ordinary.Nhat == ordinary.M, ErrorKind::InconsistentInput,
            "non-semisimple case applies but N-hat = " + std::to_string(ordinary.Nhat) +
                " differs from M = " + std::to_string(ordinary.M));
    out.exact = AbGroupStructure::cyclic(p, ordinary.N);
    out.which = "non-semisimple";
  }
  return out;
}

void apply_exact_case(BoundReport& report, const ExactCase& c) {
  if (!c.exact) {
    report.caveats.push_back("exact structure undetermined: " + c.failed);
    return;
  }
  if (report.exact) {
    require(*report.exact == *c.exact, ErrorKind::InconsistentInput,
            "exact structures disagree: " + report.exact->str() + " vs " + c.exact->str());
    return;
  }
  report.exact = c.exact;
  report.exact_case = c.which;
  check_sandwich(report);
}

// --- Ozeki tower

Json OzekiReport::to_json() const {
  Json j;
  Json ls = Json::array();
  for (const auto& l : levels) ls.push_back(Json{{"m", l.m}, {"degree", l.degree}, {"M", l.M}, {"N", l.N}, {"gap", l.gap}});
  j["levels"] = ls;
  j["complete"] = complete;
  j["stopped"] = complete ? Json(nullptr) : Json(stopped);
  j["caveats"] = caveats;
  return j;
}

OzekiReport ozeki_tower(const WeierstrassCurve& e, int m_max, const BoundCaps& caps) {
  require(m_max >= 0, ErrorKind::InvalidArgument, "m_max must be nonnegative");
  require(e.disc.val() == 0, ErrorKind::NotGood, "curve does not have good reduction");
  OzekiReport out;
  for (int m = 1; m <= m_max; ++m) {
    LocalField km;
    try {
      km = cyclotomic_extend(e.k, m, caps.degree_cap);
    } catch (const Error& err) {
      if (err.kind() != ErrorKind::DegreeCapExceeded) throw;
      out.complete = false;
      out.stopped = err.what();
      break;
    }
    const WeierstrassCurve em = e.base_change(km);
    const CappedInt M = invariant_M(km, std::max(caps.m_cap, m + 1));
    const CappedInt N = torsion_level_N(em, caps.n_cap);
    for (const auto& [capped, what] : {std::pair{M.cap_reached, "M"}, std::pair{N.cap_reached, "N"}}) {
      if (!capped) continue;
      require(!caps.strict, ErrorKind::CapReached, std::string(what) + " search capped at m = " + std::to_string(m));
      out.caveats.push_back("CapReached: " + std::string(what) + " at m = " + std::to_string(m));
    }
    OzekiLevel lvl{m, km.degree(), M.value, N.value, M.value - N.value};
    require(lvl.M >= m, ErrorKind::Internal, "M(k_m) < m");
    if (!out.levels.empty() && out.levels.back().N == lvl.N)
      require(lvl.gap >= out.levels.back().gap, ErrorKind::Internal, "gap decreased while N stayed constant");
    out.levels.push_back(lvl);
  }
  return out;
}

// --- products and user-supplied data

BoundReport product_aggregate(const std::vector<BoundReport>& reports) {
  require(!reports.empty(), ErrorKind::InvalidArgument, "no reports to aggregate");
  const BoundReport& first = reports.front();
  const Json field = first.field ? field_to_json(*first.field) : Json(nullptr);
  for (const auto& r : reports) {
    const Json fj = r.field ? field_to_json(*r.field) : Json(nullptr);
    require(r.p == first.p && fj == field, ErrorKind::FieldMismatch, "reports are over different base fields");
  }
  if (reports.size() == 1) return first;
  BoundReport out = first;
  out.curve.reset();
  out.climb_level.reset();
  out.witness.reset();
  std::vector<std::string> caveats = first.caveats;
  for (size_t i = 1; i < reports.size(); ++i) {
    const BoundReport& r = reports[i];
    out.lower = direct_sum(out.lower, r.lower);
    out.upper = direct_sum(out.upper, r.upper);
    if (out.exact && r.exact) {
      out.exact = direct_sum(*out.exact, *r.exact);
      if (out.exact_case != r.exact_case) out.exact_case = "direct sum";
    } else {
      out.exact.reset();
      out.exact_case.clear();
    }
    out.g += r.g;
    out.N = std::min(out.N, r.N);
    out.Nhat = std::min(out.Nhat, r.Nhat);
    if (out.t0 != r.t0) out.t0.reset();
    if (out.reduction != r.reduction) out.reduction = "product";
    caveats.insert(caveats.end(), r.caveats.begin(), r.caveats.end());
  }
  std::sort(caveats.begin(), caveats.end());
  caveats.erase(std::unique(caveats.begin(), caveats.end()), caveats.end());
  out.caveats = caveats;
  check_sandwich(out);
  return out;
}

BoundReport abstract_bounds(u64 p, int g, int N, int Mur) {
  require(p >= 3 && p % 2 == 1, ErrorKind::InvalidArgument, "p must be an odd prime");
  for (u64 d = 3; d * d <= p; d += 2) require(p % d != 0, ErrorKind::InvalidArgument, "p must be an odd prime");
  require(g >= 1, ErrorKind::InvalidArgument, "g must be at least 1");
  require(N >= 0 && Mur >= 0, ErrorKind::InvalidArgument, "N and Mur must be nonnegative");
  require(N <= Mur, ErrorKind::OrderViolation, "N = " + std::to_string(N) + " exceeds Mur = " + std::to_string(Mur));
  BoundReport r;
  r.p = p;
  r.g = g;
  r.N = N;
  r.Mur = Mur;
  r.M = Mur;
  r.Nhat = Mur;
  r.reduction = "user-supplied";
  r.lower = power(AbGroupStructure::cyclic(p, N), g);
  r.upper = power(AbGroupStructure::cyclic(p, Mur), g);
  if (N == Mur) {
    r.exact = r.lower;
    r.exact_case = "N = Mur";
  }
  r.caveats.push_back("user-supplied data: g, N, Mur; M and N-hat not supplied");
  check_sandwich(r);
  return r;
}

}  // namespace ramlock
