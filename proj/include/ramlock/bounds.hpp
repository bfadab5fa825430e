#pragma once

#include <optional>
#include <string>
#include <vector>

#include "ramlock/descriptor.hpp"
#include "ramlock/elliptic.hpp"
#include "ramlock/galmod.hpp"
#include "ramlock/invariants.hpp"
#include "ramlock/unit_symbols.hpp"

namespace ramlock {

struct BoundCaps {
  int m_cap = 6;   // search limit for M and M^ur
  int n_cap = 3;   // search limit for N and N-hat
  int f_max = default_residue_cap();
  int degree_cap = default_degree_cap();
  /// Raise CapReached instead of recording a caveat.
  bool strict = false;
};

/// Sandwich lower <<= (ramified part of the abelian fundamental group) <<= upper,
/// with the invariants that produced it.
struct BoundReport {
  u64 p = 0;
  std::optional<LocalField> field;
  std::optional<WeierstrassCurve> curve;
  int e = 0;
  int f = 0;
  Rational e0{0, 1};
  std::optional<int> t0;
  RPair R;
  int M = 0;
  int Mur = 0;
  std::string reduction;  // GoodOrdinary | GoodSupersingular | user-supplied | product
  int N = 0;
  int Nhat = 0;
  int g = 1;
  AbGroupStructure lower;
  AbGroupStructure upper;
  std::optional<AbGroupStructure> exact;
  std::string exact_case;  // empty when exact is absent
  std::optional<int> climb_level;  // supersingular: tower level m of the generator search
  std::optional<Json> witness;     // summary of the generator search at that level
  std::vector<std::string> caveats;

  Json to_json() const;
  static BoundReport from_json(const Json& j);
};

/// a <<= b: after padding with trivial factors, each elementary divisor of a
/// divides the matching one of b (both sorted ascending).
bool divides_componentwise(const AbGroupStructure& a, const AbGroupStructure& b);
AbGroupStructure direct_sum(const AbGroupStructure& a, const AbGroupStructure& b);
AbGroupStructure power(const AbGroupStructure& a, int g);

/// Field invariants only (M, M^ur, e_0, R), with caveats for capped searches.
BoundReport field_report(const LocalField& k, const BoundCaps& caps = {});
/// Adds N, N-hat, reduction type and t_0 (supersingular, when defined) to field_report.
BoundReport invariants_report(const WeierstrassCurve& e, const BoundCaps& caps = {});

BoundReport ordinary_bounds(const WeierstrassCurve& e, const BoundCaps& caps = {});
BoundReport supersingular_bounds(const WeierstrassCurve& e, const BoundCaps& caps = {});
/// Sandwich (Z/p^N) <<= . <<= (Z/p^Mur) for any good reduction, no torsion
/// hypothesis; exact only via e_k < p - 1.
BoundReport sandwich_bounds(const WeierstrassCurve& e, const BoundCaps& caps = {});
/// Dispatch on the reduction type.
BoundReport curve_bounds(const WeierstrassCurve& e, const BoundCaps& caps = {});

/// Claimed hypotheses for the non-semisimple case; unset entries are taken
/// from the recomputed values, set entries must agree with them.
struct ExactClaims {
  std::optional<bool> m_equals_mur;
  std::optional<bool> residue_torsion;         // E-bar[p^M] inside E-bar(F_q)
  std::optional<bool> inertia_non_semisimple;  // rho_{N+1} restricted to inertia
};

struct ExactCase {
  std::optional<AbGroupStructure> exact;
  std::string which;   // "semisimple" | "non-semisimple" | "N = Nhat"
  std::string failed;  // hypothesis that failed when exact is empty
};

/// rho_nhat: E[p^Nhat] with the Galois action; rho_inertia: E[p^(N+1)] with
/// the inertia action. Both rank 2 and free at their level.
ExactCase exact_structure_cases(const BoundReport& ordinary, const FiniteGaloisModule& rho_nhat,
                                const FiniteGaloisModule& rho_inertia, const ExactClaims& claims = {});
/// Copies a found case into the report and re-checks the sandwich.
void apply_exact_case(BoundReport& report, const ExactCase& c);

struct OzekiLevel {
  int m = 0;
  int degree = 0;
  int M = 0;
  int N = 0;
  int gap = 0;
};
struct OzekiReport {
  std::vector<OzekiLevel> levels;
  bool complete = true;  // false when a level exceeded the degree cap
  std::string stopped;   // reason when incomplete
  std::vector<std::string> caveats;
  Json to_json() const;
};
OzekiReport ozeki_tower(const WeierstrassCurve& e, int m_max, const BoundCaps& caps = {});

BoundReport product_aggregate(const std::vector<BoundReport>& reports);
/// User-supplied invariants (e.g. for Jacobians of higher genus). M and N-hat
/// are not supplied and are reported as M^ur.
BoundReport abstract_bounds(u64 p, int g, int N, int Mur);

/// Internal error unless lower <<= exact <<= upper.
void check_sandwich(const BoundReport& r);

}  // namespace ramlock
