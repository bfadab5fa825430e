#pragma once

#include <optional>
#include <string>

#include "ramlock/local_field.hpp"
#include "ramlock/poly.hpp"

namespace ramlock {

/// D_max: bound on absolute degrees of constructed fields (RAMLOCK_DEGREE_CAP, default 16).
int default_degree_cap();
/// F_max: bound on unramified degrees searched for roots of unity (RAMLOCK_FMAX, default 4).
int default_residue_cap();

/// Unramified extension of degree d.
LocalField unramified_extend(const LocalField& k, int d, int cap = default_degree_cap(),
                             const std::string& kind = "unramified");

/// k(g) for a root g of the monic polynomial h over O_k, whose coefficients
/// are known modulo pi^absprec, given that k(g)/k is totally ramified of
/// degree deg h and v(g) = s in the normalisation of the new field, with s
/// coprime to deg h.
LocalField ramified_step(const LocalField& k, const OPoly& h, int absprec, int s,
                         const std::string& kind, int cap = default_degree_cap());

/// Class of x in k^x / p in the normal form used for Kummer steps.
struct KummerClass {
  enum class Type { PthPower, Valuation, UnitLevel, Unramified };
  Type type = Type::PthPower;
  int level = 0;       // unit level for UnitLevel and Unramified
  FieldElement rep;    // valuation 1 (Valuation) or 1 + O(pi^level) (unit cases)
};
KummerClass kummer_class(const LocalField& k, const FieldElement& x);

/// k(x^{1/p}) for x not a p-th power.
LocalField kummer_extend(const LocalField& k, const FieldElement& x, int cap = default_degree_cap());

/// k(mu_{p^m}).
LocalField cyclotomic_extend(const LocalField& k, int m, int cap = default_degree_cap());

/// A primitive p^j-th root of unity in k, if any. The choice is deterministic:
/// zeta_p is the first root of the p-th cyclotomic polynomial and each later
/// one the first p-th root of its predecessor.
std::optional<FieldElement> root_of_unity(const LocalField& k, int j);

/// Norm from a field built by ramified_step down to its parent.
FieldElement relative_norm(const LocalField& L, const FieldElement& a);

/// Degree of k over an ancestor.
int relative_degree(const LocalField& k, const LocalField& ancestor);

}  // namespace ramlock
