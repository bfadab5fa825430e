#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "ramlock/descriptor.hpp"
#include "ramlock/fp_linalg.hpp"
#include "ramlock/local_field.hpp"
#include "ramlock/tower.hpp"

namespace ramlock {

/// One basis class of k^x / p. Level 0 marks the uniformizer; unit classes
/// carry their filtration level.
struct SpaceBasisVector {
  int level = 0;
  FieldElement rep;
  bool extra = false;  // the class at level p e_0 outside the p-th powers of U^{e_0}
};

/// k^x / (k^x)^p as an F_p-space with a filtration-adapted basis: the
/// uniformizer, then for each level 1 <= i < p e_0 with p not dividing i the
/// classes 1 + x^b pi^i (b < f), then the extra class when mu_p is in k.
class MulModPSpace {
 public:
  static MulModPSpace build(const LocalField& k);

  const LocalField& field() const { return k_; }
  int dim() const { return static_cast<int>(basis_.size()); }
  /// 1 iff mu_p is contained in k.
  int delta() const { return delta_; }
  const std::vector<SpaceBasisVector>& basis() const { return basis_; }
  /// Largest level carrying a nontrivial class (p e_0 when delta = 1).
  int top_level() const { return top_; }

  /// Coordinates of the class of a nonzero x.
  FpVec coords(const FieldElement& x) const;
  bool is_pth_power(const FieldElement& x) const { return fp::is_zero(coords(x)); }
  /// Basis indices spanning U-bar^i (i >= 1), or all unit classes for i = 0.
  std::vector<int> filtration_indices(int i) const;
  /// Representative with the given coordinates.
  FieldElement element(const FpVec& c) const;

 private:
  LocalField k_;
  std::vector<SpaceBasisVector> basis_;
  std::vector<FieldElement> basis_inv_;
  int delta_ = 0;
  int top_ = 0;
  int boundary_ = 0;  // p e_0 if integral, else 0
  ResidueField::Elt extra_residue_;
  std::vector<i64> phi_preimage_;  // residue index -> preimage index under b^p + eps b, or -1
};

/// Independent p-th power test: x^p - a has a root in k.
bool is_pth_power_by_roots(const LocalField& k, const FieldElement& a);

/// Level of the class of a unit x, or nullopt (Top) when the class is trivial.
std::optional<int> filtration_level(const MulModPSpace& s, const FieldElement& x);

/// Linear functional on k^x / p whose kernel is the image of N_{L/k} for
/// L = k(x^{1/p}); zero when x is a p-th power.
FpVec norm_functional(const MulModPSpace& s, const FieldElement& x, int cap = default_degree_cap());

/// Mod-p Hilbert symbol on k^x / p, calibrated once per field. value(a, b)
/// vanishes iff a is a norm from k(b^{1/p}).
class HilbertPairing {
 public:
  static HilbertPairing build(const LocalField& k, int cap = default_degree_cap());

  const MulModPSpace& space() const { return s_; }
  const FpMat& table() const { return table_; }
  const FieldElement& zeta() const { return zeta_; }
  int cap() const { return cap_; }
  u64 value(const FieldElement& a, const FieldElement& b) const;
  u64 value_coords(const FpVec& a, const FpVec& b) const;
  /// {"field", "zeta_choice", "table"}.
  Json to_json() const;

 private:
  MulModPSpace s_;
  FpMat table_;  // table_[i][j] = (b_i, b_j)
  FieldElement zeta_;
  int cap_ = 0;
};

/// (a, b)_p through the norm group of k(b^{1/p}), checked against the table.
u64 hilbert_symbol(const HilbertPairing& h, const FieldElement& a, const FieldElement& b);

/// Order of the image of (U-bar^i, U-bar^j)_p.
struct PairingOrder {
  u64 computed = 1;
  u64 formula = 1;
};
PairingOrder filtration_pairing_order(const HilbertPairing& h, int i, int j);

struct KummerRootLevel {
  LocalField field;
  int level = 0;     // level of x^{1/p} in the new field
  int expected = 0;  // level of x in k
  bool reduced = false;  // x was replaced by its basis representative
};
KummerRootLevel kummer_root_level(const LocalField& k, const FieldElement& x,
                                  int cap = default_degree_cap());

struct SymbolWitness {
  FieldElement unit;
  FieldElement partner;
  int unit_level = 0;
  u64 value = 0;
};
struct SymbolGenerators {
  bool found = false;
  int zeta_level = 0;  // filtration level i of zeta_{p^M}
  int M = 0;
  std::optional<SymbolWitness> first;   // unit in U-bar^{levels.second}
  std::optional<SymbolWitness> second;  // unit in U-bar^{levels.first}
  std::string blocking;                 // inequality that failed, when not found
};
/// Witnesses for the pair of levels (p t_0, p(e_0 - t_0)).
SymbolGenerators symbol_generators_mod_p(const HilbertPairing& h, std::pair<int, int> levels);

}  // namespace ramlock
