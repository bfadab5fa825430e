#pragma once

#include <limits>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "ramlock/residue_field.hpp"
#include "ramlock/zmod.hpp"

namespace ramlock {

inline constexpr int kInfVal = std::numeric_limits<int>::max() / 4;
inline constexpr int kDefaultPrec = 40;
inline constexpr int kGuardDigits = 2;

/// Element of O_k / p^n: e*f residues, coefficient of pi^j x^i at index j*f + i.
struct OElt {
  std::vector<u64> c;
  bool operator==(const OElt&) const = default;
};

/// Element of the unramified subring W / p^n: f residues.
using WElt = std::vector<u64>;

struct FieldData;

/// How a field was obtained from its parent. Images are given as integral
/// elements of the child field.
struct Provenance {
  std::string kind = "base";  // base | cyclotomic | kummer | unramified
  std::shared_ptr<const FieldData> parent;
  OElt pi_image;   // image of the parent's uniformizer
  OElt gen_image;  // image of the parent's unramified generator
  int step_degree = 1;
  int step_ramification = 1;
  int cyclotomic_level = 0;  // m for k(mu_{p^m}) steps
  // Totally ramified steps only: Eisenstein polynomial of the new uniformizer
  // over the parent (monic, parent elements) and the change of basis from
  // powers of the new uniformizer to {pi_parent^s Pi^r}, row-major over W.
  std::vector<OElt> relative_poly;
  std::vector<WElt> basis_change;
};

struct FieldData {
  u64 p = 0;
  int f = 1;
  int e = 1;
  int prec = kDefaultPrec;
  int n = 1;  // p-adic storage digits
  ZMod z;
  FpPoly unram;  // canonical irreducible over F_p, lifted verbatim
  ResidueField res;
  std::vector<WElt> eis;  // non-leading Eisenstein coefficients c_0..c_{e-1}
  OElt eta;             // pi^e / p, a unit
  OElt eta_inv;         // p / pi^e
  OElt pi_em1_eta_inv;  // 1/pi = pi_em1_eta_inv / p
  Provenance prov;
};

/// A finite extension of Q_p, p odd, presented as W[pi]/(E(pi)) with W the
/// unramified ring of residue degree f and E Eisenstein over W. Values are
/// immutable and shared; two LocalField handles are the same field iff they
/// point at the same data.
class LocalField {
 public:
  LocalField() = default;
  explicit LocalField(std::shared_ptr<const FieldData> d) : d_(std::move(d)) {}

  /// Validated construction from integer data. `eisenstein` holds the
  /// coefficients low-to-high including the leading 1; each coefficient is an
  /// integer polynomial in the unramified generator (length <= f).
  static LocalField make(u64 p, int f, const std::vector<std::vector<i64>>& eisenstein,
                         int prec = kDefaultPrec);
  static LocalField make(u64 p, int f, const std::vector<i64>& eisenstein, int prec = kDefaultPrec);
  /// Q_p or its unramified extension of degree f.
  static LocalField unramified(u64 p, int f, int prec = kDefaultPrec);

  /// Construction from the non-leading Eisenstein coefficients c_j and the
  /// quotients c_j / p, both known modulo p^available_digits.
  static LocalField from_w_coefficients(u64 p, int f, const std::vector<WElt>& eis,
                                        const std::vector<WElt>& eis_over_p, int prec,
                                        int available_digits, Provenance prov);

  /// Storage digits needed for `prec` pi-adic digits at ramification e.
  static int digits_for(u64 p, int e, int prec);
  /// Largest precision the 62-bit residue budget supports at ramification e.
  static int max_prec(u64 p, int e);

  bool valid() const { return d_ != nullptr; }
  const FieldData& data() const { return *d_; }
  const std::shared_ptr<const FieldData>& handle() const { return d_; }
  bool same(const LocalField& o) const { return d_ == o.d_; }

  u64 p() const { return d_->p; }
  int f() const { return d_->f; }
  int e() const { return d_->e; }
  int degree() const { return d_->e * d_->f; }
  int prec() const { return d_->prec; }
  int digits() const { return d_->n; }
  /// pi-adic capacity of the storage ring O_k / p^n.
  int capacity() const { return d_->e * d_->n; }
  const ZMod& zmod() const { return d_->z; }
  const ResidueField& residue_field() const { return d_->res; }
  u64 q() const { return d_->res.q(); }
  const Provenance& provenance() const { return d_->prov; }
  std::optional<LocalField> parent() const;

  // --- unramified ring W / p^n
  WElt w_zero() const { return WElt(d_->f, 0); }
  WElt w_mul(const WElt& a, const WElt& b) const;
  WElt w_add(const WElt& a, const WElt& b) const;
  WElt w_sub(const WElt& a, const WElt& b) const;
  WElt w_neg(const WElt& a) const;
  WElt w_from_int(i64 v) const;
  int w_val(const WElt& a) const;
  bool w_is_unit(const WElt& a) const;
  WElt w_inv(const WElt& a) const;
  /// Reduction to the residue field.
  ResidueField::Elt w_residue(const WElt& a) const;

  // --- integral elements O_k / p^n
  OElt zero() const { return OElt{std::vector<u64>(static_cast<size_t>(d_->e * d_->f), 0)}; }
  OElt one() const;
  OElt from_int(i64 v) const;
  OElt from_w(const WElt& w) const;
  OElt uniformizer() const;
  /// Lift of the unramified generator.
  OElt unram_gen() const;
  OElt lift_residue(const ResidueField::Elt& r) const;
  WElt coeff(const OElt& a, int j) const;
  void set_coeff(OElt& a, int j, const WElt& w) const;

  OElt add(const OElt& a, const OElt& b) const;
  OElt sub(const OElt& a, const OElt& b) const;
  OElt neg(const OElt& a) const;
  OElt mul(const OElt& a, const OElt& b) const;
  OElt mul_w(const OElt& a, const WElt& w) const;
  OElt pow(OElt a, u64 e) const;
  OElt mul_by_pi(const OElt& a, int times = 1) const;
  /// a / pi^t for v(a) >= t; loses t pi-adic digits at the top.
  OElt div_by_pi(const OElt& a, int t) const;
  /// Inverse of a unit.
  OElt inv(const OElt& a) const;
  /// pi-adic valuation, kInfVal for zero mod p^n.
  int val(const OElt& a) const;
  bool is_unit(const OElt& a) const { return val(a) == 0; }
  ResidueField::Elt residue(const OElt& a) const;
  /// True iff a == b modulo pi^t.
  bool congruent(const OElt& a, const OElt& b, int t) const;
  /// Reduce modulo pi^t (t <= capacity) to a canonical representative.
  OElt truncate(const OElt& a, int t) const;

 private:
  std::shared_ptr<const FieldData> d_;
};

/// Element of k^x or zero, written pi^val * unit, with unit known modulo
/// pi^relprec. Zero carries the absolute precision to which it vanishes.
class FieldElement {
 public:
  FieldElement() = default;
  /// From an integral element known modulo pi^absprec (default: full capacity).
  FieldElement(LocalField k, const OElt& a, int absprec = -1);

  static FieldElement zero(const LocalField& k, int absprec = -1);
  static FieldElement one(const LocalField& k);
  static FieldElement from_int(const LocalField& k, i64 v);
  static FieldElement uniformizer(const LocalField& k);
  static FieldElement from_unit(const LocalField& k, int val, const OElt& unit, int relprec);

  const LocalField& field() const { return k_; }
  bool is_zero() const { return val_ >= kInfVal; }
  /// pi-adic valuation; kInfVal when zero to precision.
  int val() const { return val_; }
  const OElt& unit() const { return unit_; }
  /// Relative precision (nonzero) or absolute precision (zero).
  int relprec() const { return prec_; }
  /// Absolute precision val + relprec (or the zero's absolute precision).
  int absprec() const { return is_zero() ? prec_ : val_ + prec_; }

  /// pi^val * unit as an integral element; requires val >= 0.
  OElt integral() const;
  ResidueField::Elt residue() const;

  FieldElement operator-() const;
  FieldElement inv() const;
  FieldElement pow(i64 e) const;
  FieldElement mul_pi_power(int t) const;
  /// Same value with relative precision lowered to `r`.
  FieldElement with_relprec(int r) const;

  friend FieldElement operator+(const FieldElement& a, const FieldElement& b);
  friend FieldElement operator-(const FieldElement& a, const FieldElement& b);
  friend FieldElement operator*(const FieldElement& a, const FieldElement& b);
  friend FieldElement operator/(const FieldElement& a, const FieldElement& b);
  FieldElement& operator+=(const FieldElement& b) { return *this = *this + b; }
  FieldElement& operator-=(const FieldElement& b) { return *this = *this - b; }
  FieldElement& operator*=(const FieldElement& b) { return *this = *this * b; }

  /// Agreement to the host precision (relative to the smaller valuation).
  bool equals(const FieldElement& b) const;

 private:
  LocalField k_;
  int val_ = kInfVal;
  OElt unit_;
  int prec_ = 0;
};

/// Map an integral element of the parent of `child` into `child`.
OElt embed_from_parent(const LocalField& child, const OElt& a);
/// Map an element of `from` into `to`, walking up the provenance chain of `to`.
FieldElement embed(const FieldElement& x, const LocalField& to);
/// True if `ancestor` appears on the provenance chain of `k` (or is k).
bool descends_from(const LocalField& k, const LocalField& ancestor);
/// Product of ramification indices along the chain from `ancestor` to `k`.
int relative_ramification(const LocalField& k, const LocalField& ancestor);

}  // namespace ramlock
