#pragma once

#include <cstdint>
#include <vector>

#include "ramlock/zmod.hpp"

namespace ramlock {

/// Dense polynomial over F_p, low-to-high, always trimmed.
using FpPoly = std::vector<u64>;

namespace fppoly {

void trim(FpPoly& a);
int degree(const FpPoly& a);
FpPoly add(const FpPoly& a, const FpPoly& b, u64 p);
FpPoly sub(const FpPoly& a, const FpPoly& b, u64 p);
FpPoly mul(const FpPoly& a, const FpPoly& b, u64 p);
/// Remainder of a modulo nonzero b.
FpPoly rem(const FpPoly& a, const FpPoly& b, u64 p);
FpPoly gcd(FpPoly a, FpPoly b, u64 p);
/// x^(p^k) mod h.
FpPoly frobenius_power_of_x(const FpPoly& h, int k, u64 p);
/// Rabin's test.
bool is_irreducible(const FpPoly& h, u64 p);
/// First monic irreducible of degree f in counter order (c_0 fastest).
FpPoly canonical_irreducible(int f, u64 p);

}  // namespace fppoly

/// F_q = F_p[x]/(h) with elements as coefficient vectors of length f.
class ResidueField {
 public:
  using Elt = std::vector<u64>;

  ResidueField() = default;
  ResidueField(u64 p, FpPoly modulus);

  u64 p() const { return p_; }
  int f() const { return f_; }
  u64 q() const { return q_; }
  const FpPoly& modulus() const { return h_; }

  Elt zero() const { return Elt(f_, 0); }
  Elt one() const;
  Elt from_int(i64 v) const;
  /// Generator x of F_q over F_p.
  Elt gen() const;
  bool is_zero(const Elt& a) const;

  Elt add(const Elt& a, const Elt& b) const;
  Elt sub(const Elt& a, const Elt& b) const;
  Elt neg(const Elt& a) const;
  Elt mul(const Elt& a, const Elt& b) const;
  Elt scale(const Elt& a, u64 c) const;
  Elt pow(Elt a, u64 e) const;
  Elt inv(const Elt& a) const;
  /// Unique b with b^p = a.
  Elt frobenius_inverse(const Elt& a) const;
  bool is_square(const Elt& a) const;

  /// Enumeration order: index = sum c_i p^i.
  Elt from_index(u64 idx) const;
  u64 to_index(const Elt& a) const;

  /// Evaluate a polynomial with F_q coefficients (low-to-high).
  Elt eval(const std::vector<Elt>& poly, const Elt& x) const;
  /// All roots in F_q by exhaustive evaluation.
  std::vector<Elt> roots(const std::vector<Elt>& poly) const;

 private:
  u64 p_ = 0;
  int f_ = 0;
  u64 q_ = 0;
  FpPoly h_;
};

}  // namespace ramlock
