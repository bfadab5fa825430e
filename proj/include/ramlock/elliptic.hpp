#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "ramlock/descriptor.hpp"
#include "ramlock/invariants.hpp"
#include "ramlock/local_field.hpp"
#include "ramlock/poly.hpp"

namespace ramlock {

/// y^2 + a1 xy + a3 y = x^3 + a2 x^2 + a4 x + a6 with integral coefficients.
struct WeierstrassCurve {
  LocalField k;
  std::array<FieldElement, 5> a;  // a1, a2, a3, a4, a6
  FieldElement b2, b4, b6, b8, c4, c6, disc;

  static WeierstrassCurve make(const LocalField& k, const std::array<FieldElement, 5>& a);
  static WeierstrassCurve from_ints(const LocalField& k, const std::array<i64, 5>& a);
  /// Same model over an extension on the provenance chain.
  WeierstrassCurve base_change(const LocalField& to) const;
  OElt ai(int idx) const { return a[idx].integral(); }
  bool on_curve(const FieldElement& x, const FieldElement& y) const;
};

/// CM descriptor: the order of discriminant -4 (Z[i]) or -3 (Z[omega]) and
/// eta = a + b i (or a + b omega).
struct CMData {
  int disc = -4;
  i64 a = 0;
  i64 b = 0;
};

struct CurveDescriptor {
  WeierstrassCurve curve;
  std::optional<CMData> cm;
};
Json curve_to_json(const CurveDescriptor& c);
CurveDescriptor curve_from_json(const Json& j);

enum class ReductionKind { GoodOrdinary, GoodSupersingular, NotGood };
std::string to_string(ReductionKind k);

struct ReductionData {
  ReductionKind kind = ReductionKind::NotGood;
  u64 point_count = 0;
  i64 trace = 0;
  int divpoly_degree = -1;  // degree of the reduced p-division polynomial
};
inline constexpr u64 kPointCountLimit = 10000;
ReductionData reduction_type(const WeierstrassCurve& e, u64 q_limit = kPointCountLimit);

/// Division polynomial f_n (psi_n for odd n) over O_k.
OPoly division_polynomial(const WeierstrassCurve& e, int n);

/// Affine point or the identity.
struct CurvePoint {
  bool infinity = true;
  FieldElement x, y;
};
CurvePoint point_add(const WeierstrassCurve& e, const CurvePoint& p, const CurvePoint& q);
CurvePoint point_neg(const WeierstrassCurve& e, const CurvePoint& p);
CurvePoint point_mul(const WeierstrassCurve& e, const CurvePoint& p, i64 m);

/// Points of E(k) killed by p^n, identity excluded.
std::vector<CurvePoint> torsion_points(const WeierstrassCurve& e, int n);
/// max n <= nmax with E[p^n] in E(k).
CappedInt torsion_level_N(const WeierstrassCurve& e, int nmax);

// --- formal group in the parameter t = -x/y

/// Truncated series in two variables, coefficient of X^i Y^j at [i][j].
using BiSeries = std::vector<std::vector<OElt>>;

struct FormalGroupData {
  LocalField k;
  int degree_cap = 0;
  std::vector<OElt> w;          // w(t) = -1/y
  BiSeries law;                 // F(X, Y)
  std::vector<OElt> inverse;    // [-1](t)
  std::vector<OElt> mult_p;     // [p](t)
  std::vector<FieldElement> log;  // formal logarithm

  std::vector<OElt> add(const std::vector<OElt>& f, const std::vector<OElt>& g) const;
  std::vector<OElt> multiply(const std::vector<OElt>& f, i64 m) const;
  /// f(g(t)) for g without constant term.
  std::vector<OElt> compose(const std::vector<OElt>& f, const std::vector<OElt>& g) const;
  /// [p^n](t) by iterated composition.
  std::vector<OElt> mult_p_power(int n) const;
};
int default_formal_cap(u64 p);
FormalGroupData formal_group(const WeierstrassCurve& e, int degree_cap);

/// Roots of positive valuation of a truncated series minus `target`, with the
/// truncation error certified by Hensel's bound.
std::vector<FieldElement> formal_roots(const FormalGroupData& fg, const std::vector<OElt>& series,
                                       const FieldElement& target);

/// Points of E-hat[p^n] in m_k as parameters, including zero. The series cap
/// grows until every root is certified.
std::vector<FieldElement> formal_torsion(const WeierstrassCurve& e, int n);

struct NhatResult {
  CappedInt value;
  int degree_cap = 0;  // series degree used
  Rational min_root_valuation{0, 1};
};
NhatResult nhat(const WeierstrassCurve& e, int nmax);

struct T0Result {
  bool rational = false;              // E-hat[p] inside E-hat(m_k)
  std::vector<Rational> slopes;       // valuations of nonzero p-torsion of the formal group
  int t0 = 0;                         // when rational
  std::pair<int, int> levels{0, 0};   // (p t_0, p(e_0 - t_0)) when rational
};
T0Result t0(const WeierstrassCurve& e);

bool cm_kernel_check(const WeierstrassCurve& e, const CMData& eta, int n);

struct IsogenyKernel {
  int N = 0;
  std::vector<CurvePoint> points;           // H_N without the identity
  std::optional<WeierstrassCurve> quotient;  // Velu model for N = 1
};
IsogenyKernel isogeny_kernel_data(const WeierstrassCurve& e, int N);

}  // namespace ramlock
