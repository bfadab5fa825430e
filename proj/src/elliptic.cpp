#include "ramlock/elliptic.hpp"

#include <algorithm>
#include <cmath>
#include <map>

#include "ramlock/tower.hpp"

namespace ramlock {

namespace {

/// F_q as a coefficient ring.
struct FqRing {
  const ResidueField& rf;
  using T = ResidueField::Elt;
  T zero() const { return rf.zero(); }
  T from_int(i64 v) const { return rf.from_int(v); }
  T add(const T& a, const T& b) const { return rf.add(a, b); }
  T sub(const T& a, const T& b) const { return rf.sub(a, b); }
  T mul(const T& a, const T& b) const { return rf.mul(a, b); }
  bool is_zero(const T& a) const { return rf.is_zero(a); }
};

struct OkCoeffRing {
  const LocalField& k;
  using T = OElt;
  T zero() const { return k.zero(); }
  T from_int(i64 v) const { return k.from_int(v); }
  T add(const T& a, const T& b) const { return k.add(a, b); }
  T sub(const T& a, const T& b) const { return k.sub(a, b); }
  T mul(const T& a, const T& b) const { return k.mul(a, b); }
  bool is_zero(const T& a) const { return k.val(a) >= kInfVal; }
};

template <class R>
using RPoly = std::vector<typename R::T>;

template <class R>
void rtrim(const R& r, RPoly<R>& a) {
  while (!a.empty() && r.is_zero(a.back())) a.pop_back();
}

template <class R>
RPoly<R> radd(const R& r, const RPoly<R>& a, const RPoly<R>& b) {
  RPoly<R> out(std::max(a.size(), b.size()), r.zero());
  for (size_t i = 0; i < a.size(); ++i) out[i] = a[i];
  for (size_t i = 0; i < b.size(); ++i) out[i] = r.add(out[i], b[i]);
  rtrim(r, out);
  return out;
}

template <class R>
RPoly<R> rsub(const R& r, const RPoly<R>& a, const RPoly<R>& b) {
  RPoly<R> out(std::max(a.size(), b.size()), r.zero());
  for (size_t i = 0; i < a.size(); ++i) out[i] = a[i];
  for (size_t i = 0; i < b.size(); ++i) out[i] = r.sub(out[i], b[i]);
  rtrim(r, out);
  return out;
}

template <class R>
RPoly<R> rmul(const R& r, const RPoly<R>& a, const RPoly<R>& b) {
  if (a.empty() || b.empty()) return {};
  RPoly<R> out(a.size() + b.size() - 1, r.zero());
  for (size_t i = 0; i < a.size(); ++i) {
    if (r.is_zero(a[i])) continue;
    for (size_t j = 0; j < b.size(); ++j) out[i + j] = r.add(out[i + j], r.mul(a[i], b[j]));
  }
  rtrim(r, out);
  return out;
}

/// Division polynomials f_n: psi_n for odd n, psi_n / psi_2 for even n.
template <class R>
class DivisionPolys {
 public:
  DivisionPolys(const R& r, const std::array<typename R::T, 4>& b) : r_(r), b_(b) {
    const auto& [b2, b4, b6, b8] = b_;
    auto c = [&](i64 v) { return r_.from_int(v); };
    big_f_ = {b6, r_.mul(c(2), b4), b2, c(4)};
    rtrim(r_, big_f_);
    memo_[0] = {};
    memo_[1] = {c(1)};
    memo_[2] = {c(1)};
    RPoly<R> f3 = {b8, r_.mul(c(3), b6), r_.mul(c(3), b4), b2, c(3)};
    rtrim(r_, f3);
    memo_[3] = f3;
    RPoly<R> f4 = {r_.sub(r_.mul(b4, b8), r_.mul(b6, b6)),
                   r_.sub(r_.mul(b2, b8), r_.mul(b4, b6)),
                   r_.mul(c(10), b8),
                   r_.mul(c(10), b6),
                   r_.mul(c(5), b4),
                   b2,
                   c(2)};
    rtrim(r_, f4);
    memo_[4] = f4;
  }

  const RPoly<R>& get(int n) {
    auto it = memo_.find(n);
    if (it != memo_.end()) return it->second;
    RPoly<R> out;
    const int m = n / 2;
    if (n % 2 == 1) {
      const RPoly<R> a = rmul(r_, get(m + 2), cube(get(m)));
      const RPoly<R> b = rmul(r_, get(m - 1), cube(get(m + 1)));
      const RPoly<R> f2 = rmul(r_, big_f_, big_f_);
      out = (m % 2 == 0) ? rsub(r_, rmul(r_, f2, a), b) : rsub(r_, a, rmul(r_, f2, b));
    } else {
      const RPoly<R> a = rmul(r_, get(m + 2), sq(get(m - 1)));
      const RPoly<R> b = rmul(r_, get(m - 2), sq(get(m + 1)));
      out = rmul(r_, get(m), rsub(r_, a, b));
    }
    return memo_[n] = std::move(out);
  }

 private:
  RPoly<R> sq(const RPoly<R>& a) { return rmul(r_, a, a); }
  RPoly<R> cube(const RPoly<R>& a) { return rmul(r_, a, sq(a)); }

  const R& r_;
  std::array<typename R::T, 4> b_;
  RPoly<R> big_f_;
  std::map<int, RPoly<R>> memo_;
};

FieldElement fe_int(const LocalField& k, i64 v) { return FieldElement::from_int(k, v); }

}  // namespace

// --- curves

WeierstrassCurve WeierstrassCurve::make(const LocalField& k, const std::array<FieldElement, 5>& a) {
  WeierstrassCurve e;
  e.k = k;
  e.a = a;
  for (const auto& c : a) {
    require(c.field().same(k), ErrorKind::FieldMismatch, "curve coefficient from another field");
    require(c.is_zero() || c.val() >= 0, ErrorKind::InvalidArgument, "curve coefficients must be integral");
  }
  const auto& [a1, a2, a3, a4, a6] = a;
  e.b2 = a1 * a1 + fe_int(k, 4) * a2;
  e.b4 = fe_int(k, 2) * a4 + a1 * a3;
  e.b6 = a3 * a3 + fe_int(k, 4) * a6;
  e.b8 = a1 * a1 * a6 + fe_int(k, 4) * a2 * a6 - a1 * a3 * a4 + a2 * a3 * a3 - a4 * a4;
  e.c4 = e.b2 * e.b2 - fe_int(k, 24) * e.b4;
  e.c6 = -(e.b2 * e.b2 * e.b2) + fe_int(k, 36) * e.b2 * e.b4 - fe_int(k, 216) * e.b6;
  e.disc = -(e.b2 * e.b2 * e.b8) - fe_int(k, 8) * e.b4 * e.b4 * e.b4 - fe_int(k, 27) * e.b6 * e.b6 +
           fe_int(k, 9) * e.b2 * e.b4 * e.b6;
  require(!e.disc.is_zero(), ErrorKind::InvalidArgument, "singular curve (discriminant vanishes)");
  return e;
}

WeierstrassCurve WeierstrassCurve::from_ints(const LocalField& k, const std::array<i64, 5>& a) {
  std::array<FieldElement, 5> c;
  for (int i = 0; i < 5; ++i) c[i] = fe_int(k, a[i]);
  return make(k, c);
}

WeierstrassCurve WeierstrassCurve::base_change(const LocalField& to) const {
  std::array<FieldElement, 5> c;
  for (int i = 0; i < 5; ++i) c[i] = embed(a[i], to);
  return make(to, c);
}

bool WeierstrassCurve::on_curve(const FieldElement& x, const FieldElement& y) const {
  const auto& [a1, a2, a3, a4, a6] = a;
  const FieldElement lhs = y * y + a1 * x * y + a3 * y;
  const FieldElement rhs = x * x * x + a2 * x * x + a4 * x + a6;
  return lhs.equals(rhs);
}

std::string to_string(ReductionKind k) {
  switch (k) {
    case ReductionKind::GoodOrdinary:
      return "GoodOrdinary";
    case ReductionKind::GoodSupersingular:
      return "GoodSupersingular";
    case ReductionKind::NotGood:
      return "NotGood";
  }
  return "?";
}

ReductionData reduction_type(const WeierstrassCurve& e, u64 q_limit) {
  const LocalField& k = e.k;
  ReductionData out;
  const int vd = e.disc.val();
  require(vd < 12, ErrorKind::InvalidArgument,
          "v(disc) >= 12: the model may not be minimal; substitute x = pi^2 x', y = pi^3 y'");
  if (vd > 0) return out;
  require(k.q() <= q_limit, ErrorKind::ResidueFieldTooLarge,
          "residue field of size " + std::to_string(k.q()) + " exceeds the point-count limit");
  const ResidueField& rf = k.residue_field();
  const u64 p = k.p();
  auto red = [&](const FieldElement& c) { return c.is_zero() ? rf.zero() : c.residue(); };
  const ResidueField::Elt b2 = red(e.b2), b4 = red(e.b4), b6 = red(e.b6), b8 = red(e.b8);
  // (2y + a1 x + a3)^2 = 4x^3 + b2 x^2 + 2 b4 x + b6
  const std::vector<ResidueField::Elt> big_f = {b6, rf.scale(b4, 2), b2, rf.from_int(4)};
  i64 count = 1;
  for (u64 idx = 0; idx < rf.q(); ++idx) {
    const auto v = rf.eval(big_f, rf.from_index(idx));
    count += rf.is_zero(v) ? 1 : (rf.is_square(v) ? 2 : 0);
  }
  out.point_count = static_cast<u64>(count);
  out.trace = static_cast<i64>(rf.q()) + 1 - count;
  require(static_cast<double>(out.trace * out.trace) <= 4.0 * static_cast<double>(rf.q()), ErrorKind::Internal,
          "point count violates the Hasse bound");

  const FqRing ring{rf};
  DivisionPolys<FqRing> dp(ring, {b2, b4, b6, b8});
  out.divpoly_degree = static_cast<int>(dp.get(static_cast<int>(p)).size()) - 1;
  const bool ss_trace = out.trace % static_cast<i64>(p) == 0;
  const bool ss_divpoly = out.divpoly_degree <= 0;
  require(ss_trace == ss_divpoly, ErrorKind::Internal, "supersingularity classifiers disagree");
  out.kind = ss_trace ? ReductionKind::GoodSupersingular : ReductionKind::GoodOrdinary;
  return out;
}

OPoly division_polynomial(const WeierstrassCurve& e, int n) {
  require(n >= 1, ErrorKind::InvalidArgument, "division polynomial index must be positive");
  const OkCoeffRing ring{e.k};
  DivisionPolys<OkCoeffRing> dp(ring, {e.b2.integral(), e.b4.integral(), e.b6.integral(), e.b8.integral()});
  return dp.get(n);
}

// --- points

CurvePoint point_neg(const WeierstrassCurve& e, const CurvePoint& p) {
  if (p.infinity) return p;
  return {false, p.x, -p.y - e.a[0] * p.x - e.a[2]};
}

CurvePoint point_add(const WeierstrassCurve& e, const CurvePoint& p, const CurvePoint& q) {
  if (p.infinity) return q;
  if (q.infinity) return p;
  const auto& [a1, a2, a3, a4, a6] = e.a;
  FieldElement lambda;
  if (p.x.equals(q.x)) {
    const FieldElement denom = fe_int(e.k, 2) * p.y + a1 * p.x + a3;
    if (!p.y.equals(q.y) || denom.is_zero()) return CurvePoint{};
    lambda = (fe_int(e.k, 3) * p.x * p.x + fe_int(e.k, 2) * a2 * p.x + a4 - a1 * p.y) / denom;
  } else {
    lambda = (q.y - p.y) / (q.x - p.x);
  }
  const FieldElement nu = p.y - lambda * p.x;
  const FieldElement x3 = lambda * lambda + a1 * lambda - a2 - p.x - q.x;
  const FieldElement y3 = -(lambda + a1) * x3 - nu - a3;
  return {false, x3, y3};
}

CurvePoint point_mul(const WeierstrassCurve& e, const CurvePoint& p, i64 m) {
  if (m < 0) return point_mul(e, point_neg(e, p), -m);
  CurvePoint acc, base = p;
  while (m) {
    if (m & 1) acc = point_add(e, acc, base);
    base = point_add(e, base, base);
    m >>= 1;
  }
  return acc;
}

std::vector<CurvePoint> torsion_points(const WeierstrassCurve& e, int n) {
  const LocalField& k = e.k;
  const u64 p = k.p();
  std::vector<CurvePoint> out;
  if (n <= 0) return out;
  const OPoly f = division_polynomial(e, static_cast<int>(ipow(p, n)));
  for (const FieldElement& x : root_find(k, f)) {
    const FieldElement fx = fe_int(k, 4) * x * x * x + e.b2 * x * x + fe_int(k, 2) * e.b4 * x + e.b6;
    if (fx.is_zero()) continue;
    Poly sq{-fx, FieldElement::zero(k), FieldElement::one(k)};
    for (const FieldElement& s : root_find(k, sq)) {
      const FieldElement y = (s - e.a[0] * x - e.a[2]) / fe_int(k, 2);
      out.push_back({false, x, y});
    }
  }
  return out;
}

CappedInt torsion_level_N(const WeierstrassCurve& e, int nmax) {
  const u64 p = e.k.p();
  for (int n = 1; n <= nmax; ++n) {
    const u64 want = ipow(p, 2 * n) - 1;
    if (torsion_points(e, n).size() != want) return {n - 1, false};
  }
  return {nmax, nmax > 0};
}

// --- descriptor

Json curve_to_json(const CurveDescriptor& c) {
  Json j;
  j["field"] = field_to_json(c.curve.k);
  Json a = Json::array();
  for (const auto& x : c.curve.a) a.push_back(element_to_json(x));
  j["a"] = a;
  if (c.cm) {
    Json cm;
    cm["disc"] = c.cm->disc;
    cm["eta"] = {c.cm->a, c.cm->b};
    j["cm"] = cm;
  }
  return j;
}

CurveDescriptor curve_from_json(const Json& j) {
  require(j.is_object() && j.contains("field") && j.contains("a"), ErrorKind::ParseError,
          "curve descriptor needs 'field' and 'a'");
  const LocalField k = field_from_json(j["field"]);
  const Json& a = j["a"];
  require(a.is_array() && a.size() == 5, ErrorKind::ParseError, "'a' must list a1, a2, a3, a4, a6");
  std::array<FieldElement, 5> c;
  for (int i = 0; i < 5; ++i) c[i] = element_from_json(k, a[i]);
  CurveDescriptor out{WeierstrassCurve::make(k, c), std::nullopt};
  if (j.contains("cm")) {
    const Json& cm = j["cm"];
    require(cm.is_object() && cm.contains("disc") && cm.contains("eta") && cm["eta"].is_array() &&
                cm["eta"].size() == 2,
            ErrorKind::ParseError, "'cm' needs 'disc' and a two-entry 'eta'");
    try {
      out.cm = CMData{cm["disc"].get<int>(), cm["eta"][0].get<i64>(), cm["eta"][1].get<i64>()};
    } catch (const nlohmann::json::exception& ex) {
      fail(ErrorKind::ParseError, std::string("cm descriptor: ") + ex.what());
    }
  }
  return out;
}

}  // namespace ramlock
