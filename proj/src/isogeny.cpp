#include "ramlock/elliptic.hpp"

namespace ramlock {

namespace {

struct VeluTerm {
  FieldElement x, y, gx, gy, v, u;
};

VeluTerm velu_term(const WeierstrassCurve& e, const CurvePoint& q) {
  const auto& [a1, a2, a3, a4, a6] = e.a;
  VeluTerm t{q.x, q.y, {}, {}, {}, {}};
  const FieldElement three = FieldElement::from_int(e.k, 3), two = FieldElement::from_int(e.k, 2);
  t.gx = three * q.x * q.x + two * a2 * q.x + a4 - a1 * q.y;
  t.gy = -(two * q.y) - a1 * q.x - a3;
  t.v = two * t.gx - a1 * t.gy;
  t.u = t.gy * t.gy;
  return t;
}

/// One representative of each pair {Q, -Q} of H \ {O}.
std::vector<CurvePoint> half_of(const WeierstrassCurve& e, const std::vector<CurvePoint>& h) {
  std::vector<CurvePoint> out;
  for (const auto& q : h) {
    const CurvePoint nq = point_neg(e, q);
    bool seen = false;
    for (const auto& r : out)
      if (r.x.equals(nq.x) && r.y.equals(nq.y)) seen = true;
    if (!seen) out.push_back(q);
  }
  return out;
}

CurvePoint velu_image(const WeierstrassCurve& e, const std::vector<VeluTerm>& terms, const CurvePoint& pt) {
  if (pt.infinity) return pt;
  const FieldElement a1 = e.a[0], a3 = e.a[2];
  FieldElement x = pt.x, y = pt.y;
  for (const auto& t : terms) {
    const FieldElement dx = pt.x - t.x;
    require(!dx.is_zero(), ErrorKind::Internal, "point lies in the isogeny kernel");
    const FieldElement inv = dx.inv(), inv2 = inv * inv, inv3 = inv2 * inv;
    x = x + t.v * inv + t.u * inv2;
    y = y - t.u * (FieldElement::from_int(e.k, 2) * pt.y + a1 * pt.x + a3) * inv3 -
        t.v * (a1 * dx + pt.y - t.y) * inv2 - (a1 * t.u - t.gx * t.gy) * inv2;
  }
  return CurvePoint{false, x, y};
}

}  // namespace

IsogenyKernel isogeny_kernel_data(const WeierstrassCurve& e, int N) {
  require(N >= 0, ErrorKind::InvalidArgument, "N must be nonnegative");
  IsogenyKernel out;
  out.N = N;
  if (N == 0) {
    out.quotient = e;
    return out;
  }
  require(reduction_type(e).kind == ReductionKind::GoodOrdinary, ErrorKind::HypothesisViolated,
          "the reduction is not ordinary, so there is no etale subgroup of order p");
  require(N == 1, ErrorKind::VeluUnsupported, "quotients are only computed for N = 1");
  require(torsion_level_N(e, 1).value >= 1, ErrorKind::HypothesisViolated, "E[p] is not contained in E(k)");

  const auto pts = torsion_points(e, 1);
  const CurvePoint* gen = nullptr;
  for (const auto& pt : pts)
    if (pt.x.val() >= 0) {
      gen = &pt;
      break;
    }
  require(gen != nullptr, ErrorKind::Internal, "no torsion point outside the formal group");
  const i64 p = static_cast<i64>(e.k.p());
  for (i64 m = 1; m < p; ++m) out.points.push_back(point_mul(e, *gen, m));

  std::vector<VeluTerm> terms;
  FieldElement v = FieldElement::zero(e.k), w = FieldElement::zero(e.k);
  for (const auto& q : half_of(e, out.points)) {
    terms.push_back(velu_term(e, q));
    v = v + terms.back().v;
    w = w + terms.back().u + q.x * terms.back().v;
  }
  const auto& [a1, a2, a3, a4, a6] = e.a;
  const FieldElement A4 = a4 - FieldElement::from_int(e.k, 5) * v;
  const FieldElement A6 = a6 - (a1 * a1 + FieldElement::from_int(e.k, 4) * a2) * v - FieldElement::from_int(e.k, 7) * w;
  const WeierstrassCurve quotient = WeierstrassCurve::make(e.k, {a1, a2, a3, A4, A6});
  require(quotient.disc.val() == 0, ErrorKind::Internal, "Velu quotient does not have good reduction");

  // The dual isogeny's kernel is the image of E-hat[p], which must be rational on the quotient.
  bool mapped = false;
  for (const auto& pt : pts) {
    if (pt.x.val() >= 0) continue;
    const CurvePoint img = velu_image(e, terms, pt);
    require(quotient.on_curve(img.x, img.y), ErrorKind::Internal, "image of a formal torsion point is off the quotient");
    mapped = true;
    break;
  }
  require(mapped, ErrorKind::Internal, "no formal torsion point to map");
  out.quotient = quotient;
  return out;
}

}  // namespace ramlock
