#include "ramlock/poly.hpp"

#include <algorithm>
#include <string>

namespace ramlock {

namespace opoly {

OElt eval(const LocalField& k, const OPoly& g, const OElt& x) {
  OElt acc = k.zero();
  for (auto it = g.rbegin(); it != g.rend(); ++it) acc = k.add(k.mul(acc, x), *it);
  return acc;
}

OPoly derivative(const LocalField& k, const OPoly& g) {
  OPoly d;
  for (size_t i = 1; i < g.size(); ++i) d.push_back(k.mul(g[i], k.from_int(static_cast<i64>(i))));
  if (d.empty()) d.push_back(k.zero());
  return d;
}

OPoly taylor_shift(const LocalField& k, const OPoly& g, const OElt& c) {
  OPoly r = g;
  const int n = static_cast<int>(r.size());
  for (int i = 0; i < n - 1; ++i)
    for (int j = n - 2; j >= i; --j) r[j] = k.add(r[j], k.mul(c, r[j + 1]));
  return r;
}

OPoly mul(const LocalField& k, const OPoly& a, const OPoly& b) {
  if (a.empty() || b.empty()) return {};
  OPoly r(a.size() + b.size() - 1, k.zero());
  for (size_t i = 0; i < a.size(); ++i)
    for (size_t j = 0; j < b.size(); ++j) r[i + j] = k.add(r[i + j], k.mul(a[i], b[j]));
  return r;
}

OPoly from_ints(const LocalField& k, const std::vector<i64>& coeffs) {
  OPoly r;
  for (i64 c : coeffs) r.push_back(k.from_int(c));
  return r;
}

}  // namespace opoly

namespace {

int content(const LocalField& k, const OPoly& g, int absprec) {
  int c = kInfVal;
  for (const auto& a : g) c = std::min(c, k.val(k.truncate(a, absprec)));
  return c;
}

// Newton iteration for a root whose residue is a simple root of the reduction.
OElt hensel_lift(const LocalField& k, const OPoly& g, const OPoly& dg, OElt z, int absprec) {
  for (int digits = 1; digits < absprec; digits *= 2) {
    const OElt gz = opoly::eval(k, g, z);
    const OElt dz = opoly::eval(k, dg, z);
    z = k.truncate(k.sub(z, k.mul(gz, k.inv(dz))), absprec);
  }
  // one more pass absorbs the rounding of the doubling schedule
  const OElt gz = opoly::eval(k, g, z);
  const OElt dz = opoly::eval(k, dg, z);
  return k.truncate(k.sub(z, k.mul(gz, k.inv(dz))), absprec);
}

void branch(const LocalField& k, const OPoly& g, int absprec, int depth, bool unit_only,
            std::vector<IntegralRoot>& out) {
  const ResidueField& rf = k.residue_field();
  std::vector<ResidueField::Elt> gbar;
  for (const auto& a : g) gbar.push_back(k.residue(a));
  while (gbar.size() > 1 && rf.is_zero(gbar.back())) gbar.pop_back();
  if (gbar.size() <= 1) return;  // nonzero constant reduction: no roots
  const OPoly dg = opoly::derivative(k, g);
  for (const auto& r : rf.roots(gbar)) {
    if (unit_only && rf.is_zero(r)) continue;
    const OElt r0 = k.lift_residue(r);
    if (!rf.is_zero(k.residue(opoly::eval(k, dg, r0)))) {
      out.push_back({hensel_lift(k, g, dg, r0, absprec), absprec});
      continue;
    }
    // Re-centre: h(w) = g(r0 + pi w) / pi^c.
    OPoly h = opoly::taylor_shift(k, g, r0);
    for (size_t i = 0; i < h.size(); ++i) h[i] = k.mul_by_pi(h[i], static_cast<int>(i));
    const int c = content(k, h, absprec);
    if (c >= absprec) {
      if (depth + 1 < k.prec())
        fail(ErrorKind::PrecisionExhausted,
             "root branches cannot be separated at " + std::to_string(depth + 1) + " digits");
      out.push_back({k.truncate(r0, absprec), absprec});
      continue;
    }
    for (auto& a : h) a = k.truncate(k.div_by_pi(a, c), absprec - c);
    std::vector<IntegralRoot> sub;
    branch(k, h, absprec - c, depth + 1, false, sub);
    for (auto& w : sub) {
      const int ap = std::min(absprec, w.absprec + 1);
      out.push_back({k.truncate(k.add(r0, k.mul_by_pi(w.z, 1)), ap), ap});
    }
  }
}

}  // namespace

std::vector<IntegralRoot> integral_roots(const LocalField& k, const OPoly& g, int absprec,
                                         bool unit_only) {
  std::vector<IntegralRoot> out;
  branch(k, g, std::min(absprec, k.capacity()), 0, unit_only, out);
  return out;
}

std::vector<FieldElement> root_find(const LocalField& k, const Poly& f) {
  std::vector<FieldElement> roots;
  int lo = 0;
  while (lo < static_cast<int>(f.size()) && f[lo].is_zero()) ++lo;
  int hi = static_cast<int>(f.size()) - 1;
  while (hi >= 0 && f[hi].is_zero()) --hi;
  require(hi >= 0, ErrorKind::InvalidArgument, "root_find of the zero polynomial");
  if (lo > 0) roots.push_back(FieldElement::zero(k, f[0].absprec()));
  if (hi == lo) return roots;

  // Lower convex hull of (i, v(a_i)) for lo <= i <= hi.
  std::vector<int> idx;
  for (int i = lo; i <= hi; ++i) {
    if (f[i].is_zero()) continue;
    while (idx.size() >= 2) {
      const int a = idx[idx.size() - 2], b = idx.back();
      const long long lhs = static_cast<long long>(f[b].val() - f[a].val()) * (i - a);
      const long long rhs = static_cast<long long>(f[i].val() - f[a].val()) * (b - a);
      if (lhs >= rhs)
        idx.pop_back();
      else
        break;
    }
    idx.push_back(i);
  }
  for (size_t s = 0; s + 1 < idx.size(); ++s) {
    const int a = idx[s], b = idx[s + 1];
    const int rise = f[a].val() - f[b].val();
    if (rise % (b - a) != 0) continue;
    const int slope = rise / (b - a);  // roots of valuation `slope`
    const int m = f[a].val() + slope * a;
    OPoly g;
    int ap = k.capacity();
    for (int i = lo; i <= hi; ++i) {
      const FieldElement c = f[i].mul_pi_power(slope * i - m);
      ap = std::min(ap, c.absprec());
      g.push_back(c.is_zero() ? k.zero() : c.integral());
    }
    if (ap <= 0) fail(ErrorKind::PrecisionExhausted, "coefficients too imprecise for root finding");
    for (const auto& r : integral_roots(k, g, ap, true))
      roots.push_back(FieldElement(k, r.z, r.absprec).mul_pi_power(slope));
  }
  return roots;
}

std::vector<FieldElement> root_find(const LocalField& k, const OPoly& f) {
  Poly p;
  for (const auto& a : f) p.emplace_back(k, a);
  return root_find(k, p);
}

Poly poly_from_ints(const LocalField& k, const std::vector<i64>& coeffs) {
  Poly r;
  for (i64 c : coeffs) r.push_back(FieldElement::from_int(k, c));
  return r;
}

FieldElement poly_eval(const Poly& f, const FieldElement& x) {
  FieldElement acc = FieldElement::zero(x.field());
  for (auto it = f.rbegin(); it != f.rend(); ++it) acc = acc * x + *it;
  return acc;
}

}  // namespace ramlock
