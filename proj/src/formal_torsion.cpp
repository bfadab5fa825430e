#include <algorithm>
#include <numeric>

#include "ramlock/elliptic.hpp"
#include "ramlock/poly.hpp"

namespace ramlock {

namespace {

Rational reduced(i64 num, i64 den) {
  const i64 g = std::gcd(num, den);
  return Rational{num / g, den / g};
}

int first_unit(const LocalField& k, const std::vector<OElt>& s) {
  for (size_t i = 1; i < s.size(); ++i)
    if (k.val(s[i]) == 0) return static_cast<int>(i);
  return -1;
}

std::vector<std::pair<Rational, int>> root_segments(const LocalField& k, const std::vector<OElt>& s);

/// Valuations of the nonzero roots in m of s(t) = c_1 t + ..., decreasing.
std::vector<Rational> root_slopes(const LocalField& k, const std::vector<OElt>& s) {
  std::vector<Rational> out;
  for (const auto& seg : root_segments(k, s)) out.push_back(seg.first);
  return out;
}

int height_of(const LocalField& k, const std::vector<OElt>& mult_p) {
  const int h = first_unit(k, mult_p);
  if (h == static_cast<int>(k.p())) return 1;
  if (h == static_cast<int>(k.p() * k.p())) return 2;
  fail(ErrorKind::Internal, "[p](t) has unexpected Weierstrass degree " + std::to_string(h));
}

void require_good(const WeierstrassCurve& e) {
  require(e.disc.val() == 0, ErrorKind::NotGood, "model does not have good reduction");
}

/// Runs fn on formal groups of growing degree cap until no root fails certification.
template <class Fn>
auto with_adaptive_cap(const WeierstrassCurve& e, Fn fn) {
  int cap = default_formal_cap(e.k.p());
  const int max_cap = 4 * cap;
  for (;;) {
    try {
      return fn(formal_group(e, cap));
    } catch (const Error& err) {
      if (err.kind() != ErrorKind::CapReached || 2 * cap > max_cap) throw;
      cap *= 2;
    }
  }
}

/// Segments (root valuation, count) of the lower hull up to the first unit.
std::vector<std::pair<Rational, int>> root_segments(const LocalField& k, const std::vector<OElt>& s) {
  const int h = first_unit(k, s);
  require(h > 0, ErrorKind::CapReached, "no unit coefficient below the degree cap");
  std::vector<std::pair<int, int>> hull;
  for (int i = 1; i <= h; ++i) {
    const int v = k.val(s[static_cast<size_t>(i)]);
    if (v >= kInfVal) continue;
    const std::pair<int, int> pt{i, v};
    while (hull.size() >= 2) {
      const auto& a = hull[hull.size() - 2];
      const auto& b = hull.back();
      const i64 cross = static_cast<i64>(b.first - a.first) * (pt.second - a.second) -
                        static_cast<i64>(b.second - a.second) * (pt.first - a.first);
      if (cross > 0) break;
      hull.pop_back();
    }
    hull.push_back(pt);
  }
  std::vector<std::pair<Rational, int>> out;
  for (size_t i = 1; i < hull.size(); ++i) {
    const int len = hull[i].first - hull[i - 1].first;
    out.emplace_back(reduced(hull[i - 1].second - hull[i].second, len), len);
  }
  return out;
}

i64 ipow(i64 b, int n) {
  i64 r = 1;
  for (int i = 0; i < n; ++i) r *= b;
  return r;
}

}  // namespace

std::vector<FieldElement> formal_roots(const FormalGroupData& fg, const std::vector<OElt>& series,
                                       const FieldElement& target) {
  const LocalField& k = fg.k;
  require(target.is_zero() || target.val() > 0, ErrorKind::InvalidArgument, "target must lie in the maximal ideal");
  const int d = static_cast<int>(series.size()) - 1;
  Poly g;
  for (const auto& c : series) g.emplace_back(k, c);
  g[0] = g[0] - target;
  while (g.size() > 1 && g.back().is_zero()) g.pop_back();
  Poly dg;
  for (size_t i = 1; i < g.size(); ++i) dg.push_back(FieldElement::from_int(k, static_cast<i64>(i)) * g[i]);
  std::vector<FieldElement> out;
  for (const auto& r : root_find(k, g)) {
    if (!r.is_zero() && r.val() <= 0) continue;
    if (!r.is_zero()) {
      const int vd = poly_eval(dg, r).val();
      require((d + 1) * r.val() > 2 * vd, ErrorKind::CapReached,
              "series truncation at degree " + std::to_string(d) + " does not certify a root");
    }
    out.push_back(r);
  }
  return out;
}

namespace {

/// E-hat[p^n] level by level; stops early once a level is not fully rational.
std::vector<std::vector<FieldElement>> torsion_levels(const FormalGroupData& fg, int nmax) {
  const LocalField& k = fg.k;
  const int ht = height_of(k, fg.mult_p);
  std::vector<std::vector<FieldElement>> levels{{FieldElement::zero(k)}};
  for (int n = 1; n <= nmax; ++n) {
    std::vector<FieldElement> next;
    for (const auto& tau : levels.back())
      for (auto& r : formal_roots(fg, fg.mult_p, tau)) next.push_back(std::move(r));
    const bool full = static_cast<i64>(next.size()) == ipow(static_cast<i64>(k.p()), n * ht);
    levels.push_back(std::move(next));
    if (!full) break;
  }
  return levels;
}

}  // namespace

std::vector<FieldElement> formal_torsion(const WeierstrassCurve& e, int n) {
  require_good(e);
  require(n >= 0, ErrorKind::InvalidArgument, "n must be nonnegative");
  return with_adaptive_cap(e, [&](const FormalGroupData& fg) {
    auto levels = torsion_levels(fg, n);
    require(static_cast<int>(levels.size()) == n + 1, ErrorKind::NotFound,
            "E-hat[p^" + std::to_string(levels.size() - 1) + "] is not rational, so deeper levels are not computed");
    return levels.back();
  });
}

NhatResult nhat(const WeierstrassCurve& e, int nmax) {
  require_good(e);
  require(nmax >= 0, ErrorKind::InvalidArgument, "nmax must be nonnegative");
  const u64 p = e.k.p();
  return with_adaptive_cap(e, [&](const FormalGroupData& fg) {
    NhatResult res;
    res.degree_cap = fg.degree_cap;
    const auto slopes = root_slopes(fg.k, fg.mult_p);
    res.min_root_valuation = slopes.empty() ? Rational{0, 1} : slopes.back();
    const int ht = height_of(fg.k, fg.mult_p);
    const auto levels = torsion_levels(fg, nmax);
    int n = 0;
    while (n + 1 < static_cast<int>(levels.size()) &&
           static_cast<i64>(levels[static_cast<size_t>(n + 1)].size()) == ipow(static_cast<i64>(p), (n + 1) * ht))
      ++n;
    res.value = CappedInt{n, n == nmax};
    return res;
  });
}

T0Result t0(const WeierstrassCurve& e) {
  require_good(e);
  const LocalField& k = e.k;
  const u64 p = k.p();
  return with_adaptive_cap(e, [&](const FormalGroupData& fg) {
    require(height_of(k, fg.mult_p) == 2, ErrorKind::NotSupersingular, "reduction is ordinary");
    T0Result res;
    res.slopes = root_slopes(k, fg.mult_p);
    const bool integral =
        std::all_of(res.slopes.begin(), res.slopes.end(), [](const Rational& r) { return r.den == 1; });
    if (integral) {
      const auto roots = formal_roots(fg, fg.mult_p, FieldElement::zero(k));
      res.rational = static_cast<i64>(roots.size()) == static_cast<i64>(p * p);
    }
    if (res.rational) {
      res.t0 = static_cast<int>(res.slopes.front().num);
      require(static_cast<i64>(res.t0) * static_cast<i64>(p - 1) < static_cast<i64>(p) * k.e(), ErrorKind::Internal,
              "t_0 must be below p e_0");
      if (k.e() % static_cast<int>(p - 1) == 0) {
        const int e0 = k.e() / static_cast<int>(p - 1);
        res.levels = {static_cast<int>(p) * res.t0, static_cast<int>(p) * (e0 - res.t0)};
      }
    }
    return res;
  });
}

bool cm_kernel_check(const WeierstrassCurve& e, const CMData& eta, int n) {
  require(eta.disc == -4 || eta.disc == -3, ErrorKind::InvalidArgument, "CM order must have discriminant -4 or -3");
  require(n >= 0, ErrorKind::InvalidArgument, "n must be nonnegative");
  const LocalField& k = e.k;
  const i64 p = static_cast<i64>(k.p());
  const i64 modulus = eta.disc == -4 ? 4 : 3;
  require(p % modulus == 1, ErrorKind::NotSplit,
          "p = " + std::to_string(p) + " does not split in the CM order of discriminant " + std::to_string(eta.disc));
  const i64 norm = eta.disc == -4 ? eta.a * eta.a + eta.b * eta.b : eta.a * eta.a - eta.a * eta.b + eta.b * eta.b;
  require(norm == p, ErrorKind::InvalidArgument, "eta must have norm p, got " + std::to_string(norm));
  const auto& a = e.a;
  const bool shape = a[0].is_zero() && a[1].is_zero() && a[2].is_zero() &&
                     (eta.disc == -4 ? a[4].is_zero() && !a[3].is_zero() : a[3].is_zero() && !a[4].is_zero());
  require(shape, ErrorKind::NotCM,
          eta.disc == -4 ? "model is not of the form y^2 = x^3 + a4 x" : "model is not of the form y^2 = x^3 + a6");
  require_good(e);
  if (n == 0) return true;

  // The automorphism acts on t = -x/y as t -> r t with r^2 = -1 or r^2 + r + 1 = 0;
  // the identification with i (or omega) puts eta in the maximal ideal.
  const Poly minpoly = eta.disc == -4 ? poly_from_ints(k, {1, 0, 1}) : poly_from_ints(k, {1, 1, 1});
  std::optional<FieldElement> r;
  for (const auto& root : root_find(k, minpoly)) {
    const FieldElement img = FieldElement::from_int(k, eta.a) + FieldElement::from_int(k, eta.b) * root;
    if (img.is_zero() || img.val() > 0) r = root;
  }
  require(r.has_value(), ErrorKind::NotSplit, "the CM order does not embed into k with eta in the maximal ideal");

  const i64 pn = ipow(p, n);
  const int cap = std::max(default_formal_cap(k.p()), static_cast<int>(pn) + 6);
  require(cap <= 4 * default_formal_cap(k.p()), ErrorKind::CapReached,
          "level n = " + std::to_string(n) + " needs a series cap above " + std::to_string(4 * default_formal_cap(k.p())));
  const FormalGroupData fg = formal_group(e, cap);
  std::vector<OElt> t(static_cast<size_t>(cap) + 1, k.zero());
  t[1] = k.one();
  std::vector<OElt> rt = t;
  rt[1] = r->integral();
  const std::vector<OElt> eta1 = fg.add(fg.multiply(t, eta.a), fg.multiply(rt, eta.b));
  std::vector<OElt> etan = t;
  for (int i = 0; i < n; ++i) etan = fg.compose(eta1, etan);
  return root_segments(k, etan) == root_segments(k, fg.mult_p_power(n));
}

}  // namespace ramlock
