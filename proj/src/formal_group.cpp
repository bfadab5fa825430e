#include <algorithm>

#include "ramlock/elliptic.hpp"

namespace ramlock {

namespace {

using Series = std::vector<OElt>;

bool is_zero(const LocalField& k, const OElt& a) {
  (void)k;
  return std::all_of(a.c.begin(), a.c.end(), [](u64 x) { return x == 0; });
}

Series s_zero(const LocalField& k, int d) { return Series(d + 1, k.zero()); }

Series s_mul(const LocalField& k, const Series& a, const Series& b, int d) {
  Series out = s_zero(k, d);
  for (int i = 0; i <= d && i < static_cast<int>(a.size()); ++i) {
    if (is_zero(k, a[i])) continue;
    for (int j = 0; i + j <= d && j < static_cast<int>(b.size()); ++j)
      if (!is_zero(k, b[j])) out[i + j] = k.add(out[i + j], k.mul(a[i], b[j]));
  }
  return out;
}

Series s_add(const LocalField& k, const Series& a, const Series& b) {
  Series out(std::max(a.size(), b.size()), k.zero());
  for (size_t i = 0; i < a.size(); ++i) out[i] = a[i];
  for (size_t i = 0; i < b.size(); ++i) out[i] = k.add(out[i], b[i]);
  return out;
}

Series s_scale(const LocalField& k, const Series& a, const OElt& c) {
  Series out(a.size());
  for (size_t i = 0; i < a.size(); ++i) out[i] = k.mul(a[i], c);
  return out;
}

/// 1 / a for a series with unit constant term.
Series s_inv(const LocalField& k, const Series& a, int d) {
  Series out = s_zero(k, d);
  const OElt c0 = k.inv(a[0]);
  out[0] = c0;
  for (int n = 1; n <= d; ++n) {
    OElt acc = k.zero();
    for (int j = 1; j <= n && j < static_cast<int>(a.size()); ++j) acc = k.add(acc, k.mul(a[j], out[n - j]));
    out[n] = k.neg(k.mul(acc, c0));
  }
  return out;
}

/// sum_n a_n b^n for b without constant term.
Series s_compose(const LocalField& k, const Series& a, const Series& b, int d) {
  Series out = s_zero(k, d);
  Series pw = s_zero(k, d);
  pw[0] = k.one();
  for (int n = 0; n <= d && n < static_cast<int>(a.size()); ++n) {
    if (!is_zero(k, a[n]))
      for (int i = 0; i <= d; ++i) out[i] = k.add(out[i], k.mul(a[n], pw[i]));
    pw = s_mul(k, pw, b, d);
  }
  return out;
}

BiSeries b_zero(const LocalField& k, int d) { return BiSeries(d + 1, std::vector<OElt>(d + 1, k.zero())); }

BiSeries b_mul(const LocalField& k, const BiSeries& a, const BiSeries& b, int d) {
  BiSeries out = b_zero(k, d);
  std::vector<std::pair<int, int>> nz;
  for (int i = 0; i <= d; ++i)
    for (int j = 0; i + j <= d; ++j)
      if (!is_zero(k, b[i][j])) nz.emplace_back(i, j);
  for (int i1 = 0; i1 <= d; ++i1)
    for (int j1 = 0; i1 + j1 <= d; ++j1) {
      if (is_zero(k, a[i1][j1])) continue;
      for (const auto& [i2, j2] : nz) {
        if (i1 + j1 + i2 + j2 > d) continue;
        out[i1 + i2][j1 + j2] = k.add(out[i1 + i2][j1 + j2], k.mul(a[i1][j1], b[i2][j2]));
      }
    }
  return out;
}

BiSeries b_lin(const LocalField& k, const BiSeries& a, const OElt& ca, const BiSeries& b, const OElt& cb, int d) {
  BiSeries out = b_zero(k, d);
  for (int i = 0; i <= d; ++i)
    for (int j = 0; i + j <= d; ++j) out[i][j] = k.add(k.mul(ca, a[i][j]), k.mul(cb, b[i][j]));
  return out;
}

BiSeries b_one(const LocalField& k, int d) {
  BiSeries out = b_zero(k, d);
  out[0][0] = k.one();
  return out;
}

/// Univariate series in X (or Y) as a bivariate one.
BiSeries b_from(const LocalField& k, const Series& s, bool in_x, int d) {
  BiSeries out = b_zero(k, d);
  for (int n = 0; n <= d && n < static_cast<int>(s.size()); ++n) (in_x ? out[n][0] : out[0][n]) = s[n];
  return out;
}

/// w(t) from w = t^3 + a1 t w + a2 t^2 w + a3 w^2 + a4 t w^2 + a6 w^3.
Series w_series(const WeierstrassCurve& e, int d) {
  const LocalField& k = e.k;
  const OElt a1 = e.ai(0), a2 = e.ai(1), a3 = e.ai(2), a4 = e.ai(3), a6 = e.ai(4);
  Series w = s_zero(k, d);
  for (int it = 0; it <= d; ++it) {
    const Series w2 = s_mul(k, w, w, d);
    const Series w3 = s_mul(k, w2, w, d);
    Series next = s_zero(k, d);
    if (d >= 3) next[3] = k.one();
    for (int n = 0; n <= d; ++n) {
      OElt acc = next[n];
      if (n >= 1) acc = k.add(acc, k.add(k.mul(a1, w[n - 1]), k.mul(a4, w2[n - 1])));
      if (n >= 2) acc = k.add(acc, k.mul(a2, w[n - 2]));
      acc = k.add(acc, k.add(k.mul(a3, w2[n]), k.mul(a6, w3[n])));
      next[n] = acc;
    }
    if (next == w) break;
    w = std::move(next);
  }
  return w;
}

}  // namespace

int default_formal_cap(u64 p) { return static_cast<int>(p * p) + 6; }

FormalGroupData formal_group(const WeierstrassCurve& e, int degree_cap) {
  const LocalField& k = e.k;
  const int d = degree_cap;
  require(d >= static_cast<int>(k.p() * k.p()) + 1, ErrorKind::CapTooSmall,
          "formal group degree cap must be at least p^2 + 1");
  FormalGroupData fg;
  fg.k = k;
  fg.degree_cap = d;
  fg.w = w_series(e, d);
  const OElt a1 = e.ai(0), a2 = e.ai(1), a3 = e.ai(2), a4 = e.ai(3), a6 = e.ai(4);

  // Inverse i(t) = -t / (1 - a1 t - a3 w(t)).
  Series den = s_zero(k, d);
  den[0] = k.one();
  den[1] = k.neg(a1);
  for (int n = 0; n <= d; ++n) den[n] = k.sub(den[n], k.mul(a3, fg.w[n]));
  Series minus_t = s_zero(k, d);
  minus_t[1] = k.neg(k.one());
  fg.inverse = s_mul(k, minus_t, s_inv(k, den, d), d);

  // Chord through (X, w(X)) and (Y, w(Y)): slope lambda and intercept nu.
  const Series w_ext = w_series(e, d + 1);
  BiSeries lambda = b_zero(k, d);
  for (int n = 3; n <= d + 1; ++n)
    for (int i = 0; i <= n - 1; ++i) lambda[i][n - 1 - i] = k.add(lambda[i][n - 1 - i], w_ext[n]);
  const BiSeries x = b_from(k, Series{k.zero(), k.one()}, true, d);
  const BiSeries y = b_from(k, Series{k.zero(), k.one()}, false, d);
  const BiSeries wx = b_from(k, fg.w, true, d);
  const BiSeries nu = b_lin(k, wx, k.one(), b_mul(k, lambda, x, d), k.neg(k.one()), d);
  const BiSeries l2 = b_mul(k, lambda, lambda, d);
  const BiSeries l3 = b_mul(k, l2, lambda, d);
  const BiSeries lnu = b_mul(k, lambda, nu, d);
  const BiSeries l2nu = b_mul(k, l2, nu, d);
  // Third root of the cubic: t3 = -X - Y - num / (1 + dd).
  BiSeries num = b_lin(k, lambda, a1, l2, a3, d);
  num = b_lin(k, num, k.one(), nu, a2, d);
  num = b_lin(k, num, k.one(), lnu, k.mul(k.from_int(2), a4), d);
  num = b_lin(k, num, k.one(), l2nu, k.mul(k.from_int(3), a6), d);
  BiSeries dd = b_lin(k, lambda, a2, l2, a4, d);
  dd = b_lin(k, dd, k.one(), l3, a6, d);
  // 1 / (1 + dd) with dd of positive degree.
  BiSeries inv = b_one(k, d), term = b_one(k, d);
  for (int m = 1; m <= d; ++m) {
    term = b_mul(k, term, dd, d);
    inv = b_lin(k, inv, k.one(), term, (m % 2) ? k.neg(k.one()) : k.one(), d);
  }
  BiSeries t3 = b_mul(k, num, inv, d);
  t3 = b_lin(k, t3, k.neg(k.one()), x, k.neg(k.one()), d);
  t3 = b_lin(k, t3, k.one(), y, k.neg(k.one()), d);

  // F = i(t3).
  fg.law = b_zero(k, d);
  BiSeries pw = b_one(k, d);
  for (int n = 1; n <= d; ++n) {
    pw = b_mul(k, pw, t3, d);
    if (is_zero(k, fg.inverse[n])) continue;
    fg.law = b_lin(k, fg.law, k.one(), pw, fg.inverse[n], d);
  }

  Series t = s_zero(k, d);
  t[1] = k.one();
  fg.mult_p = fg.multiply(t, static_cast<i64>(k.p()));

  // omega = dt / F_X(0, t); log = integral of omega.
  Series fx = s_zero(k, d);
  for (int j = 0; j + 1 <= d; ++j) fx[j] = fg.law[1][j];
  const Series omega = s_inv(k, fx, d);
  fg.log.assign(d + 1, FieldElement::zero(k));
  for (int n = 0; n + 1 <= d; ++n)
    fg.log[n + 1] = FieldElement(k, omega[n]) / FieldElement::from_int(k, n + 1);
  return fg;
}

std::vector<OElt> FormalGroupData::add(const std::vector<OElt>& f, const std::vector<OElt>& g) const {
  const int d = degree_cap;
  std::vector<Series> fp{s_zero(k, d)}, gp{s_zero(k, d)};
  fp[0][0] = k.one();
  gp[0][0] = k.one();
  for (int n = 1; n <= d; ++n) {
    fp.push_back(s_mul(k, fp.back(), f, d));
    gp.push_back(s_mul(k, gp.back(), g, d));
  }
  Series out = s_zero(k, d);
  for (int i = 0; i <= d; ++i)
    for (int j = 0; i + j <= d; ++j) {
      if (is_zero(k, law[i][j])) continue;
      out = s_add(k, out, s_scale(k, s_mul(k, fp[i], gp[j], d), law[i][j]));
    }
  return out;
}

std::vector<OElt> FormalGroupData::multiply(const std::vector<OElt>& f, i64 m) const {
  const int d = degree_cap;
  if (m < 0) return s_compose(k, inverse, multiply(f, -m), d);
  Series acc = s_zero(k, d), base = f;
  base.resize(d + 1, k.zero());
  bool have = false;
  while (m) {
    if (m & 1) {
      acc = have ? add(acc, base) : base;
      have = true;
    }
    m >>= 1;
    if (m) base = add(base, base);
  }
  return acc;
}

std::vector<OElt> FormalGroupData::compose(const std::vector<OElt>& f, const std::vector<OElt>& g) const {
  return s_compose(k, f, g, degree_cap);
}

std::vector<OElt> FormalGroupData::mult_p_power(int n) const {
  Series out = s_zero(k, degree_cap);
  out[1] = k.one();
  for (int i = 0; i < n; ++i) out = s_compose(k, mult_p, out, degree_cap);
  return out;
}

}  // namespace ramlock
