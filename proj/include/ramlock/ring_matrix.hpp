#pragma once

#include <vector>

#include "ramlock/error.hpp"
#include "ramlock/local_field.hpp"

namespace ramlock {

template <class T>
using Matrix = std::vector<std::vector<T>>;

/// O_k / p^n as a ring for the generic routines below.
struct OkRing {
  const LocalField& k;
  using T = OElt;
  T zero() const { return k.zero(); }
  T one() const { return k.one(); }
  T add(const T& a, const T& b) const { return k.add(a, b); }
  T sub(const T& a, const T& b) const { return k.sub(a, b); }
  T mul(const T& a, const T& b) const { return k.mul(a, b); }
  bool is_unit(const T& a) const { return k.is_unit(a); }
  T inv(const T& a) const { return k.inv(a); }
};

/// W / p^n as a ring.
struct WRing {
  const LocalField& k;
  using T = WElt;
  T zero() const { return k.w_zero(); }
  T one() const { return k.w_from_int(1); }
  T add(const T& a, const T& b) const { return k.w_add(a, b); }
  T sub(const T& a, const T& b) const { return k.w_sub(a, b); }
  T mul(const T& a, const T& b) const { return k.w_mul(a, b); }
  bool is_unit(const T& a) const { return k.w_is_unit(a); }
  T inv(const T& a) const { return k.w_inv(a); }
};

template <class R>
Matrix<typename R::T> mat_mul(const R& r, const Matrix<typename R::T>& a,
                              const Matrix<typename R::T>& b) {
  const size_t n = a.size(), m = b[0].size(), l = b.size();
  Matrix<typename R::T> c(n, std::vector<typename R::T>(m, r.zero()));
  for (size_t i = 0; i < n; ++i)
    for (size_t t = 0; t < l; ++t)
      for (size_t j = 0; j < m; ++j) c[i][j] = r.add(c[i][j], r.mul(a[i][t], b[t][j]));
  return c;
}

template <class R>
std::vector<typename R::T> mat_vec(const R& r, const Matrix<typename R::T>& a,
                                   const std::vector<typename R::T>& v) {
  std::vector<typename R::T> out(a.size(), r.zero());
  for (size_t i = 0; i < a.size(); ++i)
    for (size_t j = 0; j < v.size(); ++j) out[i] = r.add(out[i], r.mul(a[i][j], v[j]));
  return out;
}

/// Characteristic polynomial det(xI - A), low-to-high and monic, by
/// Berkowitz's division-free algorithm.
template <class R>
std::vector<typename R::T> berkowitz(const R& r, const Matrix<typename R::T>& a) {
  using T = typename R::T;
  const size_t n = a.size();
  std::vector<T> poly{r.one()};  // high-to-low
  for (size_t k = 0; k < n; ++k) {
    // A_{k+1} = [[A_k, S], [R, a_kk]]
    std::vector<T> col{r.one(), r.sub(r.zero(), a[k][k])};
    std::vector<T> s(k);
    for (size_t i = 0; i < k; ++i) s[i] = a[i][k];
    for (size_t step = 0; step < k; ++step) {
      T acc = r.zero();
      for (size_t j = 0; j < k; ++j) acc = r.add(acc, r.mul(a[k][j], s[j]));
      col.push_back(r.sub(r.zero(), acc));
      std::vector<T> ns(k, r.zero());
      for (size_t i = 0; i < k; ++i)
        for (size_t j = 0; j < k; ++j) ns[i] = r.add(ns[i], r.mul(a[i][j], s[j]));
      s = std::move(ns);
    }
    std::vector<T> next(k + 2, r.zero());
    for (size_t i = 0; i < k + 2; ++i)
      for (size_t j = 0; j <= std::min(i, k); ++j) next[i] = r.add(next[i], r.mul(col[i - j], poly[j]));
    poly = std::move(next);
  }
  return std::vector<T>(poly.rbegin(), poly.rend());
}

/// Solve A x = b for A invertible over a local ring (unit pivots).
template <class R>
std::vector<typename R::T> solve_unimodular(const R& r, Matrix<typename R::T> a,
                                            std::vector<typename R::T> b) {
  const size_t n = a.size();
  for (size_t c = 0; c < n; ++c) {
    size_t piv = n;
    for (size_t i = c; i < n; ++i)
      if (r.is_unit(a[i][c])) {
        piv = i;
        break;
      }
    require(piv < n, ErrorKind::Internal, "matrix is not invertible over the valuation ring");
    std::swap(a[c], a[piv]);
    std::swap(b[c], b[piv]);
    const auto inv = r.inv(a[c][c]);
    for (size_t j = c; j < n; ++j) a[c][j] = r.mul(a[c][j], inv);
    b[c] = r.mul(b[c], inv);
    for (size_t i = 0; i < n; ++i) {
      if (i == c) continue;
      const auto fct = a[i][c];
      for (size_t j = c; j < n; ++j) a[i][j] = r.sub(a[i][j], r.mul(fct, a[c][j]));
      b[i] = r.sub(b[i], r.mul(fct, b[c]));
    }
  }
  return b;
}

}  // namespace ramlock
