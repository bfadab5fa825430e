#include "ramlock/invariants.hpp"

#include <numeric>

namespace ramlock {

std::string Rational::str() const {
  if (den == 1) return std::to_string(num);
  return std::to_string(num) + "/" + std::to_string(den);
}

Rational e0(const LocalField& k) {
  const i64 num = k.e();
  const i64 den = static_cast<i64>(k.p()) - 1;
  const i64 g = std::gcd(num, den);
  return {num / g, den / g};
}

CappedInt invariant_M(const LocalField& k, int m_cap) {
  require(m_cap >= 1, ErrorKind::InvalidArgument, "m_cap must be at least 1");
  const u64 p = k.p();
  const auto first = root_find(k, poly_from_ints(k, std::vector<i64>(p, 1)));
  if (first.empty()) return {0, false};
  FieldElement z = first.front();
  int m = 1;
  while (m < m_cap) {
    Poly h(p + 1, FieldElement::zero(k));
    h[0] = -z;
    h[p] = FieldElement::one(k);
    const auto r = root_find(k, h);
    if (r.empty()) return {m, false};
    z = r.front();
    ++m;
  }
  return {m, true};
}

CappedInt invariant_Mur(const LocalField& k, int m_cap, int f_max, int degree_cap) {
  CappedInt m = invariant_M(k, m_cap);
  if (m.cap_reached) return m;
  LocalField cur = k;
  const u64 p = k.p();
  if (m.value == 0) {
    // k(zeta_p)/k is unramified iff (p - 1) | e, and then has degree dividing p - 1.
    if (k.e() % static_cast<int>(p - 1) != 0) return {0, false};
    int found = 0;
    for (int d = 1; d <= f_max && found == 0; ++d) {
      if ((p - 1) % static_cast<u64>(d) != 0) continue;
      if (k.degree() * d > degree_cap) return {0, true};
      const LocalField u = unramified_extend(k, d, degree_cap);
      if (root_of_unity(u, 1)) {
        found = d;
        cur = u;
      }
    }
    if (found == 0) return {0, true};
    m = invariant_M(cur, m_cap);
    if (m.cap_reached) return m;
  }
  for (;;) {
    const auto zeta = root_of_unity(cur, m.value);
    require(zeta.has_value(), ErrorKind::Internal, "root of unity vanished");
    const KummerClass cls = kummer_class(cur, *zeta);
    if (cls.type != KummerClass::Type::Unramified) return m;
    if (cur.degree() * static_cast<int>(p) > degree_cap) return {m.value + 1, true};
    cur = unramified_extend(cur, static_cast<int>(p), degree_cap);
    m = invariant_M(cur, m_cap);
    if (m.cap_reached) return m;
  }
}

RPair invariant_R(const LocalField& k) {
  const i64 e = k.e();
  const i64 pm1 = static_cast<i64>(k.p()) - 1;
  RPair r;
  i64 pw = 1;
  while (e > pm1 * pw) {
    ++r.r_leq;
    pw *= static_cast<i64>(k.p());
  }
  pw = 1;
  while (e >= pm1 * pw) {
    ++r.r_strict;
    pw *= static_cast<i64>(k.p());
  }
  return r;
}

}  // namespace ramlock
