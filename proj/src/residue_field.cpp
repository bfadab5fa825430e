#include "ramlock/residue_field.hpp"

#include <algorithm>
#include <string>

namespace ramlock {

namespace fppoly {

void trim(FpPoly& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

int degree(const FpPoly& a) { return static_cast<int>(a.size()) - 1; }

FpPoly add(const FpPoly& a, const FpPoly& b, u64 p) {
  FpPoly r(std::max(a.size(), b.size()), 0);
  for (size_t i = 0; i < a.size(); ++i) r[i] = a[i];
  for (size_t i = 0; i < b.size(); ++i) r[i] = (r[i] + b[i]) % p;
  trim(r);
  return r;
}

FpPoly sub(const FpPoly& a, const FpPoly& b, u64 p) {
  FpPoly r(std::max(a.size(), b.size()), 0);
  for (size_t i = 0; i < a.size(); ++i) r[i] = a[i];
  for (size_t i = 0; i < b.size(); ++i) r[i] = (r[i] + p - b[i]) % p;
  trim(r);
  return r;
}

FpPoly mul(const FpPoly& a, const FpPoly& b, u64 p) {
  if (a.empty() || b.empty()) return {};
  FpPoly r(a.size() + b.size() - 1, 0);
  for (size_t i = 0; i < a.size(); ++i) {
    if (a[i] == 0) continue;
    for (size_t j = 0; j < b.size(); ++j) r[i + j] = (r[i + j] + a[i] * b[j]) % p;
  }
  trim(r);
  return r;
}

FpPoly rem(const FpPoly& a, const FpPoly& b, u64 p) {
  require(!b.empty(), ErrorKind::Internal, "polynomial remainder by zero");
  FpPoly r = a;
  trim(r);
  const u64 lead_inv = invmod_small(b.back(), p);
  while (r.size() >= b.size()) {
    const u64 c = r.back() * lead_inv % p;
    const size_t shift = r.size() - b.size();
    for (size_t j = 0; j < b.size(); ++j) r[shift + j] = (r[shift + j] + p * p - c * b[j] % p) % p;
    trim(r);
  }
  return r;
}

FpPoly gcd(FpPoly a, FpPoly b, u64 p) {
  trim(a);
  trim(b);
  while (!b.empty()) {
    FpPoly t = rem(a, b, p);
    a = std::move(b);
    b = std::move(t);
  }
  if (!a.empty()) {
    const u64 li = invmod_small(a.back(), p);
    for (auto& c : a) c = c * li % p;
  }
  return a;
}

namespace {

FpPoly powmod_poly(FpPoly base, u64 e, const FpPoly& h, u64 p) {
  FpPoly r{1};
  base = rem(base, h, p);
  while (e) {
    if (e & 1) r = rem(mul(r, base, p), h, p);
    base = rem(mul(base, base, p), h, p);
    e >>= 1;
  }
  return r;
}

}  // namespace

FpPoly frobenius_power_of_x(const FpPoly& h, int k, u64 p) {
  FpPoly r = rem(FpPoly{0, 1}, h, p);
  for (int i = 0; i < k; ++i) r = powmod_poly(r, p, h, p);
  return r;
}

bool is_irreducible(const FpPoly& h, u64 p) {
  const int f = degree(h);
  if (f <= 0) return false;
  if (f == 1) return true;
  const FpPoly x{0, 1};
  if (sub(frobenius_power_of_x(h, f, p), rem(x, h, p), p) != FpPoly{}) return false;
  for (int d = 1; d < f; ++d) {
    if (f % d != 0) continue;
    FpPoly g = gcd(h, sub(frobenius_power_of_x(h, d, p), x, p), p);
    if (degree(g) > 0) return false;
  }
  return true;
}

FpPoly canonical_irreducible(int f, u64 p) {
  require(f >= 1, ErrorKind::InvalidArgument, "residue degree must be positive");
  const u64 count = ipow(p, f);
  for (u64 idx = 0; idx < count; ++idx) {
    FpPoly h(f + 1, 0);
    u64 t = idx;
    for (int i = 0; i < f; ++i) {
      h[i] = t % p;
      t /= p;
    }
    h[f] = 1;
    if (is_irreducible(h, p)) return h;
  }
  fail(ErrorKind::Internal, "no irreducible polynomial of degree " + std::to_string(f));
}

}  // namespace fppoly

ResidueField::ResidueField(u64 p, FpPoly modulus) : p_(p), h_(std::move(modulus)) {
  fppoly::trim(h_);
  f_ = fppoly::degree(h_);
  require(f_ >= 1 && h_.back() == 1, ErrorKind::InvalidArgument, "residue modulus must be monic");
  q_ = ipow(p, f_);
}

ResidueField::Elt ResidueField::one() const {
  Elt r = zero();
  r[0] = 1;
  return r;
}

ResidueField::Elt ResidueField::from_int(i64 v) const {
  Elt r = zero();
  i64 m = v % static_cast<i64>(p_);
  if (m < 0) m += static_cast<i64>(p_);
  r[0] = static_cast<u64>(m);
  return r;
}

ResidueField::Elt ResidueField::gen() const {
  if (f_ == 1) {
    // F_p = F_p[x]/(x - c) with x = c.
    return from_int(static_cast<i64>((p_ - h_[0]) % p_));
  }
  Elt r = zero();
  r[1] = 1;
  return r;
}

bool ResidueField::is_zero(const Elt& a) const {
  return std::all_of(a.begin(), a.end(), [](u64 c) { return c == 0; });
}

ResidueField::Elt ResidueField::add(const Elt& a, const Elt& b) const {
  Elt r(f_);
  for (int i = 0; i < f_; ++i) r[i] = (a[i] + b[i]) % p_;
  return r;
}

ResidueField::Elt ResidueField::sub(const Elt& a, const Elt& b) const {
  Elt r(f_);
  for (int i = 0; i < f_; ++i) r[i] = (a[i] + p_ - b[i]) % p_;
  return r;
}

ResidueField::Elt ResidueField::neg(const Elt& a) const {
  Elt r(f_);
  for (int i = 0; i < f_; ++i) r[i] = (p_ - a[i]) % p_;
  return r;
}

ResidueField::Elt ResidueField::mul(const Elt& a, const Elt& b) const {
  std::vector<u64> prod(2 * f_ - 1, 0);
  for (int i = 0; i < f_; ++i) {
    if (a[i] == 0) continue;
    for (int j = 0; j < f_; ++j) prod[i + j] = (prod[i + j] + a[i] * b[j]) % p_;
  }
  for (int d = 2 * f_ - 2; d >= f_; --d) {
    const u64 c = prod[d];
    if (c == 0) continue;
    for (int j = 0; j < f_; ++j) prod[d - f_ + j] = (prod[d - f_ + j] + (p_ - h_[j]) * c) % p_;
  }
  prod.resize(f_);
  return prod;
}

ResidueField::Elt ResidueField::scale(const Elt& a, u64 c) const {
  Elt r(f_);
  for (int i = 0; i < f_; ++i) r[i] = a[i] * (c % p_) % p_;
  return r;
}

ResidueField::Elt ResidueField::pow(Elt a, u64 e) const {
  Elt r = one();
  while (e) {
    if (e & 1) r = mul(r, a);
    a = mul(a, a);
    e >>= 1;
  }
  return r;
}

ResidueField::Elt ResidueField::inv(const Elt& a) const {
  require(!is_zero(a), ErrorKind::NotAUnit, "inverse of zero in residue field");
  return pow(a, q_ - 2);
}

ResidueField::Elt ResidueField::frobenius_inverse(const Elt& a) const { return pow(a, q_ / p_); }

bool ResidueField::is_square(const Elt& a) const {
  if (is_zero(a)) return true;
  return pow(a, (q_ - 1) / 2) == one();
}

ResidueField::Elt ResidueField::from_index(u64 idx) const {
  Elt r(f_);
  for (int i = 0; i < f_; ++i) {
    r[i] = idx % p_;
    idx /= p_;
  }
  return r;
}

u64 ResidueField::to_index(const Elt& a) const {
  u64 idx = 0;
  for (int i = f_ - 1; i >= 0; --i) idx = idx * p_ + a[i];
  return idx;
}

ResidueField::Elt ResidueField::eval(const std::vector<Elt>& poly, const Elt& x) const {
  Elt acc = zero();
  for (auto it = poly.rbegin(); it != poly.rend(); ++it) acc = add(mul(acc, x), *it);
  return acc;
}

std::vector<ResidueField::Elt> ResidueField::roots(const std::vector<Elt>& poly) const {
  std::vector<Elt> out;
  for (u64 idx = 0; idx < q_; ++idx) {
    Elt x = from_index(idx);
    if (is_zero(eval(poly, x))) out.push_back(std::move(x));
  }
  return out;
}

}  // namespace ramlock
