#include "ramlock/zmod.hpp"

#include <string>

namespace ramlock {

ZMod::ZMod(u64 prime, int digits) : p(prime), n(digits) {
  require(digits >= 1, ErrorKind::InvalidArgument, "modulus needs at least one digit");
  require(digits <= max_digits(prime), ErrorKind::PrecisionExhausted,
          "p^" + std::to_string(digits) + " exceeds the 62-bit residue budget");
  mod = ipow(prime, digits);
}

int ZMod::max_digits(u64 prime) {
  int k = 0;
  u128 acc = 1;
  const u128 limit = static_cast<u128>(1) << 62;
  while (acc * prime < limit) {
    acc *= prime;
    ++k;
  }
  return k;
}

u64 ZMod::pow(u64 a, u64 e) const {
  u64 r = 1 % mod;
  a %= mod;
  while (e) {
    if (e & 1) r = mul(r, a);
    a = mul(a, a);
    e >>= 1;
  }
  return r;
}

u64 ZMod::inv(u64 a) const {
  require(a % p != 0, ErrorKind::NotAUnit, "inverse of a non-unit mod p^n");
  // Newton iteration x <- x(2 - a x), starting from the inverse mod p.
  u64 x = invmod_small(a % p, p);
  for (int digits = 1; digits < n; digits *= 2) x = mul(x, sub(2 % mod, mul(a, x)));
  return x;
}

u64 ZMod::from_signed(i64 v) const {
  if (v >= 0) return static_cast<u64>(v) % mod;
  u64 r = static_cast<u64>(-(v + 1)) % mod;  // avoids overflow at INT64_MIN
  return neg((r + 1) % mod);
}

i64 ZMod::to_signed(u64 a) const {
  if (a > mod / 2) return -static_cast<i64>(mod - a);
  return static_cast<i64>(a);
}

int ZMod::val(u64 a) const {
  if (a == 0) return n;
  int v = 0;
  while (a % p == 0) {
    a /= p;
    ++v;
  }
  return v;
}

u64 ipow(u64 base, int exp) {
  u64 r = 1;
  for (int i = 0; i < exp; ++i) r *= base;
  return r;
}

u64 powmod_small(u64 a, u64 e, u64 m) {
  u64 r = 1 % m;
  a %= m;
  while (e) {
    if (e & 1) r = static_cast<u64>(static_cast<u128>(r) * a % m);
    a = static_cast<u64>(static_cast<u128>(a) * a % m);
    e >>= 1;
  }
  return r;
}

u64 invmod_small(u64 a, u64 m) {
  i64 t = 0, nt = 1;
  i64 r = static_cast<i64>(m), nr = static_cast<i64>(a % m);
  while (nr != 0) {
    i64 q = r / nr;
    i64 tmp = t - q * nt;
    t = nt;
    nt = tmp;
    tmp = r - q * nr;
    r = nr;
    nr = tmp;
  }
  require(r == 1, ErrorKind::NotAUnit, "no inverse modulo " + std::to_string(m));
  if (t < 0) t += static_cast<i64>(m);
  return static_cast<u64>(t);
}

bool is_prime(u64 n) {
  if (n < 2) return false;
  for (u64 d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

}  // namespace ramlock
