#pragma once

#include <cstdint>
#include <limits>
#include <vector>

#include "ramlock/error.hpp"

namespace ramlock {

using u64 = std::uint64_t;
using i64 = std::int64_t;
using u128 = unsigned __int128;

/// Arithmetic in Z/p^n with p^n < 2^62.
struct ZMod {
  u64 p = 0;
  int n = 0;
  u64 mod = 1;

  ZMod() = default;
  ZMod(u64 prime, int digits);

  /// Largest n with p^n < 2^62.
  static int max_digits(u64 prime);

  u64 add(u64 a, u64 b) const {
    u64 s = a + b;
    return s >= mod ? s - mod : s;
  }
  u64 sub(u64 a, u64 b) const { return a >= b ? a - b : a + mod - b; }
  u64 neg(u64 a) const { return a == 0 ? 0 : mod - a; }
  u64 mul(u64 a, u64 b) const { return static_cast<u64>((static_cast<u128>(a) * b) % mod); }
  u64 pow(u64 a, u64 e) const;
  /// Inverse of a unit (a not divisible by p).
  u64 inv(u64 a) const;
  /// Reduce a signed integer.
  u64 from_signed(i64 v) const;
  /// Symmetric representative in (-mod/2, mod/2].
  i64 to_signed(u64 a) const;
  /// p-adic valuation, capped at n for zero.
  int val(u64 a) const;
};

/// Integer power p^k (no overflow check beyond the 2^62 budget).
u64 ipow(u64 base, int exp);

/// Plain modular helpers over a small prime.
u64 powmod_small(u64 a, u64 e, u64 m);
u64 invmod_small(u64 a, u64 m);

bool is_prime(u64 n);

}  // namespace ramlock
