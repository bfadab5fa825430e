#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "ramlock/descriptor.hpp"
#include "ramlock/zmod.hpp"

namespace ramlock {

using IntMatrix = std::vector<std::vector<u64>>;

/// Finite abelian p-group as a sorted list of elementary divisors.
struct AbGroupStructure {
  std::vector<u64> divisors;  // ascending prime powers > 1

  static AbGroupStructure from_exponents(u64 p, const std::vector<int>& exps);
  /// Z/p^a (+) Z/p^b ... from exponents; zeros dropped.
  static AbGroupStructure cyclic(u64 p, int a) { return from_exponents(p, {a}); }
  u64 order() const;
  bool trivial() const { return divisors.empty(); }
  std::string str() const;
  Json to_json() const;
  bool operator==(const AbGroupStructure&) const = default;
};

/// Finite Z/p^n-module (+)_i Z/p^{t_i} with the action of finitely many
/// generators, given as matrices acting on column vectors.
struct FiniteGaloisModule {
  u64 p = 3;
  int level = 1;
  std::vector<int> type;        // t_i <= level
  std::vector<IntMatrix> gens;  // entries reduced mod p^level

  static FiniteGaloisModule make(u64 p, int level, std::vector<int> type, std::vector<IntMatrix> gens);
  /// (Z/p^n)^r with the given generators.
  static FiniteGaloisModule free(u64 p, int level, int rank, std::vector<IntMatrix> gens);

  int rank() const { return static_cast<int>(type.size()); }
  /// log_p of the order.
  int log_order() const;
  AbGroupStructure structure() const;
  Json to_json() const;
  static FiniteGaloisModule from_json(const Json& j);
};

/// Default gate for exhaustive oracles.
inline constexpr u64 kExhaustiveLimit = 10000;

/// M / <(g - 1) x>.
AbGroupStructure coinvariants(const FiniteGaloisModule& m);
/// Joint kernel of the g - 1.
AbGroupStructure invariants_sub(const FiniteGaloisModule& m);

/// Same answers by enumeration of the module; CapReached above `limit` elements.
AbGroupStructure exhaustive_coinvariants(const FiniteGaloisModule& m, u64 limit = kExhaustiveLimit);
AbGroupStructure exhaustive_invariants(const FiniteGaloisModule& m, u64 limit = kExhaustiveLimit);

/// max m <= n with every value congruent to 1 mod p^m.
int rank1_coinvariant_level(u64 p, int n, const std::vector<u64>& character_values);

/// Rank-2 module at level M with generator [[1, b], [0, 1]]. When
/// `trivial_mod` is given, b must vanish modulo p^trivial_mod.
FiniteGaloisModule serre_tate_module(u64 p, int level, u64 b, std::optional<int> trivial_mod = std::nullopt);

/// Image of mu_{p^M} = span(z) in the coinvariants of the Serre-Tate module.
AbGroupStructure claim1_image(u64 p, int level, int N, u64 b);

/// Image of C_G in M_G for an exact sequence 0 -> C -> M -> Q -> 0.
AbGroupStructure connected_etale_image(const FiniteGaloisModule& c, const FiniteGaloisModule& m,
                                       const FiniteGaloisModule& q, const IntMatrix& iota,
                                       const IntMatrix& pi);
/// Kernel of M_G -> Q_G by enumeration.
AbGroupStructure exhaustive_coinvariant_kernel(const FiniteGaloisModule& m, const FiniteGaloisModule& q,
                                               const IntMatrix& pi, u64 limit = kExhaustiveLimit);

struct LimitReport {
  std::vector<AbGroupStructure> per_level;
  bool stabilized = false;
  int stabilized_at = 0;  // 1-based level from which coinvariants stop changing
  AbGroupStructure limit;
};
/// family[k] is the module at level k + 1 together with its transition to
/// the previous level (ignored for k = 0).
LimitReport truncated_limit_coinvariants(const std::vector<std::pair<FiniteGaloisModule, IntMatrix>>& family,
                                         int depth);

/// Whether a rank-2 module is a direct sum of two invariant cyclic submodules.
bool semisimplicity_check(const FiniteGaloisModule& m, u64 limit = kExhaustiveLimit);

}  // namespace ramlock
