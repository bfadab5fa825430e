#pragma once

#include <string>

#include "ramlock/local_field.hpp"
#include "ramlock/tower.hpp"

namespace ramlock {

struct Rational {
  i64 num = 0;
  i64 den = 1;
  std::string str() const;
  bool operator==(const Rational&) const = default;
};

/// A bounded search result; `cap_reached` means the true value may be larger.
struct CappedInt {
  int value = 0;
  bool cap_reached = false;
};

/// e_k / (p - 1), reduced.
Rational e0(const LocalField& k);

/// max m <= m_cap with mu_{p^m} in k.
CappedInt invariant_M(const LocalField& k, int m_cap);

/// max m <= m_cap with mu_{p^m} in the maximal unramified extension of k.
CappedInt invariant_Mur(const LocalField& k, int m_cap, int f_max = default_residue_cap(),
                        int degree_cap = default_degree_cap());

struct RPair {
  int r_leq = 0;     // min r with e_k <= (p-1) p^r
  int r_strict = 0;  // min r with e_k < (p-1) p^r
};
RPair invariant_R(const LocalField& k);

}  // namespace ramlock
