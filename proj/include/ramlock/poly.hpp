#pragma once

#include <vector>

#include "ramlock/local_field.hpp"

namespace ramlock {

/// Polynomial with integral coefficients, low-to-high.
using OPoly = std::vector<OElt>;
/// Polynomial with field coefficients, low-to-high.
using Poly = std::vector<FieldElement>;

namespace opoly {

OElt eval(const LocalField& k, const OPoly& g, const OElt& x);
OPoly derivative(const LocalField& k, const OPoly& g);
/// g(x + c).
OPoly taylor_shift(const LocalField& k, const OPoly& g, const OElt& c);
OPoly mul(const LocalField& k, const OPoly& a, const OPoly& b);
OPoly from_ints(const LocalField& k, const std::vector<i64>& coeffs);

}  // namespace opoly

struct IntegralRoot {
  OElt z;
  int absprec = 0;
};

/// All roots in O_k of g, whose coefficients are known modulo pi^absprec and
/// not all divisible by pi. With `unit_only`, roots with zero residue are skipped.
std::vector<IntegralRoot> integral_roots(const LocalField& k, const OPoly& g, int absprec,
                                         bool unit_only = false);

/// Roots in k of a nonzero polynomial, via the Newton polygon and branch search.
std::vector<FieldElement> root_find(const LocalField& k, const Poly& f);
std::vector<FieldElement> root_find(const LocalField& k, const OPoly& f);

Poly poly_from_ints(const LocalField& k, const std::vector<i64>& coeffs);
FieldElement poly_eval(const Poly& f, const FieldElement& x);

}  // namespace ramlock
