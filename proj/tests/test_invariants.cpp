#include <doctest.h>

#include "ramlock/invariants.hpp"

using namespace ramlock;

TEST_CASE("e0 and R") {
  const LocalField q5 = LocalField::unramified(5, 1, 20);
  const LocalField q3z3 = LocalField::make(3, 1, std::vector<i64>{3, 3, 1}, 30);
  const LocalField q3z9 = cyclotomic_extend(q3z3, 2);
  CHECK(e0(q5) == Rational{1, 4});
  CHECK(e0(q3z3) == Rational{1, 1});
  CHECK(e0(q3z9) == Rational{3, 1});
  CHECK(invariant_R(q5).r_leq == 0);
  CHECK(invariant_R(q5).r_strict == 0);
  CHECK(invariant_R(q3z3).r_leq == 0);
  CHECK(invariant_R(q3z3).r_strict == 1);
  CHECK(invariant_R(q3z9).r_leq == 1);
  CHECK(invariant_R(q3z9).r_strict == 2);
}

TEST_CASE("M and M^ur on cyclotomic fields") {
  const LocalField q5 = LocalField::unramified(5, 1, 20);
  const LocalField q3z3 = LocalField::make(3, 1, std::vector<i64>{3, 3, 1}, 30);
  const LocalField q3z9 = cyclotomic_extend(q3z3, 2);
  CHECK(invariant_M(q5, 4).value == 0);
  CHECK(invariant_M(q3z3, 4).value == 1);
  CHECK(invariant_M(q3z9, 4).value == 2);
  CHECK(invariant_M(q3z3, 1).cap_reached);
  CHECK(invariant_Mur(q5, 4).value == 0);
  CHECK(invariant_Mur(q3z3, 4).value == 1);
  CHECK(invariant_Mur(q3z9, 4).value == 2);
}

TEST_CASE("M^ur can exceed M") {
  // Q_3(sqrt 3): zeta_3 lies in the unramified quadratic extension
  const LocalField k = LocalField::make(3, 1, std::vector<i64>{-3, 0, 1}, 30);
  CHECK(invariant_M(k, 4).value == 0);
  CHECK(invariant_Mur(k, 4).value == 1);
}
