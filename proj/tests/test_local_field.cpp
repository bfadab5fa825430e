#include <doctest.h>

#include <random>

#include "ramlock/local_field.hpp"

using namespace ramlock;

namespace {

OElt random_oelt(const LocalField& k, std::mt19937_64& rng) {
  OElt a = k.zero();
  for (auto& c : a.c) c = rng() % k.zmod().mod;
  return a;
}

}  // namespace

TEST_CASE("make_field validates its input") {
  CHECK(LocalField::make(5, 1, std::vector<i64>{-5, 1}, 20).e() == 1);
  const LocalField k = LocalField::make(3, 1, std::vector<i64>{3, 3, 1}, 30);
  CHECK(k.e() == 2);
  CHECK(k.degree() == 2);
  CHECK_THROWS_AS(LocalField::make(3, 1, std::vector<i64>{1, 0, 1}, 10), Error);
  try {
    LocalField::make(3, 1, std::vector<i64>{1, 0, 1}, 10);
  } catch (const Error& err) {
    CHECK(err.kind() == ErrorKind::NonEisenstein);
  }
  try {
    LocalField::make(2, 1, std::vector<i64>{2, 1}, 10);
  } catch (const Error& err) {
    CHECK(err.kind() == ErrorKind::EvenPrime);
  }
  try {
    LocalField::make(3, 1, std::vector<i64>{9, 0, 1}, 10);
  } catch (const Error& err) {
    CHECK(err.kind() == ErrorKind::NonEisenstein);
  }
}

TEST_CASE("valuation normalisation") {
  const LocalField q5 = LocalField::unramified(5, 1, 20);
  CHECK(FieldElement::from_int(q5, 5).val() == 1);
  const LocalField k = LocalField::make(3, 1, std::vector<i64>{3, 3, 1}, 30);
  CHECK(FieldElement::from_int(k, 3).val() == 2);
  CHECK(FieldElement::from_int(k, 0).is_zero());
  CHECK(FieldElement::from_int(k, 18).val() == 4);
}

TEST_CASE("ring axioms and inverses in a ramified unramified tower") {
  std::mt19937_64 rng(7);
  const LocalField k = LocalField::make(3, 2, std::vector<std::vector<i64>>{{3, 3}, {0, 3}, {1}}, 20);
  for (int t = 0; t < 50; ++t) {
    const OElt a = random_oelt(k, rng), b = random_oelt(k, rng), c = random_oelt(k, rng);
    CHECK(k.mul(a, k.mul(b, c)) == k.mul(k.mul(a, b), c));
    CHECK(k.mul(a, k.add(b, c)) == k.add(k.mul(a, b), k.mul(a, c)));
    CHECK(k.mul(a, b) == k.mul(b, a));
    if (k.is_unit(a)) CHECK(k.mul(a, k.inv(a)) == k.one());
  }
}

TEST_CASE("valuation is additive on products") {
  std::mt19937_64 rng(11);
  const LocalField k = LocalField::make(5, 2, std::vector<std::vector<i64>>{{5}, {0}, {5, 5}, {1}}, 24);
  for (int t = 0; t < 200; ++t) {
    FieldElement x(k, random_oelt(k, rng));
    FieldElement y(k, random_oelt(k, rng));
    x = x.mul_pi_power(static_cast<int>(rng() % 7) - 3);
    y = y.mul_pi_power(static_cast<int>(rng() % 7) - 3);
    if (x.is_zero() || y.is_zero()) continue;
    CHECK((x * y).val() == x.val() + y.val());
  }
}

TEST_CASE("division by the uniformizer inverts multiplication") {
  std::mt19937_64 rng(3);
  const LocalField k = LocalField::make(3, 1, std::vector<i64>{3, 3, 1}, 30);
  for (int t = 0; t < 50; ++t) {
    const OElt a = random_oelt(k, rng);
    for (int s = 1; s <= 5; ++s) {
      const OElt back = k.div_by_pi(k.mul_by_pi(a, s), s);
      CHECK(k.congruent(back, a, k.capacity() - s));
    }
  }
}

TEST_CASE("field element arithmetic") {
  const LocalField k = LocalField::make(3, 1, std::vector<i64>{3, 3, 1}, 30);
  const FieldElement pi = FieldElement::uniformizer(k);
  const FieldElement three = FieldElement::from_int(k, 3);
  // pi^2 + 3 pi + 3 = 0
  const FieldElement lhs = pi * pi + three * pi + three;
  CHECK(lhs.is_zero());
  const FieldElement x = (pi + FieldElement::one(k)).inv();
  CHECK((x * (pi + FieldElement::one(k))).equals(FieldElement::one(k)));
  CHECK((three / pi).val() == 1);
  CHECK(pi.pow(-3).val() == -3);
  CHECK((pi - pi).is_zero());
}
