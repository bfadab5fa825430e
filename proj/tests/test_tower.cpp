#include <doctest.h>

#include <functional>
#include <random>

#include "ramlock/tower.hpp"

using namespace ramlock;

namespace {

FieldElement random_element(const LocalField& k, std::mt19937_64& rng) {
  OElt a = k.zero();
  for (auto& c : a.c) c = rng() % k.zmod().mod;
  FieldElement x(k, a);
  if (x.is_zero()) return FieldElement::one(k);
  return x;
}

ErrorKind kind_of(const std::function<void()>& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.kind();
  }
  return ErrorKind::Internal;
}

}  // namespace

TEST_CASE("cyclotomic extensions of Q_3 and Q_5") {
  const LocalField q3 = LocalField::unramified(3, 1, 30);
  const LocalField k1 = cyclotomic_extend(q3, 1);
  CHECK(k1.e() == 2);
  CHECK(k1.f() == 1);
  const LocalField k2 = cyclotomic_extend(k1, 2);
  CHECK(k2.e() == 6);
  CHECK(k2.f() == 1);
  const auto z9 = root_of_unity(k2, 2);
  REQUIRE(z9.has_value());
  CHECK(z9->pow(9).equals(FieldElement::one(k2)));
  CHECK(!z9->pow(3).equals(FieldElement::one(k2)));
  CHECK(!root_of_unity(k2, 3).has_value());

  const LocalField q5 = LocalField::unramified(5, 1, 20);
  CHECK(kind_of([&] { cyclotomic_extend(q5, 1, 2); }) == ErrorKind::DegreeCapExceeded);
  const LocalField k5 = cyclotomic_extend(q5, 1);
  CHECK(k5.e() == 4);
  CHECK(root_of_unity(k5, 1).has_value());
}

TEST_CASE("cyclotomic step over a ramified base that needs an unramified part") {
  // Q_5(sqrt 5): e = 2, zeta_5 needs beta^4 = -5 = pi^2 * (-1)
  const LocalField k = LocalField::make(5, 1, std::vector<i64>{-5, 0, 1}, 16);
  const LocalField L = cyclotomic_extend(k, 1);
  CHECK(L.degree() % k.degree() == 0);
  CHECK(4 % (L.degree() / k.degree()) == 0);
  CHECK(root_of_unity(L, 1).has_value());
}

TEST_CASE("embedding respects the parent's arithmetic") {
  std::mt19937_64 rng(1);
  const LocalField k = LocalField::make(3, 1, std::vector<i64>{3, 3, 1}, 20);
  const LocalField L = cyclotomic_extend(k, 2);
  const LocalField U = unramified_extend(k, 2);
  CHECK(U.f() == 2);
  CHECK(U.e() == 2);
  for (const auto& big : {L, U}) {
    const int ram = big.e() / k.e();
    for (int t = 0; t < 20; ++t) {
      const FieldElement a = random_element(k, rng), b = random_element(k, rng);
      CHECK(embed(a * b, big).equals(embed(a, big) * embed(b, big)));
      CHECK(embed(a + b, big).equals(embed(a, big) + embed(b, big)));
      CHECK(embed(a, big).val() == a.val() * ram);
    }
  }
}

TEST_CASE("Kummer extensions and relative norms") {
  std::mt19937_64 rng(2);
  const LocalField k = LocalField::make(3, 1, std::vector<i64>{3, 3, 1}, 20);
  const FieldElement x = FieldElement::one(k) + FieldElement::uniformizer(k);
  const KummerClass cls = kummer_class(k, x);
  CHECK(cls.type == KummerClass::Type::UnitLevel);
  CHECK(cls.level == 1);
  const LocalField L = kummer_extend(k, x);
  CHECK(L.e() == 6);
  // x has a cube root in L
  Poly h(4, FieldElement::zero(L));
  h[0] = -embed(x, L);
  h[3] = FieldElement::one(L);
  CHECK(root_find(L, h).size() >= 1);
  for (int t = 0; t < 20; ++t) {
    const FieldElement a = random_element(k, rng);
    CHECK(relative_norm(L, embed(a, L)).equals(a.pow(3)));
    const FieldElement u = random_element(L, rng), w = random_element(L, rng);
    CHECK(relative_norm(L, u * w).equals(relative_norm(L, u) * relative_norm(L, w)));
  }
  CHECK(relative_norm(L, FieldElement::uniformizer(L)).val() == 1);
}
