#include <doctest.h>

#include <functional>
#include <random>
#include <set>

#include "ramlock/invariants.hpp"
#include "ramlock/unit_symbols.hpp"

using namespace ramlock;

namespace {

FieldElement random_unit(const LocalField& k, std::mt19937_64& rng) {
  for (;;) {
    OElt a = k.zero();
    for (auto& c : a.c) c = rng() % k.zmod().mod;
    FieldElement x(k, a);
    if (!x.is_zero() && x.val() == 0) return x;
  }
}

FieldElement random_nonzero(const LocalField& k, std::mt19937_64& rng) {
  return random_unit(k, rng).mul_pi_power(static_cast<int>(rng() % 7) - 3);
}

ErrorKind kind_of(const std::function<void()>& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.kind();
  }
  return ErrorKind::Internal;
}

FpVec add(const FpVec& a, const FpVec& b, u64 p) {
  FpVec r(a.size());
  for (size_t i = 0; i < a.size(); ++i) r[i] = (a[i] + b[i]) % p;
  return r;
}

LocalField q3_zeta3() { return LocalField::make(3, 1, std::vector<i64>{3, 3, 1}, 30); }

}  // namespace

TEST_CASE("dimension of k^x/p") {
  const LocalField q5 = LocalField::unramified(5, 1, 20);
  const LocalField q9 = LocalField::unramified(3, 2, 20);
  const LocalField k3 = q3_zeta3();
  const LocalField k9 = cyclotomic_extend(LocalField::unramified(3, 1, 30), 2);
  CHECK(MulModPSpace::build(q5).dim() == 2);
  CHECK(MulModPSpace::build(q9).dim() == 3);
  CHECK(MulModPSpace::build(k3).dim() == 4);
  CHECK(MulModPSpace::build(k9).dim() == 8);
  for (const LocalField& k : {q5, q9, k3, k9}) {
    const MulModPSpace s = MulModPSpace::build(k);
    const int mu_p = invariant_M(k, 1).value >= 1 ? 1 : 0;
    CHECK(s.delta() == mu_p);
    CHECK(s.dim() == k.degree() + 1 + mu_p);
  }
}

TEST_CASE("coordinates of basis vectors and p-th powers") {
  std::mt19937_64 rng(11);
  const LocalField k3 = q3_zeta3();
  const LocalField k9 = cyclotomic_extend(LocalField::unramified(3, 1, 30), 2);
  const LocalField q9 = LocalField::unramified(3, 2, 20);
  for (const LocalField& k : {k3, k9, q9}) {
    const MulModPSpace s = MulModPSpace::build(k);
    const u64 p = k.p();
    for (int j = 0; j < s.dim(); ++j) {
      FpVec want(s.dim(), 0);
      want[j] = 1;
      CHECK(s.coords(s.basis()[j].rep) == want);
      const FieldElement z = random_nonzero(k, rng);
      CHECK(s.coords(z.pow(static_cast<i64>(p)) * s.basis()[j].rep) == want);
    }
    for (int t = 0; t < 12; ++t) {
      const FieldElement x = random_nonzero(k, rng), y = random_nonzero(k, rng);
      CHECK(s.coords(x * y) == add(s.coords(x), s.coords(y), p));
      CHECK(s.is_pth_power(x) == is_pth_power_by_roots(k, x));
      const FieldElement z = random_nonzero(k, rng).pow(static_cast<i64>(p));
      CHECK(s.is_pth_power(z));
      CHECK(is_pth_power_by_roots(k, z));
    }
  }
}

TEST_CASE("filtration levels") {
  const LocalField k = q3_zeta3();
  const MulModPSpace s = MulModPSpace::build(k);
  const FieldElement pi = FieldElement::uniformizer(k);
  const FieldElement one = FieldElement::one(k);
  CHECK(filtration_level(s, one + pi) == std::optional<int>(1));
  // 3 does not divide 2, so U-bar^2 and U-bar^3 differ and 1 + pi^2 sits at level 2.
  CHECK(filtration_level(s, one + pi.pow(2)) == std::optional<int>(2));
  CHECK(filtration_level(s, (one + pi).pow(3)) == std::nullopt);
  CHECK(filtration_level(s, one + pi.pow(4)) == std::nullopt);
  CHECK(kind_of([&] { filtration_level(s, pi); }) == ErrorKind::NotAUnit);
}

TEST_CASE("filtration collapse") {
  std::mt19937_64 rng(5);
  const LocalField k9 = cyclotomic_extend(LocalField::unramified(3, 1, 30), 2);
  const LocalField q5z = cyclotomic_extend(LocalField::unramified(5, 1, 20), 1);
  for (const LocalField& k : {q3_zeta3(), k9, q5z}) {
    const MulModPSpace s = MulModPSpace::build(k);
    const int p = static_cast<int>(k.p());
    const int pe0 = p * k.e() / (p - 1);
    const FieldElement one = FieldElement::one(k);
    for (int i = 1; i <= pe0 + 2; ++i) {
      for (int t = 0; t < 4; ++t) {
        const FieldElement x = one + random_unit(k, rng).mul_pi_power(i);
        const auto level = filtration_level(s, x);
        if (i > pe0) {
          CHECK(!level.has_value());
        } else if (i % p == 0 && i < pe0) {
          CHECK((!level.has_value() || *level > i));
        } else if (level) {
          CHECK(*level >= i);
        }
      }
    }
    CHECK(s.filtration_indices(pe0 + 1).empty());
    for (int i = 1; i < pe0; ++i)
      if (i % p == 0) CHECK(s.filtration_indices(i) == s.filtration_indices(i + 1));
  }
}

namespace {

/// Subgroup of F_p^n generated by `gens`, by closure.
std::set<FpVec> span_closure(const std::vector<FpVec>& gens, int n, u64 p) {
  std::set<FpVec> seen{FpVec(n, 0)};
  std::vector<FpVec> frontier{FpVec(n, 0)};
  while (!frontier.empty()) {
    std::vector<FpVec> next;
    for (const auto& v : frontier)
      for (const auto& g : gens) {
        FpVec w = add(v, g, p);
        if (seen.insert(w).second) next.push_back(std::move(w));
      }
    frontier = std::move(next);
  }
  return seen;
}

/// Norm group of k(x^{1/p}) in coordinates, from norms of random elements.
std::set<FpVec> norm_group_oracle(const MulModPSpace& s, const FieldElement& x, std::mt19937_64& rng,
                                  int cap) {
  const LocalField& k = s.field();
  const KummerClass cls = kummer_class(k, x);
  std::vector<FpVec> gens;
  if (cls.type == KummerClass::Type::Unramified) {
    // Norms from an unramified extension: units and p-th powers of pi.
    for (int t = 0; t < 3 * s.dim(); ++t) gens.push_back(s.coords(random_unit(k, rng)));
  } else {
    const LocalField L = kummer_extend(k, x, cap);
    for (int t = 0; t < 3 * s.dim(); ++t) gens.push_back(s.coords(relative_norm(L, random_nonzero(L, rng))));
  }
  return span_closure(gens, s.dim(), k.p());
}

void check_pairing(const HilbertPairing& h, std::mt19937_64& rng, int samples) {
  const MulModPSpace& s = h.space();
  const LocalField& k = s.field();
  const u64 p = k.p();
  for (int a = 0; a < s.dim(); ++a)
    for (int c = 0; c < s.dim(); ++c) CHECK((h.table()[a][c] + h.table()[c][a]) % p == 0);
  for (int t = 0; t < samples; ++t) {
    const FieldElement x = random_nonzero(k, rng), y = random_nonzero(k, rng);
    const u64 v = hilbert_symbol(h, y, x);
    const auto norms = norm_group_oracle(s, x, rng, h.cap());
    CHECK((v == 0) == (norms.count(s.coords(y)) == 1));
    CHECK(hilbert_symbol(h, x, -x) == 0);
    CHECK((v + hilbert_symbol(h, x, y)) % p == 0);
    const FieldElement x2 = random_nonzero(k, rng);
    CHECK(h.value(y, x * x2) == (h.value(y, x) + h.value(y, x2)) % p);
    CHECK(h.value(y * x2, x) == (h.value(y, x) + h.value(x2, x)) % p);
    CHECK(hilbert_symbol(h, random_nonzero(k, rng).pow(static_cast<i64>(p)), x) == 0);
  }
}

}  // namespace

TEST_CASE("Hilbert symbol over Q_3(zeta_3)") {
  std::mt19937_64 rng(2024);
  const HilbertPairing h = HilbertPairing::build(q3_zeta3());
  CHECK(h.space().dim() == 4);
  check_pairing(h, rng, 50);
  const FieldElement pi = FieldElement::uniformizer(h.space().field());
  const FieldElement u = h.space().basis().back().rep;
  CHECK(h.space().basis().back().level == 3);
  CHECK(hilbert_symbol(h, pi, u) != 0);
  CHECK(hilbert_symbol(h, u, pi) != 0);
  const Json j = h.to_json();
  CHECK(j["table"].size() == 4);
  CHECK(j.contains("zeta_choice"));
}

TEST_CASE("Hilbert symbol needs mu_p") {
  CHECK(kind_of([] { HilbertPairing::build(LocalField::unramified(5, 1, 20)); }) == ErrorKind::NoPthRoots);
}

TEST_CASE("Hilbert symbol over Q_5(zeta_5)") {
  std::mt19937_64 rng(77);
  const LocalField k = cyclotomic_extend(LocalField::unramified(5, 1, 20), 1);
  const HilbertPairing h = HilbertPairing::build(k, 20);
  CHECK(h.space().dim() == 6);
  check_pairing(h, rng, 50);
}

TEST_CASE("Hilbert symbol over Q_3(zeta_9)") {
  std::mt19937_64 rng(99);
  const LocalField k = cyclotomic_extend(LocalField::unramified(3, 1, 30), 2);
  const HilbertPairing h = HilbertPairing::build(k, 18);
  CHECK(h.space().dim() == 8);
  check_pairing(h, rng, 10);
}

TEST_CASE("pairing order of filtration pieces") {
  const HilbertPairing h3 = HilbertPairing::build(q3_zeta3());
  CHECK(filtration_pairing_order(h3, 1, 1).computed == 3);
  CHECK(filtration_pairing_order(h3, 2, 2).computed == 1);
  CHECK(kind_of([&] { filtration_pairing_order(h3, 3, 3); }) == ErrorKind::BothDivisible);
  const LocalField k9 = cyclotomic_extend(LocalField::unramified(3, 1, 30), 2);
  const HilbertPairing h9 = HilbertPairing::build(k9, 18);
  CHECK(filtration_pairing_order(h9, 1, 8).computed == 3);
  for (const HilbertPairing* h : {&h3, &h9}) {
    const int p = static_cast<int>(h->space().field().p());
    const int pe0 = p * h->space().field().e() / (p - 1);
    for (int i = 1; i <= pe0; ++i)
      for (int j = 1; j <= pe0; ++j) {
        if (i % p == 0 && j % p == 0) continue;
        const PairingOrder o = filtration_pairing_order(*h, i, j);
        CHECK(o.computed == o.formula);
      }
  }
}

TEST_CASE("p-th roots keep their level") {
  std::mt19937_64 rng(31);
  const LocalField k3 = q3_zeta3();
  const LocalField k9 = cyclotomic_extend(LocalField::unramified(3, 1, 30), 2);
  const auto r = kummer_root_level(k3, FieldElement::one(k3) + FieldElement::uniformizer(k3));
  CHECK(r.field.e() == 6);
  CHECK(r.level == 1);
  CHECK(r.expected == 1);
  int samples = 0;
  for (const auto& [k, count] : {std::pair{k3, 100}, std::pair{k9, 80}}) {
    const MulModPSpace s = MulModPSpace::build(k);
    const int p = static_cast<int>(k.p());
    const int pe0 = p * k.e() / (p - 1);
    for (int t = 0; t < count; ++t) {
      const int i = 1 + static_cast<int>(rng() % (pe0 - 1));
      const FieldElement x = FieldElement::one(k) + random_unit(k, rng).mul_pi_power(i);
      const auto level = filtration_level(s, x);
      if (!level || *level % p == 0 || *level >= pe0) continue;
      const auto res = kummer_root_level(k, x, 18);
      CHECK(res.field.degree() == p * k.degree());
      CHECK(res.level == res.expected);
      ++samples;
    }
  }
  CHECK(samples >= 100);
  CHECK(kind_of([&] { kummer_root_level(k3, FieldElement::from_int(k3, 8)); }) ==
        ErrorKind::HypothesisViolated);
  CHECK(kind_of([&] { kummer_root_level(k3, FieldElement::one(k3) + FieldElement::uniformizer(k3).pow(3)); }) ==
        ErrorKind::HypothesisViolated);
}

TEST_CASE("generators of the symbol group") {
  const HilbertPairing h = HilbertPairing::build(q3_zeta3());
  const SymbolGenerators g = symbol_generators_mod_p(h, {1, 1});
  CHECK(g.found);
  CHECK(g.M == 1);
  CHECK(g.zeta_level == 1);
  REQUIRE(g.first.has_value());
  REQUIRE(g.second.has_value());
  CHECK(hilbert_symbol(h, g.first->unit, g.first->partner) != 0);
  CHECK(hilbert_symbol(h, g.second->unit, g.second->partner) != 0);
  CHECK(kind_of([&] { symbol_generators_mod_p(h, {0, 3}); }) == ErrorKind::HypothesisViolated);

  // Q_3((-3)^{1/4}) contains mu_3 with zeta_3 at level 2.
  const LocalField k4 = LocalField::make(3, 1, std::vector<i64>{3, 0, 0, 0, 1}, 30);
  const HilbertPairing h4 = HilbertPairing::build(k4);
  const SymbolGenerators g4 = symbol_generators_mod_p(h4, {1, 1});
  CHECK(g4.zeta_level == 2);
  CHECK_FALSE(g4.found);
  CHECK(g4.blocking.find("i = 2") != std::string::npos);
  CHECK(symbol_generators_mod_p(h4, {3, 3}).found);
}
