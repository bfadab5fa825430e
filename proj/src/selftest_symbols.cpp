#include <set>

#include "ramlock/tower.hpp"
#include "ramlock/unit_symbols.hpp"
#include "selftest_internal.hpp"

namespace ramlock::selftest {

FieldElement random_unit(const LocalField& k, Rng& rng) {
  for (;;) {
    OElt a = k.zero();
    for (auto& c : a.c) c = rng() % k.zmod().mod;
    FieldElement x(k, a);
    if (!x.is_zero() && x.val() == 0) return x;
  }
}

FieldElement random_nonzero(const LocalField& k, Rng& rng) {
  return random_unit(k, rng).mul_pi_power(static_cast<int>(rng() % 7) - 3);
}

namespace {

LocalField q3_zeta3() { return LocalField::make(3, 1, std::vector<i64>{3, 3, 1}, 30); }
LocalField q3_zeta9() { return cyclotomic_extend(LocalField::unramified(3, 1, 30), 2); }
LocalField q5_zeta5() { return cyclotomic_extend(LocalField::unramified(5, 1, 20), 1); }

FpVec add(const FpVec& a, const FpVec& b, u64 p) {
  FpVec r(a.size());
  for (size_t i = 0; i < a.size(); ++i) r[i] = (a[i] + b[i]) % p;
  return r;
}

/// Subgroup of F_p^n generated by `gens`, by closure under addition.
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

/// N_{L/k}(L^x) mod p-th powers for L = k(x^{1/p}), from norms of random elements.
std::set<FpVec> norm_group_oracle(const MulModPSpace& s, const FieldElement& x, Rng& rng, int cap) {
  const LocalField& k = s.field();
  std::vector<FpVec> gens;
  if (s.is_pth_power(x)) {
    for (int j = 0; j < s.dim(); ++j) {
      gens.emplace_back(s.dim(), 0);
      gens.back()[j] = 1;
    }
  } else if (kummer_class(k, x).type == KummerClass::Type::Unramified) {
    for (int t = 0; t < 3 * s.dim(); ++t) gens.push_back(s.coords(random_unit(k, rng)));
  } else {
    const LocalField L = kummer_extend(k, x, cap);
    for (int t = 0; t < 3 * s.dim(); ++t) gens.push_back(s.coords(relative_norm(L, random_nonzero(L, rng))));
  }
  return span_closure(gens, s.dim(), k.p());
}

}  // namespace

void suite_symbols(Checker& check, Rng& rng) {
  for (const auto& [k, cap] : {std::pair{q3_zeta3(), default_degree_cap()}, std::pair{q5_zeta5(), 20}}) {
    const HilbertPairing h = HilbertPairing::build(k, cap);
    const MulModPSpace& s = h.space();
    const u64 p = k.p();
    for (int t = 0; t < 50; ++t) {
      const FieldElement x = random_nonzero(k, rng), y = random_nonzero(k, rng), x2 = random_nonzero(k, rng);
      const auto ctx = [&] {
        return Json{{"field", field_to_json(k)}, {"x", element_to_json(x)}, {"y", element_to_json(y)},
                    {"x2", element_to_json(x2)}};
      };
      const u64 v = hilbert_symbol(h, y, x);
      const auto norms = norm_group_oracle(s, x, rng, h.cap());
      check((v == 0) == (norms.count(s.coords(y)) == 1), "(y,x) = 0 iff y is a norm from k(x^(1/p))", ctx);
      check(hilbert_symbol(h, x, -x) == 0, "(x,-x) = 0", ctx);
      check((v + hilbert_symbol(h, x, y)) % p == 0, "antisymmetry", ctx);
      check(h.value(y, x * x2) == (h.value(y, x) + h.value(y, x2)) % p, "linear in the second slot", ctx);
      check(h.value(y * x2, x) == (h.value(y, x) + h.value(x2, x)) % p, "linear in the first slot", ctx);
    }
  }
}

void suite_hilbert_table(Checker& check, Rng&) {
  for (const auto& [k, cap] : {std::pair{q3_zeta3(), default_degree_cap()}, std::pair{q3_zeta9(), 18}}) {
    const HilbertPairing h = HilbertPairing::build(k, cap);
    const int p = static_cast<int>(k.p());
    const int pe0 = p * k.e() / (p - 1);
    for (int i = 1; i <= pe0; ++i)
      for (int j = 1; j <= pe0; ++j) {
        if (i % p == 0 && j % p == 0) continue;
        const PairingOrder o = filtration_pairing_order(h, i, j);
        const u64 want = i + j <= pe0 ? static_cast<u64>(p) : 1;
        check(o.computed == want, "pairing order of U^i x U^j", [&] {
          return Json{{"field", field_to_json(k)}, {"i", i}, {"j", j}, {"computed", o.computed}, {"expected", want}};
        });
      }
  }
}

void suite_kummer_level(Checker& check, Rng& rng) {
  int samples = 0;
  for (const auto& [k, count] : {std::pair{q3_zeta3(), 100}, std::pair{q3_zeta9(), 80}}) {
    const MulModPSpace s = MulModPSpace::build(k);
    const int p = static_cast<int>(k.p());
    const int pe0 = p * k.e() / (p - 1);
    for (int t = 0; t < count; ++t) {
      const int i = 1 + static_cast<int>(rng() % (pe0 - 1));
      const FieldElement x = FieldElement::one(k) + random_unit(k, rng).mul_pi_power(i);
      const auto level = filtration_level(s, x);
      if (!level || *level % p == 0 || *level >= pe0) continue;
      const auto res = kummer_root_level(k, x, 18);
      check(res.level == res.expected && res.field.degree() == p * k.degree(), "level of x^(1/p) equals level of x",
            [&] {
              return Json{{"field", field_to_json(k)}, {"x", element_to_json(x)}, {"level", res.level},
                          {"expected", res.expected}};
            });
      ++samples;
    }
  }
  check(samples >= 100, "at least 100 admissible samples", [&] { return Json{{"samples", samples}}; });
}

}  // namespace ramlock::selftest
