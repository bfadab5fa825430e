#include <algorithm>

#include "ramlock/galmod.hpp"
#include "ramlock/zmod.hpp"
#include "selftest_internal.hpp"

namespace ramlock::selftest {

namespace {

int vp(u64 n, u64 p, int cap) {
  int v = 0;
  while (v < cap && n % p == 0) {
    n /= p;
    ++v;
  }
  return v;
}

u64 random_coprime(u64 p, u64 mod, Rng& rng) {
  for (;;) {
    const u64 u = rng() % mod;
    if (u % p != 0) return u;
  }
}

/// Character value 1 + p^a u (a >= 1) or a unit not congruent to 1 (a = 0).
u64 random_character(u64 p, int n, int a, Rng& rng) {
  const u64 mod = ipow(p, n);
  if (a == 0) {
    for (;;) {
      const u64 c = random_coprime(p, mod, rng);
      if (c % p != 1) return c;
    }
  }
  return (1 + ipow(p, a) * random_coprime(p, mod, rng)) % mod;
}

}  // namespace

void suite_coinv(Checker& check, Rng& rng) {
  for (int t = 0; t < 200; ++t) {
    const u64 p = (t % 2) ? 5 : 3;
    const int n = 1 + static_cast<int>(rng() % 5);
    const int gens = 1 + static_cast<int>(rng() % 2);
    std::vector<u64> values;
    std::vector<IntMatrix> mats;
    for (int g = 0; g < gens; ++g) {
      const int a = static_cast<int>(rng() % (n + 1));
      values.push_back(a == n ? 1 : random_character(p, n, a, rng));
      mats.push_back(IntMatrix{{values.back()}});
    }
    const auto m = FiniteGaloisModule::free(p, n, 1, mats);
    int expect = n;
    for (u64 c : values) expect = std::min(expect, vp((c + ipow(p, n) - 1) % ipow(p, n), p, n));
    const int mg = rank1_coinvariant_level(p, n, values);
    const AbGroupStructure snf = coinvariants(m), brute = exhaustive_coinvariants(m);
    check(mg == expect && snf == AbGroupStructure::cyclic(p, mg) && brute == snf, "SNF = Z/p^{M_G} = enumeration",
          [&] {
            return Json{{"module", m.to_json()}, {"M_G", mg}, {"snf", snf.str()}, {"exhaustive", brute.str()}};
          });
  }
}

void suite_claim1(Checker& check, Rng& rng) {
  for (u64 p : {3ULL, 5ULL})
    for (int M = 1; M <= 3; ++M)
      for (int N = 0; N < M; ++N) {
        const u64 mod = ipow(p, M - N);
        std::vector<u64> units;
        for (u64 u = 1; u < mod; ++u)
          if (u % p != 0) units.push_back(u);
        std::shuffle(units.begin(), units.end(), rng);
        if (units.size() > 5) units.resize(5);
        for (u64 u : units) {
          const u64 b = u * ipow(p, N);
          const AbGroupStructure img = claim1_image(p, M, N, b);
          const auto st = serre_tate_module(p, M, b);
          const auto triv = FiniteGaloisModule::free(p, M, 1, {IntMatrix{{1}}});
          const AbGroupStructure brute = exhaustive_coinvariant_kernel(st, triv, IntMatrix{{0, 1}}, ipow(p, 2 * M));
          check(img == AbGroupStructure::cyclic(p, N) && brute == img, "image of mu_{p^M} is Z/p^N", [&] {
            return Json{{"p", p}, {"M", M}, {"N", N}, {"b", b}, {"image", img.str()}, {"exhaustive", brute.str()}};
          });
        }
      }
}

void suite_stabilization(Checker& check, Rng& rng) {
  const int depth = 5;
  for (u64 p : {3ULL, 5ULL})
    for (int a = 0; a < depth; ++a)
      for (int t = 0; t < 3; ++t) {
        const u64 c = random_character(p, depth, a, rng);
        std::vector<std::pair<FiniteGaloisModule, IntMatrix>> fam;
        for (int n = 1; n <= depth; ++n)
          fam.emplace_back(FiniteGaloisModule::free(p, n, 1, {IntMatrix{{c % ipow(p, n)}}}), IntMatrix{{1}});
        const int mg = rank1_coinvariant_level(p, depth, {c});
        const LimitReport r = truncated_limit_coinvariants(fam, depth);
        check(r.stabilized && r.stabilized_at <= mg + 1 && r.limit == AbGroupStructure::cyclic(p, mg),
              "character family stabilises by M_G + 1", [&] {
                return Json{{"p", p}, {"character", c}, {"M_G", mg}, {"stabilized", r.stabilized},
                            {"stabilized_at", r.stabilized_at}, {"limit", r.limit.str()}};
              });
      }

  for (u64 p : {3ULL, 5ULL})
    for (int M = 1; M <= 3; ++M)
      for (int N = 0; N < M; ++N) {
        const u64 b = random_coprime(p, ipow(p, M - N), rng) * ipow(p, N);
        std::vector<AbGroupStructure> images;
        for (int n = 1; n <= M + 2; ++n) {
          const auto st = serre_tate_module(p, n, b % ipow(p, n));
          const auto line = FiniteGaloisModule::free(p, n, 1, {IntMatrix{{1}}});
          images.push_back(connected_etale_image(line, st, line, IntMatrix{{1}, {0}}, IntMatrix{{0, 1}}));
        }
        int from = static_cast<int>(images.size());
        while (from > 1 && images[from - 2] == images.back()) --from;
        check(from <= M && images.back() == AbGroupStructure::cyclic(p, N), "Serre-Tate family stabilises by M", [&] {
          Json per = Json::array();
          for (const auto& g : images) per.push_back(g.str());
          return Json{{"p", p}, {"M", M}, {"N", N}, {"b", b}, {"stabilized_at", from}, {"per_level", per}};
        });
      }
}

}  // namespace ramlock::selftest
