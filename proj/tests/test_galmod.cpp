#include <doctest.h>

#include <functional>
#include <random>

#include "ramlock/galmod.hpp"

using namespace ramlock;

namespace {

ErrorKind kind_of(const std::function<void()>& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.kind();
  }
  return ErrorKind::Internal;
}

AbGroupStructure ab(u64 p, std::vector<int> exps) { return AbGroupStructure::from_exponents(p, exps); }

/// Random invertible matrix compatible with the type vector.
IntMatrix random_generator(u64 p, int level, const std::vector<int>& type, std::mt19937_64& rng) {
  const int r = static_cast<int>(type.size());
  for (;;) {
    IntMatrix g(r, std::vector<u64>(r));
    for (int i = 0; i < r; ++i)
      for (int j = 0; j < r; ++j) {
        u64 x = rng() % ipow(p, level);
        if (type[i] > type[j]) x = x * ipow(p, type[i] - type[j]) % ipow(p, level);
        g[i][j] = x;
      }
    try {
      FiniteGaloisModule::make(p, level, type, {g});
      return g;
    } catch (const Error&) {
    }
  }
}

}  // namespace

TEST_CASE("coinvariant examples") {
  CHECK(coinvariants(FiniteGaloisModule::free(3, 2, 2, {IntMatrix{{1, 0}, {0, 1}}})) == ab(3, {2, 2}));
  CHECK(coinvariants(FiniteGaloisModule::free(3, 3, 1, {IntMatrix{{4}}})) == ab(3, {1}));
  const auto m = FiniteGaloisModule::free(3, 2, 2, {IntMatrix{{1, 3}, {0, 1}}});
  CHECK(coinvariants(m) == ab(3, {1, 2}));
  CHECK(exhaustive_coinvariants(m) == ab(3, {1, 2}));
  CHECK(coinvariants(m).str() == "Z/3 + Z/9");
}

TEST_CASE("invariant examples") {
  CHECK(invariants_sub(FiniteGaloisModule::free(3, 2, 2, {IntMatrix{{1, 0}, {0, 1}}})) == ab(3, {2, 2}));
  CHECK(invariants_sub(FiniteGaloisModule::free(3, 2, 1, {IntMatrix{{4}}})) == ab(3, {1}));
  // b = p^N u at level M: invariants Z/p^M + Z/p^N.
  for (u64 p : {3ULL, 5ULL})
    for (int M = 1; M <= 3; ++M)
      for (int N = 0; N < M; ++N) {
        const auto st = serre_tate_module(p, M, 2 * ipow(p, N));
        CHECK(invariants_sub(st) == ab(p, {M, N}));
        if (ipow(p, 2 * M) <= kExhaustiveLimit) CHECK(exhaustive_invariants(st) == ab(p, {M, N}));
      }
}

TEST_CASE("linear algebra agrees with enumeration") {
  std::mt19937_64 rng(8);
  const std::vector<std::pair<u64, std::vector<int>>> shapes = {
      {3, {1}}, {3, {2}}, {3, {1, 1}}, {3, {2, 2}}, {3, {1, 2}}, {3, {2, 1}}, {3, {3, 2}},
      {3, {1, 1, 1}}, {3, {2, 2, 1}}, {5, {2}}, {5, {1, 1}}, {5, {2, 2}}, {5, {1, 2}}, {7, {2, 2}}};
  for (const auto& [p, type] : shapes) {
    const int level = *std::max_element(type.begin(), type.end());
    for (int t = 0; t < 12; ++t) {
      std::vector<IntMatrix> gens;
      const int count = 1 + static_cast<int>(rng() % 2);
      for (int g = 0; g < count; ++g) gens.push_back(random_generator(p, level, type, rng));
      const auto m = FiniteGaloisModule::make(p, level, type, gens);
      CHECK(coinvariants(m) == exhaustive_coinvariants(m));
      CHECK(invariants_sub(m) == exhaustive_invariants(m));
      if (count == 1) CHECK(coinvariants(m).order() == invariants_sub(m).order());
    }
  }
}

TEST_CASE("cyclic actions have equal invariant and coinvariant counts") {
  std::mt19937_64 rng(21);
  for (int t = 0; t < 40; ++t) {
    const u64 p = (t % 2) ? 3 : 5;
    const int level = p == 3 ? 4 : 2;
    const auto m = FiniteGaloisModule::free(p, level, 2, {random_generator(p, level, {level, level}, rng)});
    CHECK(exhaustive_invariants(m, 6561).order() == exhaustive_coinvariants(m, 6561).order());
  }
}

TEST_CASE("rank one coinvariant level") {
  CHECK(rank1_coinvariant_level(3, 4, {4}) == 1);
  CHECK(rank1_coinvariant_level(3, 5, {1}) == 5);
  CHECK(rank1_coinvariant_level(3, 4, {10, 19}) == 2);
  CHECK(coinvariants(FiniteGaloisModule::free(3, 4, 1, {IntMatrix{{10}}, IntMatrix{{19}}})) == ab(3, {2}));
  CHECK(exhaustive_coinvariants(FiniteGaloisModule::free(3, 4, 1, {IntMatrix{{10}}, IntMatrix{{19}}})) ==
        ab(3, {2}));
}

TEST_CASE("Serre-Tate image grid") {
  CHECK(claim1_image(3, 2, 1, 3) == ab(3, {1}));
  CHECK(claim1_image(5, 3, 2, 25) == ab(5, {2}));
  CHECK(kind_of([] { claim1_image(3, 2, 0, 0); }) == ErrorKind::SplitCase);
  CHECK(kind_of([] { serre_tate_module(3, 3, 3, 2); }) == ErrorKind::InconsistentInput);
  CHECK(coinvariants(serre_tate_module(3, 2, 0)) == ab(3, {2, 2}));
  for (u64 p : {3ULL, 5ULL})
    for (int M = 1; M <= 3; ++M)
      for (int N = 0; N < M; ++N)
        for (u64 u = 1; u < 2 * p; ++u) {
          if (u % p == 0) continue;
          const u64 b = u * ipow(p, N);
          CHECK(claim1_image(p, M, N, b) == ab(p, {N}));
          const auto st = serre_tate_module(p, M, b);
          const auto triv = FiniteGaloisModule::free(p, M, 1, {IntMatrix{{1}}});
          if (ipow(p, 2 * M) <= kExhaustiveLimit)
            CHECK(exhaustive_coinvariant_kernel(st, triv, IntMatrix{{0, 1}}) == ab(p, {N}));
        }
}

TEST_CASE("connected-etale image") {
  const u64 p = 3;
  const auto triv1 = FiniteGaloisModule::free(p, 2, 1, {IntMatrix{{1}}});
  const auto split = FiniteGaloisModule::free(p, 2, 2, {IntMatrix{{1, 0}, {0, 1}}});
  CHECK(connected_etale_image(triv1, split, triv1, IntMatrix{{1}, {0}}, IntMatrix{{0, 1}}) == ab(p, {2}));
  CHECK(kind_of([&] { connected_etale_image(triv1, split, triv1, IntMatrix{{1}, {0}}, IntMatrix{{1, 0}}); }) ==
        ErrorKind::NotExact);
  const auto twist = FiniteGaloisModule::free(p, 2, 1, {IntMatrix{{4}}});
  CHECK(kind_of([&] { connected_etale_image(twist, split, triv1, IntMatrix{{1}, {0}}, IntMatrix{{0, 1}}); }) ==
        ErrorKind::NotEquivariant);
  // Ext of a twisted line by a trivial one.
  const auto m = FiniteGaloisModule::free(p, 2, 2, {IntMatrix{{4, 1}, {0, 1}}});
  const auto img = connected_etale_image(twist, m, triv1, IntMatrix{{1}, {0}}, IntMatrix{{0, 1}});
  CHECK(img == exhaustive_coinvariant_kernel(m, triv1, IntMatrix{{0, 1}}));
}

TEST_CASE("truncated inverse limits") {
  const u64 p = 3;
  std::vector<std::pair<FiniteGaloisModule, IntMatrix>> constant;
  for (int k = 0; k < 4; ++k)
    constant.emplace_back(FiniteGaloisModule::free(p, 2, 2, {IntMatrix{{1, 0}, {0, 1}}}),
                          IntMatrix{{1, 0}, {0, 1}});
  const LimitReport c = truncated_limit_coinvariants(constant, 4);
  CHECK(c.stabilized);
  CHECK(c.stabilized_at == 1);
  CHECK(c.limit == ab(p, {2, 2}));

  // Character 1 + 2p^2 at every level: M_G = 2.
  std::vector<std::pair<FiniteGaloisModule, IntMatrix>> cyc;
  for (int n = 1; n <= 5; ++n)
    cyc.emplace_back(FiniteGaloisModule::free(p, n, 1, {IntMatrix{{1 + 2 * 9}}}), IntMatrix{{1}});
  const LimitReport r = truncated_limit_coinvariants(cyc, 5);
  CHECK(r.stabilized);
  CHECK(r.stabilized_at == 2);
  CHECK(r.stabilized_at <= rank1_coinvariant_level(p, 5, {19}) + 1);
  CHECK(r.limit == ab(p, {2}));

  // Serre-Tate family: the image of the connected part stabilises at Z/p^N.
  const int M = 2, N = 1;
  std::vector<AbGroupStructure> images;
  for (int n = 1; n <= M + 2; ++n) {
    const auto st = serre_tate_module(p, n, 3);
    const auto line = FiniteGaloisModule::free(p, n, 1, {IntMatrix{{1}}});
    images.push_back(connected_etale_image(line, st, line, IntMatrix{{1}, {0}}, IntMatrix{{0, 1}}));
  }
  CHECK(images.back() == ab(p, {N}));
  CHECK(images[M - 1] == ab(p, {N}));

  std::vector<std::pair<FiniteGaloisModule, IntMatrix>> growing;
  for (int n = 1; n <= 3; ++n) growing.emplace_back(FiniteGaloisModule::free(p, n, 1, {IntMatrix{{1}}}), IntMatrix{{1}});
  CHECK_FALSE(truncated_limit_coinvariants(growing, 3).stabilized);
}

TEST_CASE("semisimplicity") {
  CHECK(semisimplicity_check(FiniteGaloisModule::free(3, 2, 2, {IntMatrix{{2, 0}, {0, 4}}})));
  CHECK_FALSE(semisimplicity_check(FiniteGaloisModule::free(3, 2, 2, {IntMatrix{{1, 1}, {0, 1}}})));
  CHECK_FALSE(semisimplicity_check(FiniteGaloisModule::free(3, 2, 2, {IntMatrix{{1, 3}, {0, 1}}})));
  CHECK(kind_of([] { semisimplicity_check(FiniteGaloisModule::free(3, 1, 3, {})); }) ==
        ErrorKind::RankUnsupported);
}

TEST_CASE("module descriptor round trip") {
  const auto m = FiniteGaloisModule::make(3, 2, {2, 1}, {IntMatrix{{1, 3}, {0, 2}}});
  const Json j = m.to_json();
  CHECK(j.dump() == R"({"p":3,"level":2,"type_vector":[2,1],"generators":[[[1,3],[0,2]]]})");
  const auto back = FiniteGaloisModule::from_json(j);
  CHECK(back.to_json() == j);
  CHECK(kind_of([] { FiniteGaloisModule::from_json(Json::parse(R"({"p":3})")); }) == ErrorKind::ParseError);
  CHECK(kind_of([] { FiniteGaloisModule::free(3, 2, 2, {IntMatrix{{3, 0}, {0, 1}}}); }) ==
        ErrorKind::InvalidArgument);
}
