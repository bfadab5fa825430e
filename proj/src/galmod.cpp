#include "ramlock/galmod.hpp"

#include <algorithm>
#include <numeric>
#include <set>

#include "ramlock/fp_linalg.hpp"

namespace ramlock {

namespace {

int vp(u64 a, u64 p, int cap) {
  if (a == 0) return cap;
  int v = 0;
  while (a % p == 0 && v < cap) {
    a /= p;
    ++v;
  }
  return v;
}

u64 mulm(u64 a, u64 b, u64 m) { return static_cast<u64>(static_cast<u128>(a) * b % m); }

/// Elementary divisor exponents of (+)Z/p^{t_i} modulo the given columns.
std::vector<int> cokernel_exponents(u64 p, int n, const std::vector<int>& type, const IntMatrix& cols) {
  const ZMod z(p, n);
  const int r = static_cast<int>(type.size());
  std::vector<std::vector<u64>> a(r);
  for (int i = 0; i < r; ++i) {
    for (int j = 0; j < r; ++j) a[i].push_back(i == j ? ipow(p, type[i]) % z.mod : 0);
    for (const auto& c : cols) a[i].push_back(c[i] % z.mod);
  }
  const int w = static_cast<int>(a.empty() ? 0 : a[0].size());
  std::vector<int> out;
  for (int k = 0; k < r; ++k) {
    int bi = -1, bj = -1, bv = n;
    for (int i = k; i < r; ++i)
      for (int j = k; j < w; ++j) {
        const int v = z.val(a[i][j]);
        if (v < bv) {
          bv = v;
          bi = i;
          bj = j;
        }
      }
    if (bi < 0) {
      for (int i = k; i < r; ++i) out.push_back(n);
      break;
    }
    std::swap(a[k], a[bi]);
    for (int i = 0; i < r; ++i) std::swap(a[i][k], a[i][bj]);
    const u64 pv = ipow(p, bv);
    const u64 uinv = z.inv((a[k][k] / pv) % z.mod);
    for (int i = k + 1; i < r; ++i) {
      if (a[i][k] == 0) continue;
      const u64 f = z.mul(a[i][k] / pv, uinv);
      for (int j = k; j < w; ++j) a[i][j] = z.sub(a[i][j], z.mul(f, a[k][j]));
    }
    for (int j = k + 1; j < w; ++j) {
      if (a[k][j] == 0) continue;
      const u64 f = z.mul(a[k][j] / pv, uinv);
      for (int i = k; i < r; ++i) a[i][j] = z.sub(a[i][j], z.mul(f, a[i][k]));
    }
    out.push_back(bv);
  }
  return out;
}

int sum_exponents(const std::vector<int>& e) { return std::accumulate(e.begin(), e.end(), 0); }

/// Structure from log_p #(p^k G) for k = 0, 1, ... (terminated by 0).
AbGroupStructure from_multiples(u64 p, const std::vector<int>& logs) {
  std::vector<int> exps;
  for (size_t k = 0; k < logs.size(); ++k) {
    const int ge_k1 = logs[k] - (k + 1 < logs.size() ? logs[k + 1] : 0);
    const int ge_k2 = (k + 1 < logs.size()) ? logs[k + 1] - (k + 2 < logs.size() ? logs[k + 2] : 0) : 0;
    for (int c = 0; c < ge_k1 - ge_k2; ++c) exps.push_back(static_cast<int>(k) + 1);
  }
  return AbGroupStructure::from_exponents(p, exps);
}

void check_map(const FiniteGaloisModule& src, const FiniteGaloisModule& dst, const IntMatrix& mat,
               const std::string& what) {
  require(static_cast<int>(mat.size()) == dst.rank(), ErrorKind::InvalidArgument, what + ": wrong row count");
  for (int i = 0; i < dst.rank(); ++i) {
    require(static_cast<int>(mat[i].size()) == src.rank(), ErrorKind::InvalidArgument,
            what + ": wrong column count");
    for (int j = 0; j < src.rank(); ++j) {
      const int need = dst.type[i] - src.type[j];
      if (need > 0)
        require(vp(mat[i][j] % ipow(dst.p, dst.type[i]), dst.p, dst.type[i]) >= need,
                ErrorKind::InvalidArgument, what + ": entry does not define a homomorphism");
    }
  }
}

/// (a b) with rows reduced to the types of the target.
IntMatrix compose(const IntMatrix& a, const IntMatrix& b, const std::vector<int>& dst_type, u64 p) {
  const size_t rows = a.size(), inner = b.size(), cols = b.empty() ? 0 : b[0].size();
  IntMatrix out(rows, std::vector<u64>(cols, 0));
  for (size_t i = 0; i < rows; ++i) {
    const u64 m = ipow(p, dst_type[i]);
    for (size_t j = 0; j < cols; ++j) {
      u64 s = 0;
      for (size_t l = 0; l < inner; ++l) s = (s + mulm(a[i][l] % m, b[l][j] % m, m)) % m;
      out[i][j] = s;
    }
  }
  return out;
}

bool equal_mod_type(const IntMatrix& a, const IntMatrix& b, const std::vector<int>& type, u64 p) {
  for (size_t i = 0; i < a.size(); ++i) {
    const u64 m = ipow(p, type[i]);
    for (size_t j = 0; j < a[i].size(); ++j)
      if (a[i][j] % m != b[i][j] % m) return false;
  }
  return true;
}

IntMatrix columns_of(const IntMatrix& mat) {
  IntMatrix cols(mat.empty() ? 0 : mat[0].size(), std::vector<u64>(mat.size()));
  for (size_t i = 0; i < mat.size(); ++i)
    for (size_t j = 0; j < mat[i].size(); ++j) cols[j][i] = mat[i][j];
  return cols;
}

/// Columns (g - 1) e_j over all generators.
IntMatrix relation_columns(const FiniteGaloisModule& m) {
  const u64 mod = ipow(m.p, m.level);
  IntMatrix cols;
  for (const auto& g : m.gens)
    for (int j = 0; j < m.rank(); ++j) {
      std::vector<u64> c(m.rank());
      for (int i = 0; i < m.rank(); ++i) c[i] = (g[i][j] + (i == j ? mod - 1 : 0)) % mod;
      cols.push_back(c);
    }
  return cols;
}

// --- enumeration helpers

struct Enumerator {
  u64 p;
  std::vector<u64> radix;
  u64 size = 1;

  Enumerator(const FiniteGaloisModule& m, u64 limit) : p(m.p) {
    for (int t : m.type) {
      radix.push_back(ipow(m.p, t));
      require(size <= limit / radix.back(), ErrorKind::CapReached,
              "module too large for enumeration (limit " + std::to_string(limit) + ")");
      size *= radix.back();
    }
  }
  u64 encode(const std::vector<u64>& v) const {
    u64 idx = 0;
    for (size_t i = radix.size(); i-- > 0;) idx = idx * radix[i] + v[i] % radix[i];
    return idx;
  }
  std::vector<u64> decode(u64 idx) const {
    std::vector<u64> v(radix.size());
    for (size_t i = 0; i < radix.size(); ++i) {
      v[i] = idx % radix[i];
      idx /= radix[i];
    }
    return v;
  }
  std::vector<u64> add(const std::vector<u64>& a, const std::vector<u64>& b) const {
    std::vector<u64> r(a.size());
    for (size_t i = 0; i < a.size(); ++i) r[i] = (a[i] + b[i]) % radix[i];
    return r;
  }
  std::vector<u64> scale(const std::vector<u64>& a, u64 c) const {
    std::vector<u64> r(a.size());
    for (size_t i = 0; i < a.size(); ++i) r[i] = mulm(a[i], c % radix[i], radix[i]);
    return r;
  }
  std::vector<u64> apply(const IntMatrix& g, const std::vector<u64>& x, const std::vector<u64>& dst_radix) const {
    std::vector<u64> r(g.size(), 0);
    for (size_t i = 0; i < g.size(); ++i)
      for (size_t j = 0; j < x.size(); ++j)
        r[i] = (r[i] + mulm(g[i][j] % dst_radix[i], x[j] % dst_radix[i], dst_radix[i])) % dst_radix[i];
    return r;
  }
};

/// Subgroup of an enumerated module, grown one generator at a time.
struct Subgroup {
  const Enumerator* en;
  std::vector<char> mark;
  std::vector<u64> elems;
  std::vector<std::vector<u64>> gens;

  explicit Subgroup(const Enumerator& e) : en(&e), mark(e.size, 0), elems{0} { mark[0] = 1; }
  bool contains(const std::vector<u64>& v) const { return mark[en->encode(v)] != 0; }
  void add(const std::vector<u64>& g) {
    if (contains(g)) return;
    gens.push_back(g);
    const std::vector<u64> base = elems;
    std::vector<u64> shift = g;
    while (!contains(shift)) {
      for (u64 h : base) {
        const u64 idx = en->encode(en->add(en->decode(h), shift));
        if (!mark[idx]) {
          mark[idx] = 1;
          elems.push_back(idx);
        }
      }
      shift = en->add(shift, g);
    }
  }
};

int log_p(u64 n, u64 p) {
  int l = 0;
  while (n > 1) {
    n /= p;
    ++l;
  }
  return l;
}

/// log_p #(p^k H + S) / #S for k = 0..level, with H given by generators.
std::vector<int> quotient_multiples(const Enumerator& en, const Subgroup& s,
                                    const std::vector<std::vector<u64>>& hgens, int level) {
  std::vector<int> logs;
  for (int k = 0; k <= level; ++k) {
    Subgroup t = s;
    for (const auto& g : hgens) t.add(en.scale(g, ipow(en.p, k)));
    logs.push_back(log_p(t.elems.size(), en.p) - log_p(s.elems.size(), en.p));
  }
  return logs;
}

}  // namespace

// --- AbGroupStructure

AbGroupStructure AbGroupStructure::from_exponents(u64 p, const std::vector<int>& exps) {
  AbGroupStructure s;
  for (int e : exps)
    if (e > 0) s.divisors.push_back(ipow(p, e));
  std::sort(s.divisors.begin(), s.divisors.end());
  return s;
}

u64 AbGroupStructure::order() const {
  u64 o = 1;
  for (u64 d : divisors) o *= d;
  return o;
}

std::string AbGroupStructure::str() const {
  if (divisors.empty()) return "0";
  std::string s;
  for (size_t i = 0; i < divisors.size(); ++i) {
    if (i) s += " + ";
    s += "Z/" + std::to_string(divisors[i]);
  }
  return s;
}

Json AbGroupStructure::to_json() const { return Json(divisors); }

// --- FiniteGaloisModule

FiniteGaloisModule FiniteGaloisModule::make(u64 p, int level, std::vector<int> type, std::vector<IntMatrix> gens) {
  require(is_prime(p), ErrorKind::InvalidArgument, "module prime must be prime");
  require(level >= 1 && level <= ZMod::max_digits(p), ErrorKind::InvalidArgument, "module level out of range");
  require(!type.empty(), ErrorKind::InvalidArgument, "module needs a positive rank");
  for (int t : type)
    require(t >= 1 && t <= level, ErrorKind::InvalidArgument, "type entries must lie in [1, level]");
  FiniteGaloisModule m;
  m.p = p;
  m.level = level;
  m.type = std::move(type);
  const u64 mod = ipow(p, level);
  for (auto& g : gens) {
    for (auto& row : g)
      for (auto& x : row) x %= mod;
    check_map(m, m, g, "generator");
    FpMat red(m.rank(), FpVec(m.rank()));
    for (int i = 0; i < m.rank(); ++i)
      for (int j = 0; j < m.rank(); ++j) red[i][j] = g[i][j] % p;
    require(fp::row_reduce(red, p) == m.rank(), ErrorKind::InvalidArgument,
            "generator matrix is not invertible mod p");
  }
  m.gens = std::move(gens);
  return m;
}

FiniteGaloisModule FiniteGaloisModule::free(u64 p, int level, int rank, std::vector<IntMatrix> gens) {
  return make(p, level, std::vector<int>(rank, level), std::move(gens));
}

int FiniteGaloisModule::log_order() const { return sum_exponents(type); }

AbGroupStructure FiniteGaloisModule::structure() const { return AbGroupStructure::from_exponents(p, type); }

Json FiniteGaloisModule::to_json() const {
  Json j;
  j["p"] = p;
  j["level"] = level;
  j["type_vector"] = type;
  Json gs = Json::array();
  for (const auto& g : gens) gs.push_back(g);
  j["generators"] = gs;
  return j;
}

FiniteGaloisModule FiniteGaloisModule::from_json(const Json& j) {
  require(j.is_object() && j.contains("p") && j.contains("level") && j.contains("generators"),
          ErrorKind::ParseError, "module descriptor needs p, level and generators");
  try {
    const u64 p = j["p"].get<u64>();
    const int level = j["level"].get<int>();
    std::vector<IntMatrix> gens;
    int rank = 0;
    for (const auto& g : j["generators"]) {
      IntMatrix m;
      for (const auto& row : g) {
        std::vector<u64> r;
        for (const auto& x : row) {
          const i64 v = x.get<i64>();
          const i64 mod = static_cast<i64>(ipow(p, level));
          r.push_back(static_cast<u64>(((v % mod) + mod) % mod));
        }
        m.push_back(r);
      }
      rank = static_cast<int>(m.size());
      gens.push_back(m);
    }
    std::vector<int> type = j.contains("type_vector") ? j["type_vector"].get<std::vector<int>>()
                                                      : std::vector<int>(rank, level);
    for (const auto& g : gens) {
      require(g.size() == type.size(), ErrorKind::ParseError, "generator size does not match the type vector");
      for (const auto& row : g)
        require(row.size() == type.size(), ErrorKind::ParseError, "generator matrix is not square");
    }
    return make(p, level, std::move(type), std::move(gens));
  } catch (const nlohmann::json::exception& e) {
    fail(ErrorKind::ParseError, std::string("module descriptor: ") + e.what());
  }
}

// --- coinvariants and invariants

AbGroupStructure coinvariants(const FiniteGaloisModule& m) {
  return AbGroupStructure::from_exponents(m.p, cokernel_exponents(m.p, m.level, m.type, relation_columns(m)));
}

AbGroupStructure invariants_sub(const FiniteGaloisModule& m) {
  // The kernel is dual to the cokernel of the transposed maps on the dual module.
  const u64 mod = ipow(m.p, m.level);
  IntMatrix cols;
  for (const auto& g : m.gens)
    for (int i = 0; i < m.rank(); ++i) {
      std::vector<u64> c(m.rank());
      for (int j = 0; j < m.rank(); ++j) {
        const u64 a = (g[i][j] + (i == j ? mod - 1 : 0)) % mod % ipow(m.p, m.type[i]);
        const int shift = m.type[j] - m.type[i];
        c[j] = shift >= 0 ? mulm(a, ipow(m.p, shift), mod) : a / ipow(m.p, -shift);
      }
      cols.push_back(c);
    }
  return AbGroupStructure::from_exponents(m.p, cokernel_exponents(m.p, m.level, m.type, cols));
}

AbGroupStructure exhaustive_coinvariants(const FiniteGaloisModule& m, u64 limit) {
  const Enumerator en(m, limit);
  Subgroup s(en);
  for (const auto& c : relation_columns(m)) s.add(en.decode(en.encode(c)));
  std::vector<std::vector<u64>> basis;
  for (int j = 0; j < m.rank(); ++j) {
    std::vector<u64> e(m.rank(), 0);
    e[j] = 1;
    basis.push_back(e);
  }
  return from_multiples(m.p, quotient_multiples(en, s, basis, m.level));
}

AbGroupStructure exhaustive_invariants(const FiniteGaloisModule& m, u64 limit) {
  const Enumerator en(m, limit);
  Subgroup k(en);
  for (u64 idx = 0; idx < en.size; ++idx) {
    const auto x = en.decode(idx);
    bool fixed = true;
    for (const auto& g : m.gens)
      if (en.apply(g, x, en.radix) != x) {
        fixed = false;
        break;
      }
    if (fixed) k.add(x);
  }
  const Subgroup zero(en);
  return from_multiples(m.p, quotient_multiples(en, zero, k.gens, m.level));
}

// --- rank one and Serre-Tate

int rank1_coinvariant_level(u64 p, int n, const std::vector<u64>& character_values) {
  const u64 mod = ipow(p, n);
  int m = n;
  for (u64 v : character_values) m = std::min(m, vp((v % mod + mod - 1) % mod, p, n));
  return m;
}

FiniteGaloisModule serre_tate_module(u64 p, int level, u64 b, std::optional<int> trivial_mod) {
  require(level >= 1, ErrorKind::InvalidArgument, "Serre-Tate level must be positive");
  const u64 mod = ipow(p, level);
  b %= mod;
  if (trivial_mod)
    require(b % ipow(p, std::min(*trivial_mod, level)) == 0, ErrorKind::InconsistentInput,
            "Serre-Tate parameter is not divisible by p^" + std::to_string(*trivial_mod));
  return FiniteGaloisModule::free(p, level, 2, {IntMatrix{{1, b}, {0, 1}}});
}

AbGroupStructure claim1_image(u64 p, int level, int N, u64 b) {
  require(level >= 1 && N >= 0 && N < level, ErrorKind::InvalidArgument, "need 0 <= N < M");
  const u64 mod = ipow(p, level);
  b %= mod;
  require(b != 0, ErrorKind::SplitCase, "b = 0: the action is split and mu_{p^M} injects");
  require(vp(b, p, level) == N, ErrorKind::InvalidArgument, "b must be p^N times a unit");
  const FiniteGaloisModule m = serre_tate_module(p, level, b);
  const FiniteGaloisModule c = FiniteGaloisModule::free(p, level, 1, {IntMatrix{{1}}});
  const FiniteGaloisModule q = FiniteGaloisModule::free(p, level, 1, {IntMatrix{{1}}});
  return connected_etale_image(c, m, q, IntMatrix{{1}, {0}}, IntMatrix{{0, 1}});
}

// --- connected-etale sequences

AbGroupStructure connected_etale_image(const FiniteGaloisModule& c, const FiniteGaloisModule& m,
                                       const FiniteGaloisModule& q, const IntMatrix& iota,
                                       const IntMatrix& pi) {
  const u64 p = m.p;
  require(c.p == p && q.p == p, ErrorKind::InvalidArgument, "modules over different primes");
  require(c.gens.size() == m.gens.size() && q.gens.size() == m.gens.size(), ErrorKind::InvalidArgument,
          "modules need the same number of generators");
  check_map(c, m, iota, "iota");
  check_map(m, q, pi, "pi");
  for (size_t g = 0; g < m.gens.size(); ++g) {
    require(equal_mod_type(compose(m.gens[g], iota, m.type, p), compose(iota, c.gens[g], m.type, p), m.type, p),
            ErrorKind::NotEquivariant, "iota does not commute with the action");
    require(equal_mod_type(compose(q.gens[g], pi, q.type, p), compose(pi, m.gens[g], q.type, p), q.type, p),
            ErrorKind::NotEquivariant, "pi does not commute with the action");
  }
  const IntMatrix zero(q.rank(), std::vector<u64>(c.rank(), 0));
  require(equal_mod_type(compose(pi, iota, q.type, p), zero, q.type, p), ErrorKind::NotExact,
          "pi after iota is not zero");
  const int n = m.level;
  const IntMatrix icols = columns_of(iota);
  const int log_m_mod_iota = sum_exponents(cokernel_exponents(p, n, m.type, icols));
  require(m.log_order() - log_m_mod_iota == c.log_order(), ErrorKind::NotExact, "iota is not injective");
  require(sum_exponents(cokernel_exponents(p, q.level, q.type, columns_of(pi))) == 0, ErrorKind::NotExact,
          "pi is not surjective");
  require(c.log_order() + q.log_order() == m.log_order(), ErrorKind::NotExact,
          "the sequence is not exact in the middle");

  const IntMatrix rel = relation_columns(m);
  const int log_mg = sum_exponents(cokernel_exponents(p, n, m.type, rel));
  std::vector<int> logs;
  for (int k = 0; k <= n; ++k) {
    IntMatrix cols = rel;
    const u64 pk = ipow(p, k);
    for (const auto& col : icols) {
      std::vector<u64> s(col.size());
      for (size_t i = 0; i < col.size(); ++i) s[i] = mulm(col[i], pk, ipow(p, n));
      cols.push_back(s);
    }
    logs.push_back(log_mg - sum_exponents(cokernel_exponents(p, n, m.type, cols)));
  }
  const AbGroupStructure image = from_multiples(p, logs);
  // M_G -> Q_G is onto, so its kernel has order #M_G / #Q_G.
  const int log_qg = sum_exponents(cokernel_exponents(p, q.level, q.type, relation_columns(q)));
  require(log_p(image.order(), p) == log_mg - log_qg, ErrorKind::Internal,
          "image of C_G differs from the kernel of M_G -> Q_G");
  return image;
}

AbGroupStructure exhaustive_coinvariant_kernel(const FiniteGaloisModule& m, const FiniteGaloisModule& q,
                                               const IntMatrix& pi, u64 limit) {
  const Enumerator em(m, limit), eq(q, limit);
  Subgroup sm(em), sq(eq);
  for (const auto& c : relation_columns(m)) sm.add(em.decode(em.encode(c)));
  for (const auto& c : relation_columns(q)) sq.add(eq.decode(eq.encode(c)));
  Subgroup k(em);
  for (u64 idx = 0; idx < em.size; ++idx) {
    const auto x = em.decode(idx);
    if (sq.contains(em.apply(pi, x, eq.radix))) k.add(x);
  }
  return from_multiples(m.p, quotient_multiples(em, sm, k.gens, m.level));
}

// --- inverse limits

LimitReport truncated_limit_coinvariants(const std::vector<std::pair<FiniteGaloisModule, IntMatrix>>& family,
                                         int depth) {
  require(depth >= 1 && depth <= static_cast<int>(family.size()), ErrorKind::InvalidArgument,
          "depth must lie within the family");
  LimitReport out;
  for (int k = 0; k < depth; ++k) {
    const FiniteGaloisModule& mk = family[k].first;
    if (k > 0) {
      const FiniteGaloisModule& prev = family[k - 1].first;
      const IntMatrix& t = family[k].second;
      require(prev.gens.size() == mk.gens.size(), ErrorKind::InvalidArgument,
              "levels need the same number of generators");
      check_map(mk, prev, t, "transition");
      for (size_t g = 0; g < mk.gens.size(); ++g)
        require(equal_mod_type(compose(prev.gens[g], t, prev.type, mk.p), compose(t, mk.gens[g], prev.type, mk.p),
                               prev.type, mk.p),
                ErrorKind::NotEquivariant, "transition does not commute with the action");
      require(sum_exponents(cokernel_exponents(prev.p, prev.level, prev.type, columns_of(t))) == 0,
              ErrorKind::InvalidArgument, "transition is not surjective");
    }
    out.per_level.push_back(coinvariants(mk));
  }
  // Transitions are onto, so equal orders on consecutive levels mean isomorphic maps.
  for (int s = 0; s + 1 < depth; ++s) {
    bool stable = true;
    for (int k = s + 1; k < depth && stable; ++k) stable = out.per_level[k] == out.per_level[s];
    if (stable) {
      out.stabilized = true;
      out.stabilized_at = s + 1;
      out.limit = out.per_level[s];
      break;
    }
  }
  return out;
}

// --- semisimplicity

bool semisimplicity_check(const FiniteGaloisModule& m, u64 limit) {
  require(m.rank() == 2, ErrorKind::RankUnsupported, "semisimplicity check needs rank 2");
  const Enumerator en(m, limit);
  std::set<std::vector<u64>> lines;
  for (u64 idx = 1; idx < en.size; ++idx) {
    const auto v = en.decode(idx);
    std::vector<u64> elems;
    std::vector<char> in(en.size, 0);
    std::vector<u64> cur = v;
    u64 ci = idx;
    elems.push_back(0);
    in[0] = 1;
    while (!in[ci]) {
      in[ci] = 1;
      elems.push_back(ci);
      cur = en.add(cur, v);
      ci = en.encode(cur);
    }
    bool invariant = true;
    for (const auto& g : m.gens)
      if (!in[en.encode(en.apply(g, v, en.radix))]) {
        invariant = false;
        break;
      }
    if (!invariant) continue;
    std::sort(elems.begin(), elems.end());
    lines.insert(elems);
  }
  const std::vector<std::vector<u64>> list(lines.begin(), lines.end());
  for (size_t a = 0; a < list.size(); ++a)
    for (size_t b = a + 1; b < list.size(); ++b) {
      if (list[a].size() * list[b].size() != en.size) continue;
      std::vector<u64> common;
      std::set_intersection(list[a].begin(), list[a].end(), list[b].begin(), list[b].end(),
                            std::back_inserter(common));
      if (common.size() == 1) return true;
    }
  return false;
}

}  // namespace ramlock
