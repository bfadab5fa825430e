#include "ramlock/tower.hpp"

#include <algorithm>
#include <cstdlib>
#include <numeric>
#include <string>

#include "ramlock/ring_matrix.hpp"

namespace ramlock {

namespace {

int env_int(const char* name, int fallback) {
  const char* v = std::getenv(name);
  if (v == nullptr || *v == '\0') return fallback;
  char* end = nullptr;
  const long x = std::strtol(v, &end, 10);
  if (end == v || *end != '\0' || x < 1) return fallback;
  return static_cast<int>(x);
}

void check_cap(int degree, int cap) {
  require(degree <= cap, ErrorKind::DegreeCapExceeded,
          "absolute degree " + std::to_string(degree) + " exceeds the cap " + std::to_string(cap));
}

// Reduce W-coordinates to the child's modulus.
WElt reduce(const WElt& w, const ZMod& z) {
  WElt r(w.size());
  for (size_t i = 0; i < w.size(); ++i) r[i] = w[i] % z.mod;
  return r;
}

// O_L as d copies of O_k, flattened to e_k * d W-coordinates, index r * e_k + s.
std::vector<WElt> flatten(const LocalField& k, const std::vector<OElt>& b) {
  std::vector<WElt> out;
  for (const auto& x : b)
    for (int s = 0; s < k.e(); ++s) out.push_back(k.coeff(x, s));
  return out;
}

std::vector<OElt> unflatten(const LocalField& k, const std::vector<WElt>& v, int d) {
  std::vector<OElt> b(d, k.zero());
  for (int r = 0; r < d; ++r)
    for (int s = 0; s < k.e(); ++s) k.set_coeff(b[r], s, v[r * k.e() + s]);
  return b;
}

// a * Pi modulo the monic relative polynomial g (degree d).
std::vector<OElt> times_pi(const LocalField& k, const std::vector<OElt>& a, const std::vector<OElt>& g) {
  const int d = static_cast<int>(a.size());
  std::vector<OElt> r(d, k.zero());
  for (int j = 1; j < d; ++j) r[j] = a[j - 1];
  for (int j = 0; j < d; ++j) r[j] = k.sub(r[j], k.mul(a[d - 1], g[j]));
  return r;
}

u64 mulmod(u64 a, u64 b, u64 m) { return static_cast<u64>(static_cast<u128>(a) * b % m); }

// Smallest t with u a g-th power in the degree-t extension of the residue field.
int unramified_degree_for_root(const ResidueField& rf, const ResidueField::Elt& u, int g) {
  const u64 q = rf.q();
  u64 ord = 1;
  {
    const u64 n = q - 1;
    std::vector<u64> primes;
    u64 t = n;
    for (u64 d = 2; d * d <= t; ++d)
      if (t % d == 0) {
        primes.push_back(d);
        while (t % d == 0) t /= d;
      }
    if (t > 1) primes.push_back(t);
    ord = n;
    for (u64 pr : primes)
      while (ord % pr == 0 && rf.pow(u, ord / pr) == rf.one()) ord /= pr;
  }
  for (int t = 1;; ++t) {
    const u64 m = static_cast<u64>(g) * ord;
    u64 qt = 1;
    for (int i = 0; i < t; ++i) qt = mulmod(qt, q % m, m);
    const u64 qm1 = (qt + m - 1) % m;  // q^t - 1 mod g*ord, divisible by g
    if ((qm1 / static_cast<u64>(g)) % ord == 0) return t;
  }
}

}  // namespace

int default_degree_cap() { return env_int("RAMLOCK_DEGREE_CAP", 16); }
int default_residue_cap() { return env_int("RAMLOCK_FMAX", 4); }

int relative_degree(const LocalField& k, const LocalField& ancestor) {
  require(descends_from(k, ancestor), ErrorKind::FieldMismatch, "not an ancestor");
  return k.degree() / ancestor.degree();
}

LocalField unramified_extend(const LocalField& k, int d, int cap, const std::string& kind) {
  require(d >= 1, ErrorKind::InvalidArgument, "extension degree must be positive");
  if (d == 1) return k;
  check_cap(k.degree() * d, cap);
  const u64 p = k.p();
  const int f2 = k.f() * d;
  const int n = k.digits();
  // Embed W(k) into the bigger unramified ring through a root of its modulus.
  const LocalField u = LocalField::unramified(p, f2, std::min(n, LocalField::max_prec(p, 1)));
  std::vector<i64> h;
  for (u64 c : k.data().unram) h.push_back(static_cast<i64>(c));
  const auto roots = root_find(u, poly_from_ints(u, h));
  require(!roots.empty(), ErrorKind::Internal, "residue modulus does not split");
  const WElt omega = u.coeff(roots.front().integral(), 0);
  require(u.digits() >= n, ErrorKind::PrecisionExhausted, "unramified embedding lacks digits");

  // Coefficients of the Eisenstein polynomial of k, evaluated at omega.
  const auto eval_w = [&](const WElt& w) {
    WElt acc = u.w_zero();
    for (int i = k.f() - 1; i >= 0; --i) {
      acc = u.w_mul(acc, omega);
      acc = u.w_add(acc, u.w_from_int(static_cast<i64>(w[i])));
    }
    return acc;
  };
  std::vector<WElt> eis, over_p;
  for (int j = 0; j < k.e(); ++j) {
    eis.push_back(eval_w(k.data().eis[j]));
    over_p.push_back(u.w_neg(eval_w(k.coeff(k.data().eta, j))));
  }

  Provenance prov;
  prov.kind = kind;
  prov.parent = k.handle();
  prov.step_degree = d;
  prov.step_ramification = 1;
  LocalField L = LocalField::from_w_coefficients(p, f2, eis, over_p, k.prec(), n, prov);
  auto data = std::make_shared<FieldData>(L.data());
  data->prov.pi_image = L.uniformizer();
  data->prov.gen_image = L.from_w(reduce(omega, L.zmod()));
  return LocalField(data);
}

LocalField ramified_step(const LocalField& k, const OPoly& h, int absprec, int s,
                         const std::string& kind, int cap) {
  const int d = static_cast<int>(h.size()) - 1;
  require(d >= 1 && s >= 1 && std::gcd(s, d) == 1, ErrorKind::InvalidArgument,
          "ramified step needs a root valuation coprime to the degree");
  if (d == 1) return k;
  check_cap(k.degree() * d, cap);
  const OkRing ok{k};
  const int ek = k.e();

  // Pi = g^a / pi^c with a s - c d = 1.
  int a = 1;
  while ((a * s) % d != 1 % d) ++a;
  const int c = (a * s - 1) / d;

  Matrix<OElt> comp(d, std::vector<OElt>(d, k.zero()));
  for (int i = 1; i < d; ++i) comp[i][i - 1] = k.one();
  for (int i = 0; i < d; ++i) comp[i][d - 1] = k.neg(h[i]);
  Matrix<OElt> power = comp;
  for (int i = 1; i < a; ++i) power = mat_mul(ok, power, comp);
  const std::vector<OElt> chi = berkowitz(ok, power);

  std::vector<OElt> g(d + 1);
  for (int j = 0; j <= d; ++j) {
    const int shift = c * (d - j);
    require(k.val(chi[j]) >= shift, ErrorKind::Internal, "step polynomial has the wrong slopes");
    g[j] = k.div_by_pi(chi[j], shift);
  }
  const int rel_prec = std::min(absprec, k.capacity()) - c * d;
  require(rel_prec > 0, ErrorKind::PrecisionExhausted, "precision lost forming the uniformizer");
  require(k.val(k.truncate(g[0], rel_prec)) == 1, ErrorKind::Internal,
          "relative polynomial is not Eisenstein");

  // Multiplication by Pi on O_L over W, basis pi^s Pi^r.
  const int E = ek * d;
  const WRing wr{k};
  Matrix<WElt> t(E, std::vector<WElt>(E, k.w_zero()));
  for (int r = 0; r < d; ++r)
    for (int sd = 0; sd < ek; ++sd) {
      std::vector<OElt> v(d, k.zero());
      v[r] = k.mul_by_pi(k.one(), sd);
      const auto col = flatten(k, times_pi(k, v, g));
      for (int i = 0; i < E; ++i) t[i][r * ek + sd] = col[i];
    }
  const std::vector<WElt> f = berkowitz(wr, t);

  // f_j / p is known to one digit less than f_j.
  const int n_child = std::min(rel_prec / ek - 1, ZMod::max_digits(k.p()));
  const int prec_child = (n_child - kGuardDigits) * E;
  require(prec_child >= k.prec(), ErrorKind::PrecisionExhausted,
          "tower step cannot keep the working precision");

  // Powers of Pi in the basis pi^s Pi^r.
  Matrix<WElt> pm(E, std::vector<WElt>(E, k.w_zero()));
  {
    std::vector<WElt> v(E, k.w_zero());
    v[0] = k.w_from_int(1);
    for (int col = 0; col < E; ++col) {
      for (int i = 0; i < E; ++i) pm[i][col] = v[i];
      v = mat_vec(wr, t, v);
    }
  }
  std::vector<OElt> pik(d, k.zero());
  pik[0] = k.uniformizer();
  const std::vector<WElt> y = solve_unimodular(wr, pm, flatten(k, pik));

  Provenance prov;
  prov.kind = kind;
  prov.parent = k.handle();
  prov.step_degree = d;
  prov.step_ramification = d;
  prov.relative_poly = g;
  for (const auto& row : pm)
    for (const auto& w : row) prov.basis_change.push_back(w);
  std::vector<WElt> eis(f.begin(), f.end() - 1), over_p;
  for (const auto& w : eis) {
    require(k.w_val(w) >= 1, ErrorKind::Internal, "absolute polynomial is not Eisenstein");
    WElt q = w;
    for (auto& x : q) x /= k.p();
    over_p.push_back(q);
  }
  LocalField L = LocalField::from_w_coefficients(k.p(), k.f(), eis, over_p, prec_child, n_child, prov);
  auto data = std::make_shared<FieldData>(L.data());
  OElt img = L.zero();
  for (int i = 0; i < E; ++i) L.set_coeff(img, i, reduce(y[i], L.zmod()));
  data->prov.pi_image = img;
  data->prov.gen_image = L.unram_gen();
  const LocalField out(data);
  require(out.val(out.data().prov.pi_image) == d, ErrorKind::Internal,
          "uniformizer image has the wrong valuation");
  return out;
}

KummerClass kummer_class(const LocalField& k, const FieldElement& x) {
  require(!x.is_zero(), ErrorKind::InvalidArgument, "Kummer class of zero");
  const i64 p = static_cast<i64>(k.p());
  const int e = k.e();
  KummerClass out;
  const int v = x.val();
  const int vm = static_cast<int>(((v % p) + p) % p);
  if (vm != 0) {
    int a = 1;
    while ((a * vm) % p != 1) ++a;
    const i64 b = (1 - static_cast<i64>(a) * v) / p;
    out.type = KummerClass::Type::Valuation;
    out.rep = x.pow(a).mul_pi_power(static_cast<int>(p * b));
    return out;
  }
  const ResidueField& rf = k.residue_field();
  FieldElement y = x.mul_pi_power(-v).pow(static_cast<i64>(k.q() - 1));
  const FieldElement one = FieldElement::one(k);
  // phi(b) = b^p + eps b on the residue field, for the boundary level.
  const ResidueField::Elt eps = k.residue(k.data().eta_inv);
  for (;;) {
    const FieldElement diff = y - one;
    if (diff.is_zero()) {
      require(diff.absprec() * (p - 1) > static_cast<i64>(p) * e, ErrorKind::PrecisionExhausted,
              "unit class undecided at working precision");
      out.type = KummerClass::Type::PthPower;
      return out;
    }
    const int i = diff.val();
    const i64 lhs = static_cast<i64>(i) * (p - 1), rhs = p * e;
    if (lhs > rhs) {
      out.type = KummerClass::Type::PthPower;
      return out;
    }
    const ResidueField::Elt abar = k.residue(diff.unit());
    if (lhs == rhs) {
      const int e0 = e / static_cast<int>(p - 1);
      std::optional<ResidueField::Elt> pre;
      for (u64 idx = 0; idx < rf.q() && !pre; ++idx) {
        const auto b = rf.from_index(idx);
        if (rf.add(rf.pow(b, k.p()), rf.mul(eps, b)) == abar) pre = b;
      }
      if (!pre) {
        out.type = KummerClass::Type::Unramified;
        out.level = i;
        out.rep = y;
        return out;
      }
      const FieldElement corr =
          one + FieldElement(k, k.lift_residue(*pre)).mul_pi_power(e0);
      y = y / corr.pow(p);
      continue;
    }
    if (i % p == 0) {
      const FieldElement corr =
          one + FieldElement(k, k.lift_residue(rf.frobenius_inverse(abar))).mul_pi_power(i / static_cast<int>(p));
      y = y / corr.pow(p);
      continue;
    }
    out.type = KummerClass::Type::UnitLevel;
    out.level = i;
    out.rep = y;
    return out;
  }
}

LocalField kummer_extend(const LocalField& k, const FieldElement& x, int cap) {
  const KummerClass cls = kummer_class(k, x);
  const u64 p = k.p();
  switch (cls.type) {
    case KummerClass::Type::PthPower:
      fail(ErrorKind::InvalidArgument, "element is a p-th power");
    case KummerClass::Type::Unramified:
      return unramified_extend(k, static_cast<int>(p), cap, "kummer");
    case KummerClass::Type::Valuation: {
      OPoly h(p + 1, k.zero());
      h[0] = k.neg(cls.rep.integral());
      h[p] = k.one();
      return ramified_step(k, h, cls.rep.absprec(), 1, "kummer", cap);
    }
    case KummerClass::Type::UnitLevel: {
      // (1 + w)^p - rep
      OPoly h(p + 1, k.zero());
      i64 binom = 1;
      for (u64 j = 1; j <= p; ++j) {
        binom = binom * static_cast<i64>(p - j + 1) / static_cast<i64>(j);
        h[j] = k.from_int(binom);
      }
      h[0] = k.sub(k.one(), cls.rep.integral());
      return ramified_step(k, h, cls.rep.absprec(), cls.level, "kummer", cap);
    }
  }
  fail(ErrorKind::Internal, "unreachable Kummer case");
}

std::optional<FieldElement> root_of_unity(const LocalField& k, int j) {
  require(j >= 1, ErrorKind::InvalidArgument, "root of unity level must be positive");
  const u64 p = k.p();
  const auto first = root_find(k, poly_from_ints(k, std::vector<i64>(p, 1)));
  if (first.empty()) return std::nullopt;
  FieldElement z = first.front();
  for (int level = 2; level <= j; ++level) {
    Poly h(p + 1, FieldElement::zero(k));
    h[0] = -z;
    h[p] = FieldElement::one(k);
    const auto r = root_find(k, h);
    if (r.empty()) return std::nullopt;
    z = r.front();
  }
  return z;
}

LocalField cyclotomic_extend(const LocalField& k, int m, int cap) {
  require(m >= 1, ErrorKind::InvalidArgument, "cyclotomic level must be at least 1");
  const u64 p = k.p();
  const int ip = static_cast<int>(p);
  LocalField cur = k;
  int have = 0;
  std::optional<FieldElement> z = root_of_unity(k, 1);
  if (z) {
    have = 1;
    while (have < m) {
      auto next = root_of_unity(k, have + 1);
      if (!next) break;
      ++have;
    }
  } else {
    // k(zeta_p) = k(beta) with beta^{p-1} = -p = pi^e * (-p / pi^e).
    const int e = k.e();
    const int g = std::gcd(e, ip - 1);
    const int d = (ip - 1) / g;
    const int eprime = e / g;
    const OElt u = k.neg(k.data().eta_inv);
    const int t = unramified_degree_for_root(k.residue_field(), k.residue(u), g);
    check_cap(k.degree() * t * d, cap);
    LocalField k1 = unramified_extend(k, t, cap, "cyclotomic");
    const FieldElement u1 = embed(FieldElement(k, u), k1);
    Poly hg(g + 1, FieldElement::zero(k1));
    hg[0] = -u1;
    hg[g] = FieldElement::one(k1);
    const auto gam = root_find(k1, hg);
    require(!gam.empty(), ErrorKind::Internal, "no g-th root in the unramified extension");
    if (d > 1) {
      OPoly h(d + 1, k1.zero());
      const FieldElement c0 = gam.front().mul_pi_power(eprime);
      h[0] = k1.neg(c0.integral());
      h[d] = k1.one();
      cur = ramified_step(k1, h, c0.absprec(), eprime, "cyclotomic", cap);
    } else {
      cur = k1;
    }
    have = 1;
  }
  for (int j = have + 1; j <= m; ++j) {
    check_cap(cur.degree() * ip, cap);
    const auto zeta = root_of_unity(cur, j - 1);
    require(zeta.has_value(), ErrorKind::Internal, "lost a root of unity in the tower");
    if (root_of_unity(cur, j)) continue;
    cur = kummer_extend(cur, *zeta, cap);
  }
  if (!cur.same(k)) {
    auto data = std::make_shared<FieldData>(cur.data());
    data->prov.kind = "cyclotomic";
    data->prov.cyclotomic_level = m;
    cur = LocalField(data);
  }
  return cur;
}

FieldElement relative_norm(const LocalField& L, const FieldElement& a) {
  require(a.field().same(L), ErrorKind::FieldMismatch, "norm of an element of another field");
  const Provenance& pv = L.provenance();
  require(!pv.relative_poly.empty(), ErrorKind::InvalidArgument,
          "relative norm needs a totally ramified step");
  const LocalField k(pv.parent);
  const int d = static_cast<int>(pv.relative_poly.size()) - 1;
  const int E = L.e();
  const OkRing ok{k};
  const WRing wr{k};
  const std::vector<OElt>& g = pv.relative_poly;
  const FieldElement norm_pi = FieldElement(k, (d % 2 == 0) ? g[0] : k.neg(g[0]));
  if (a.is_zero()) return FieldElement::zero(k, a.absprec() / d);

  Matrix<WElt> pm(E, std::vector<WElt>(E));
  for (int i = 0; i < E; ++i)
    for (int j = 0; j < E; ++j) pm[i][j] = pv.basis_change[i * E + j];
  std::vector<WElt> yv(E);
  for (int t = 0; t < E; ++t) yv[t] = L.coeff(a.unit(), t);
  const std::vector<OElt> b = unflatten(k, mat_vec(wr, pm, yv), d);

  Matrix<OElt> mat(d, std::vector<OElt>(d, k.zero()));
  std::vector<OElt> col = b;
  for (int r = 0; r < d; ++r) {
    for (int i = 0; i < d; ++i) mat[i][r] = col[i];
    col = times_pi(k, col, g);
  }
  const std::vector<OElt> chi = berkowitz(ok, mat);
  const OElt det = (d % 2 == 0) ? chi[0] : k.neg(chi[0]);
  const int rel = std::min(a.relprec() / d, k.e() * L.digits());
  FieldElement nu(k, det, std::max(rel, 1));
  nu = nu.with_relprec(rel);
  return nu * norm_pi.pow(a.val());
}

}  // namespace ramlock
