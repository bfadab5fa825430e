#include "ramlock/unit_symbols.hpp"

#include <algorithm>
#include <string>

#include "ramlock/invariants.hpp"
#include "ramlock/poly.hpp"

namespace ramlock {

namespace {

u64 mod_p(i64 v, u64 p) {
  const i64 m = v % static_cast<i64>(p);
  return static_cast<u64>(m < 0 ? m + static_cast<i64>(p) : m);
}

/// 1 + lift(r) pi^i.
FieldElement one_plus(const LocalField& k, const ResidueField::Elt& r, int i) {
  return FieldElement::one(k) + FieldElement(k, k.lift_residue(r)).mul_pi_power(i);
}

ResidueField::Elt unit_vector(const ResidueField& rf, int b) {
  ResidueField::Elt r = rf.zero();
  r[b] = 1;
  return r;
}

/// Unit levels 1 <= i with i (p - 1) < p e and p not dividing i.
std::vector<int> jump_levels(u64 p, int e) {
  std::vector<int> out;
  for (int i = 1; static_cast<i64>(i) * static_cast<i64>(p - 1) < static_cast<i64>(p) * e; ++i)
    if (i % static_cast<i64>(p) != 0) out.push_back(i);
  return out;
}

int boundary_level(u64 p, int e) {
  return e % static_cast<int>(p - 1) == 0 ? static_cast<int>(p) * e / static_cast<int>(p - 1) : 0;
}

}  // namespace

MulModPSpace MulModPSpace::build(const LocalField& k) {
  MulModPSpace s;
  s.k_ = k;
  const u64 p = k.p();
  const ResidueField& rf = k.residue_field();
  s.basis_.push_back({0, FieldElement::uniformizer(k), false});
  for (int i : jump_levels(p, k.e()))
    for (int b = 0; b < k.f(); ++b) s.basis_.push_back({i, one_plus(k, unit_vector(rf, b), i), false});
  s.boundary_ = boundary_level(p, k.e());
  if (s.boundary_ > 0) {
    const ResidueField::Elt eps = k.residue(k.data().eta_inv);
    s.phi_preimage_.assign(rf.q(), -1);
    for (u64 idx = 0; idx < rf.q(); ++idx) {
      const auto b = rf.from_index(idx);
      const u64 img = rf.to_index(rf.add(rf.pow(b, p), rf.mul(eps, b)));
      if (s.phi_preimage_[img] < 0) s.phi_preimage_[img] = static_cast<i64>(idx);
    }
    for (u64 idx = 0; idx < rf.q(); ++idx) {
      if (s.phi_preimage_[idx] >= 0) continue;
      s.delta_ = 1;
      s.extra_residue_ = rf.from_index(idx);
      s.basis_.push_back({s.boundary_, one_plus(k, s.extra_residue_, s.boundary_), true});
      break;
    }
  }
  s.top_ = s.basis_.back().level;
  for (const auto& b : s.basis_) s.basis_inv_.push_back(b.rep.inv());
  return s;
}

FpVec MulModPSpace::coords(const FieldElement& x) const {
  require(x.field().same(k_), ErrorKind::FieldMismatch, "element of another field");
  require(!x.is_zero(), ErrorKind::InvalidArgument, "class of zero in k^x/p");
  const u64 p = k_.p();
  const int f = k_.f();
  const int e = k_.e();
  const ResidueField& rf = k_.residue_field();
  FpVec out(basis_.size(), 0);
  out[0] = mod_p(x.val(), p);

  FpVec unit(basis_.size(), 0);
  // y = u^{q-1} has the class of u^{-1}.
  FieldElement y = x.mul_pi_power(-x.val()).pow(static_cast<i64>(k_.q() - 1));
  const FieldElement one = FieldElement::one(k_);
  const std::vector<int> levels = jump_levels(p, e);
  for (;;) {
    const FieldElement diff = y - one;
    if (diff.is_zero()) {
      require(static_cast<i64>(diff.absprec()) * static_cast<i64>(p - 1) > static_cast<i64>(p) * e,
              ErrorKind::PrecisionExhausted, "unit class undecided at working precision");
      break;
    }
    const int i = diff.val();
    if (static_cast<i64>(i) * static_cast<i64>(p - 1) > static_cast<i64>(p) * e) break;
    const ResidueField::Elt abar = k_.residue(diff.unit());
    if (i == boundary_) {
      const int e0 = boundary_ / static_cast<int>(p);
      bool done = false;
      for (u64 lam = 0; lam < p && !done; ++lam) {
        const auto target = delta_ ? rf.sub(abar, rf.scale(extra_residue_, lam)) : abar;
        const i64 pre = phi_preimage_[rf.to_index(target)];
        if (pre < 0) continue;
        y = y / one_plus(k_, rf.from_index(static_cast<u64>(pre)), e0).pow(static_cast<i64>(p));
        if (lam > 0) {
          y = y * basis_inv_.back().pow(static_cast<i64>(lam));
          unit.back() = lam;
        }
        done = true;
      }
      require(done, ErrorKind::Internal, "boundary residue outside the expected cokernel");
      continue;
    }
    if (i % static_cast<i64>(p) == 0) {
      const auto b = rf.frobenius_inverse(abar);
      y = y / one_plus(k_, b, i / static_cast<int>(p)).pow(static_cast<i64>(p));
      continue;
    }
    const size_t slot = std::lower_bound(levels.begin(), levels.end(), i) - levels.begin();
    for (int b = 0; b < f; ++b) {
      if (abar[b] == 0) continue;
      const size_t idx = 1 + slot * f + b;
      y = y * basis_inv_[idx].pow(static_cast<i64>(abar[b]));
      unit[idx] = abar[b];
    }
  }
  for (size_t j = 1; j < out.size(); ++j) out[j] = (p - unit[j]) % p;
  return out;
}

std::vector<int> MulModPSpace::filtration_indices(int i) const {
  std::vector<int> out;
  for (int j = 1; j < dim(); ++j)
    if (basis_[j].level >= i) out.push_back(j);
  return out;
}

FieldElement MulModPSpace::element(const FpVec& c) const {
  FieldElement r = FieldElement::one(k_);
  for (size_t j = 0; j < basis_.size() && j < c.size(); ++j)
    if (c[j] % k_.p() != 0) r = r * basis_[j].rep.pow(static_cast<i64>(c[j] % k_.p()));
  return r;
}

bool is_pth_power_by_roots(const LocalField& k, const FieldElement& a) {
  require(!a.is_zero(), ErrorKind::InvalidArgument, "p-th power test of zero");
  Poly h(k.p() + 1, FieldElement::zero(k));
  h[0] = -a;
  h[k.p()] = FieldElement::one(k);
  return !root_find(k, h).empty();
}

std::optional<int> filtration_level(const MulModPSpace& s, const FieldElement& x) {
  require(!x.is_zero() && x.val() == 0, ErrorKind::NotAUnit, "filtration level of a non-unit");
  const FpVec c = s.coords(x);
  std::optional<int> level;
  for (int j = 1; j < s.dim(); ++j)
    if (c[j] != 0 && (!level || s.basis()[j].level < *level)) level = s.basis()[j].level;
  return level;
}

}  // namespace ramlock

namespace ramlock {

namespace {

/// Generators of L^x / p: the uniformizer and 1 + x^b Pi^i for every level
/// i <= p e_0(L) not divisible by p, plus all residues at the boundary.
std::vector<FieldElement> kummer_field_generators(const LocalField& L) {
  const u64 p = L.p();
  const ResidueField& rf = L.residue_field();
  std::vector<FieldElement> out{FieldElement::uniformizer(L)};
  std::vector<int> levels = jump_levels(p, L.e());
  if (const int bd = boundary_level(p, L.e()); bd > 0) levels.push_back(bd);
  for (int i : levels)
    for (int b = 0; b < L.f(); ++b) out.push_back(one_plus(L, unit_vector(rf, b), i));
  return out;
}

}  // namespace

FpVec norm_functional(const MulModPSpace& s, const FieldElement& x, int cap) {
  const LocalField& k = s.field();
  const KummerClass cls = kummer_class(k, x);
  FpVec psi(s.dim(), 0);
  if (cls.type == KummerClass::Type::PthPower) return psi;
  if (cls.type == KummerClass::Type::Unramified) {
    psi[0] = 1;
    return psi;
  }
  const LocalField L = kummer_extend(k, x, cap);
  FpMat rows;
  for (const FieldElement& g : kummer_field_generators(L)) rows.push_back(s.coords(relative_norm(L, g)));
  const FpMat ker = fp::nullspace(rows, s.dim(), k.p());
  require(ker.size() == 1, ErrorKind::PrecisionExhausted,
          "norm group of a degree-p extension not of index p at working precision");
  return ker.front();
}

HilbertPairing HilbertPairing::build(const LocalField& k, int cap) {
  HilbertPairing h;
  h.s_ = MulModPSpace::build(k);
  h.cap_ = cap;
  require(h.s_.delta() == 1, ErrorKind::NoPthRoots, "the p-th roots of unity are not in the field");
  const auto z = root_of_unity(k, 1);
  require(z.has_value(), ErrorKind::Internal, "no primitive p-th root of unity found");
  h.zeta_ = *z;
  const u64 p = k.p();
  const int n = h.s_.dim();
  const auto& basis = h.s_.basis();

  // psi_c spans the functionals (., b_c); lambda_c fixes the scalar via bilinearity in b_0 b_c.
  std::vector<FpVec> psi(n);
  for (int c = 0; c < n; ++c) psi[c] = norm_functional(h.s_, basis[c].rep, cap);
  std::vector<u64> lambda(n, 0);
  lambda[0] = 1;
  for (int c = 1; c < n; ++c) {
    const FpVec mixed = norm_functional(h.s_, basis[0].rep * basis[c].rep, cap);
    FpMat a(n, FpVec(2));
    for (int r = 0; r < n; ++r) {
      a[r][0] = mixed[r];
      a[r][1] = (p - psi[c][r]) % p;
    }
    const auto sol = fp::solve(a, psi[0], p);
    require(sol.has_value() && (*sol)[1] != 0, ErrorKind::Internal, "symbol calibration is inconsistent");
    lambda[c] = (*sol)[1];
  }
  h.table_.assign(n, FpVec(n, 0));
  for (int a = 0; a < n; ++a)
    for (int c = 0; c < n; ++c) h.table_[a][c] = lambda[c] * psi[c][a] % p;
  // Normalise (pi, extra class) = 1.
  const u64 pivot = h.table_[0][n - 1];
  require(pivot != 0, ErrorKind::Internal, "uniformizer pairs trivially with the extra class");
  const u64 scale = invmod_small(pivot, p);
  for (auto& row : h.table_)
    for (auto& v : row) v = v * scale % p;
  return h;
}

u64 HilbertPairing::value_coords(const FpVec& a, const FpVec& b) const {
  const u64 p = s_.field().p();
  u64 acc = 0;
  for (size_t i = 0; i < a.size(); ++i) {
    if (a[i] == 0) continue;
    acc = (acc + a[i] * fp::dot(table_[i], b, p)) % p;
  }
  return acc;
}

u64 HilbertPairing::value(const FieldElement& a, const FieldElement& b) const {
  return value_coords(s_.coords(a), s_.coords(b));
}

Json HilbertPairing::to_json() const {
  Json j;
  j["field"] = field_to_json(s_.field());
  j["zeta_choice"] = element_to_json(zeta_);
  Json t = Json::array();
  for (const auto& row : table_) t.push_back(row);
  j["table"] = t;
  return j;
}

u64 hilbert_symbol(const HilbertPairing& h, const FieldElement& a, const FieldElement& b) {
  const MulModPSpace& s = h.space();
  const u64 p = s.field().p();
  require(!a.is_zero() && !b.is_zero(), ErrorKind::InvalidArgument, "Hilbert symbol of zero");
  const FpVec cb = s.coords(b);
  if (fp::is_zero(cb)) return 0;
  const FpVec psi = norm_functional(s, b, h.cap());
  FpVec col(s.dim(), 0);
  for (int i = 0; i < s.dim(); ++i) col[i] = fp::dot(h.table()[i], cb, p);
  // col must be a nonzero multiple of psi.
  int piv = 0;
  while (piv < s.dim() && psi[piv] == 0) ++piv;
  require(piv < s.dim(), ErrorKind::Internal, "empty norm functional");
  const u64 lam = col[piv] * invmod_small(psi[piv], p) % p;
  for (int i = 0; i < s.dim(); ++i)
    require(col[i] == lam * psi[i] % p, ErrorKind::Internal, "norm group disagrees with the symbol table");
  require(lam != 0, ErrorKind::Internal, "symbol table degenerate");
  return fp::dot(s.coords(a), col, p);
}

PairingOrder filtration_pairing_order(const HilbertPairing& h, int i, int j) {
  const MulModPSpace& s = h.space();
  const LocalField& k = s.field();
  const u64 p = k.p();
  require(i >= 1 && j >= 1, ErrorKind::InvalidArgument, "filtration levels must be positive");
  require(i % static_cast<i64>(p) != 0 || j % static_cast<i64>(p) != 0, ErrorKind::BothDivisible,
          "both levels divisible by p");
  PairingOrder out;
  for (int a : s.filtration_indices(i))
    for (int c : s.filtration_indices(j))
      if (h.table()[a][c] != 0) out.computed = p;
  const int pe0 = boundary_level(p, k.e());
  out.formula = (i + j <= pe0) ? p : 1;
  return out;
}

KummerRootLevel kummer_root_level(const LocalField& k, const FieldElement& x, int cap) {
  const MulModPSpace s = MulModPSpace::build(k);
  require(s.delta() == 1, ErrorKind::NoPthRoots, "the p-th roots of unity are not in the field");
  const u64 p = k.p();
  require(!x.is_zero() && x.val() == 0, ErrorKind::HypothesisViolated, "x must be a unit");
  const auto level = filtration_level(s, x);
  require(level.has_value(), ErrorKind::HypothesisViolated, "x is a p-th power");
  const int pe0 = boundary_level(p, k.e());
  require(*level < pe0 && *level % static_cast<i64>(p) != 0, ErrorKind::HypothesisViolated,
          "level must be prime to p and below p e_0, got " + std::to_string(*level));
  KummerRootLevel out;
  out.expected = *level;
  // Root of a representative with v(x - 1) equal to the level.
  FieldElement rep = x;
  if ((x - FieldElement::one(k)).val() != *level) {
    rep = s.element(s.coords(x));
    out.reduced = true;
  }
  out.field = kummer_extend(k, rep, cap);
  Poly g(p + 1, FieldElement::zero(out.field));
  g[0] = -embed(rep, out.field);
  g[p] = FieldElement::one(out.field);
  const auto roots = root_find(out.field, g);
  require(!roots.empty(), ErrorKind::Internal, "no p-th root of x in k(x^{1/p})");
  const auto xi_level = filtration_level(MulModPSpace::build(out.field), roots.front());
  out.level = xi_level.value_or(0);
  return out;
}

SymbolGenerators symbol_generators_mod_p(const HilbertPairing& h, std::pair<int, int> levels) {
  const MulModPSpace& s = h.space();
  const LocalField& k = s.field();
  const auto [a, b] = levels;
  require(a >= 1 && b >= 1, ErrorKind::HypothesisViolated,
          "filtration levels must be positive (t_0 >= 1 and t_0 < e_0)");
  SymbolGenerators out;
  out.M = invariant_M(k, 64).value;
  const auto zeta = root_of_unity(k, out.M);
  require(zeta.has_value(), ErrorKind::Internal, "root of unity of order p^M not found");
  const auto zl = filtration_level(s, *zeta);
  require(zl.has_value(), ErrorKind::Internal, "zeta_{p^M} is a p-th power");
  out.zeta_level = *zl;
  const int bound = std::min(a, b);
  if (out.zeta_level > bound) {
    out.blocking = "i <= min{p t_0, p(e_0 - t_0)} fails: i = " + std::to_string(out.zeta_level) +
                   ", min{" + std::to_string(a) + ", " + std::to_string(b) + "} = " + std::to_string(bound);
    return out;
  }
  const FpVec cz = s.coords(*zeta);
  auto search = [&](int level) -> std::optional<SymbolWitness> {
    for (int idx : s.filtration_indices(level)) {
      FpVec e(s.dim(), 0);
      e[idx] = 1;
      const u64 v = h.value_coords(e, cz);
      if (v != 0) return SymbolWitness{s.basis()[idx].rep, *zeta, s.basis()[idx].level, v};
    }
    return std::nullopt;
  };
  out.first = search(b);
  out.second = search(a);
  out.found = out.first.has_value() && out.second.has_value();
  if (!out.found)
    out.blocking = "no unit at level " + std::to_string(out.first ? a : b) +
                   " pairs nontrivially with zeta_{p^M}";
  return out;
}

}  // namespace ramlock
