#include "ramlock/local_field.hpp"

#include <algorithm>
#include <string>

namespace ramlock {

namespace {

std::shared_ptr<FieldData> build(u64 p, int f, FpPoly unram, std::vector<WElt> eis_mod,
                                 std::vector<WElt> eis_over_p, int prec, Provenance prov) {
  auto d = std::make_shared<FieldData>();
  d->p = p;
  d->f = f;
  d->e = static_cast<int>(eis_mod.size());
  d->prec = prec;
  d->n = LocalField::digits_for(p, d->e, prec);
  d->z = ZMod(p, d->n);
  d->unram = unram;
  d->res = ResidueField(p, unram);
  for (auto& w : eis_mod)
    for (auto& c : w) c %= d->z.mod;
  for (auto& w : eis_over_p)
    for (auto& c : w) c %= d->z.mod;
  d->eis = std::move(eis_mod);
  d->prov = std::move(prov);

  LocalField k(d);
  OElt eta = k.zero();
  for (int j = 0; j < d->e; ++j) k.set_coeff(eta, j, k.w_neg(eis_over_p[j]));
  d->eta = eta;
  d->eta_inv = k.inv(eta);
  d->pi_em1_eta_inv = k.mul(k.pow(k.uniformizer(), d->e - 1), d->eta_inv);
  return d;
}

}  // namespace

int LocalField::digits_for(u64 p, int e, int prec) {
  (void)p;
  return (prec + e - 1) / e + kGuardDigits;
}

int LocalField::max_prec(u64 p, int e) { return (ZMod::max_digits(p) - kGuardDigits) * e; }

LocalField LocalField::make(u64 p, int f, const std::vector<std::vector<i64>>& eisenstein,
                            int prec) {
  require(p != 2, ErrorKind::EvenPrime, "p = 2 is not supported");
  require(is_prime(p), ErrorKind::InvalidArgument, "p = " + std::to_string(p) + " is not prime");
  require(f >= 1, ErrorKind::InvalidArgument, "residue degree must be positive");
  require(prec >= 1, ErrorKind::InvalidArgument, "precision must be positive");
  require(eisenstein.size() >= 2, ErrorKind::NonEisenstein, "Eisenstein polynomial needs degree >= 1");
  const int e = static_cast<int>(eisenstein.size()) - 1;
  const auto& lead = eisenstein.back();
  bool lead_one = !lead.empty() && lead[0] == 1;
  for (size_t i = 1; i < lead.size(); ++i) lead_one = lead_one && lead[i] == 0;
  require(lead_one, ErrorKind::NonEisenstein, "Eisenstein polynomial must be monic");

  const int n = digits_for(p, e, prec);
  require(n <= ZMod::max_digits(p), ErrorKind::PrecisionExhausted,
          "precision " + std::to_string(prec) + " exceeds the residue budget for p = " +
              std::to_string(p));
  const ZMod zbig(p, n);
  const FpPoly unram = fppoly::canonical_irreducible(f, p);

  std::vector<WElt> eis_mod(e), eis_over_p(e);
  const i64 ip = static_cast<i64>(p);
  for (int j = 0; j < e; ++j) {
    const auto& c = eisenstein[j];
    require(static_cast<int>(c.size()) <= f, ErrorKind::InvalidArgument,
            "coefficient has more than f entries");
    eis_mod[j] = WElt(f, 0);
    eis_over_p[j] = WElt(f, 0);
    bool unit_mod_p = false;
    for (int i = 0; i < static_cast<int>(c.size()); ++i) {
      require(c[i] % ip == 0, ErrorKind::NonEisenstein,
              "coefficient of X^" + std::to_string(j) + " is not divisible by p");
      eis_mod[j][i] = zbig.from_signed(c[i]);
      eis_over_p[j][i] = zbig.from_signed(c[i] / ip);
      if ((c[i] / ip) % ip != 0) unit_mod_p = true;
    }
    if (j == 0)
      require(unit_mod_p, ErrorKind::NonEisenstein, "constant term is divisible by p^2");
  }
  return LocalField(build(p, f, unram, eis_mod, eis_over_p, prec, Provenance{}));
}

LocalField LocalField::make(u64 p, int f, const std::vector<i64>& eisenstein, int prec) {
  std::vector<std::vector<i64>> wrapped;
  for (i64 c : eisenstein) wrapped.push_back({c});
  return make(p, f, wrapped, prec);
}

LocalField LocalField::unramified(u64 p, int f, int prec) {
  return make(p, f, std::vector<i64>{-static_cast<i64>(p), 1}, prec);
}

LocalField LocalField::from_w_coefficients(u64 p, int f, const std::vector<WElt>& eis,
                                           const std::vector<WElt>& eis_over_p, int prec,
                                           int available_digits, Provenance prov) {
  const int e = static_cast<int>(eis.size());
  const int n = digits_for(p, e, prec);
  require(n <= ZMod::max_digits(p), ErrorKind::PrecisionExhausted,
          "precision " + std::to_string(prec) + " exceeds the residue budget");
  require(available_digits >= n, ErrorKind::PrecisionExhausted,
          "defining polynomial known to too few digits");
  FpPoly unram = fppoly::canonical_irreducible(f, p);
  if (prov.parent && prov.parent->f == f) unram = prov.parent->unram;
  return LocalField(build(p, f, unram, eis, eis_over_p, prec, std::move(prov)));
}

std::optional<LocalField> LocalField::parent() const {
  if (!d_->prov.parent) return std::nullopt;
  return LocalField(d_->prov.parent);
}

// --- W

WElt LocalField::w_mul(const WElt& a, const WElt& b) const {
  const int f = d_->f;
  const ZMod& z = d_->z;
  if (f == 1) return WElt{z.mul(a[0], b[0])};
  std::vector<u64> prod(2 * f - 1, 0);
  for (int i = 0; i < f; ++i) {
    if (a[i] == 0) continue;
    for (int j = 0; j < f; ++j) prod[i + j] = z.add(prod[i + j], z.mul(a[i], b[j]));
  }
  for (int deg = 2 * f - 2; deg >= f; --deg) {
    const u64 c = prod[deg];
    if (c == 0) continue;
    for (int j = 0; j < f; ++j) prod[deg - f + j] = z.sub(prod[deg - f + j], z.mul(c, d_->unram[j]));
  }
  prod.resize(f);
  return prod;
}

WElt LocalField::w_add(const WElt& a, const WElt& b) const {
  WElt r(d_->f);
  for (int i = 0; i < d_->f; ++i) r[i] = d_->z.add(a[i], b[i]);
  return r;
}

WElt LocalField::w_sub(const WElt& a, const WElt& b) const {
  WElt r(d_->f);
  for (int i = 0; i < d_->f; ++i) r[i] = d_->z.sub(a[i], b[i]);
  return r;
}

WElt LocalField::w_neg(const WElt& a) const {
  WElt r(d_->f);
  for (int i = 0; i < d_->f; ++i) r[i] = d_->z.neg(a[i]);
  return r;
}

WElt LocalField::w_from_int(i64 v) const {
  WElt r = w_zero();
  r[0] = d_->z.from_signed(v);
  return r;
}

int LocalField::w_val(const WElt& a) const {
  int v = kInfVal;
  for (u64 c : a)
    if (c != 0) v = std::min(v, d_->z.val(c));
  return v;
}

bool LocalField::w_is_unit(const WElt& a) const { return w_val(a) == 0; }

WElt LocalField::w_inv(const WElt& a) const {
  const ResidueField& rf = d_->res;
  const ResidueField::Elt r = w_residue(a);
  require(!rf.is_zero(r), ErrorKind::NotAUnit, "inverse of a non-unit in W");
  ResidueField::Elt ri = rf.inv(r);
  WElt x(ri.begin(), ri.end());
  const WElt two = w_from_int(2);
  for (int digits = 1; digits < d_->n; digits *= 2) x = w_mul(x, w_sub(two, w_mul(a, x)));
  return x;
}

ResidueField::Elt LocalField::w_residue(const WElt& a) const {
  ResidueField::Elt r(d_->f);
  for (int i = 0; i < d_->f; ++i) r[i] = a[i] % d_->p;
  return r;
}

// --- O_k

OElt LocalField::one() const { return from_int(1); }

OElt LocalField::from_int(i64 v) const {
  OElt r = zero();
  r.c[0] = d_->z.from_signed(v);
  return r;
}

OElt LocalField::from_w(const WElt& w) const {
  OElt r = zero();
  set_coeff(r, 0, w);
  return r;
}

OElt LocalField::uniformizer() const {
  if (d_->e == 1) {
    // pi = -c_0 when e = 1.
    return from_w(w_neg(d_->eis[0]));
  }
  OElt r = zero();
  r.c[static_cast<size_t>(d_->f)] = 1;
  return r;
}

OElt LocalField::unram_gen() const {
  WElt w = w_zero();
  if (d_->f == 1) {
    w[0] = d_->z.neg(d_->unram[0] % d_->z.mod);
  } else {
    w[1] = 1;
  }
  return from_w(w);
}

OElt LocalField::lift_residue(const ResidueField::Elt& r) const {
  WElt w(r.begin(), r.end());
  return from_w(w);
}

WElt LocalField::coeff(const OElt& a, int j) const {
  const auto off = static_cast<size_t>(j * d_->f);
  return WElt(a.c.begin() + off, a.c.begin() + off + d_->f);
}

void LocalField::set_coeff(OElt& a, int j, const WElt& w) const {
  const auto off = static_cast<size_t>(j * d_->f);
  std::copy(w.begin(), w.end(), a.c.begin() + off);
}

OElt LocalField::add(const OElt& a, const OElt& b) const {
  OElt r = a;
  for (size_t i = 0; i < r.c.size(); ++i) r.c[i] = d_->z.add(a.c[i], b.c[i]);
  return r;
}

OElt LocalField::sub(const OElt& a, const OElt& b) const {
  OElt r = a;
  for (size_t i = 0; i < r.c.size(); ++i) r.c[i] = d_->z.sub(a.c[i], b.c[i]);
  return r;
}

OElt LocalField::neg(const OElt& a) const {
  OElt r = a;
  for (auto& c : r.c) c = d_->z.neg(c);
  return r;
}

OElt LocalField::mul(const OElt& a, const OElt& b) const {
  const int e = d_->e, f = d_->f;
  const ZMod& z = d_->z;
  if (e == 1 && f == 1) return OElt{{z.mul(a.c[0], b.c[0])}};
  // Product in pi-degree up to 2e-2, each coefficient an unreduced x-polynomial.
  const int xw = 2 * f - 1;
  std::vector<u64> acc(static_cast<size_t>((2 * e - 1) * xw), 0);
  for (int j1 = 0; j1 < e; ++j1)
    for (int i1 = 0; i1 < f; ++i1) {
      const u64 av = a.c[j1 * f + i1];
      if (av == 0) continue;
      for (int j2 = 0; j2 < e; ++j2)
        for (int i2 = 0; i2 < f; ++i2) {
          const u64 bv = b.c[j2 * f + i2];
          if (bv == 0) continue;
          u64& slot = acc[(j1 + j2) * xw + i1 + i2];
          slot = z.add(slot, z.mul(av, bv));
        }
    }
  std::vector<WElt> coeffs(2 * e - 1);
  for (int j = 0; j < 2 * e - 1; ++j) {
    std::vector<u64> poly(acc.begin() + j * xw, acc.begin() + (j + 1) * xw);
    for (int deg = 2 * f - 2; deg >= f; --deg) {
      const u64 c = poly[deg];
      if (c == 0) continue;
      for (int i = 0; i < f; ++i) poly[deg - f + i] = z.sub(poly[deg - f + i], z.mul(c, d_->unram[i]));
    }
    poly.resize(f);
    coeffs[j] = std::move(poly);
  }
  for (int deg = 2 * e - 2; deg >= e; --deg) {
    const WElt& top = coeffs[deg];
    if (std::all_of(top.begin(), top.end(), [](u64 c) { return c == 0; })) continue;
    for (int j = 0; j < e; ++j)
      coeffs[deg - e + j] = w_sub(coeffs[deg - e + j], w_mul(top, d_->eis[j]));
  }
  OElt r = zero();
  for (int j = 0; j < e; ++j) set_coeff(r, j, coeffs[j]);
  return r;
}

OElt LocalField::mul_w(const OElt& a, const WElt& w) const {
  OElt r = zero();
  for (int j = 0; j < d_->e; ++j) set_coeff(r, j, w_mul(coeff(a, j), w));
  return r;
}

OElt LocalField::pow(OElt a, u64 e) const {
  OElt r = one();
  while (e) {
    if (e & 1) r = mul(r, a);
    e >>= 1;
    if (e) a = mul(a, a);
  }
  return r;
}

OElt LocalField::mul_by_pi(const OElt& a, int times) const {
  if (times >= capacity()) return zero();
  const int e = d_->e;
  OElt r = a;
  if (e == 1) {
    const OElt pi = uniformizer();
    for (int t = 0; t < times; ++t) r = mul(r, pi);
    return r;
  }
  for (int t = 0; t < times; ++t) {
    const WElt top = coeff(r, e - 1);
    OElt s = zero();
    for (int j = e - 1; j >= 1; --j) set_coeff(s, j, coeff(r, j - 1));
    for (int j = 0; j < e; ++j) set_coeff(s, j, w_sub(coeff(s, j), w_mul(top, d_->eis[j])));
    r = std::move(s);
  }
  return r;
}

OElt LocalField::div_by_pi(const OElt& a, int t) const {
  const int e = d_->e;
  const u64 p = d_->p;
  OElt r = a;
  while (t >= e) {
    // a / pi^e = (a / p) * (p / pi^e)
    OElt q = r;
    for (auto& c : q.c) c /= p;
    r = mul(q, d_->eta_inv);
    t -= e;
  }
  for (; t > 0; --t) {
    WElt a0 = coeff(r, 0);
    for (auto& c : a0) c /= p;
    OElt s = zero();
    for (int j = 1; j < e; ++j) set_coeff(s, j - 1, coeff(r, j));
    r = add(s, mul_w(d_->pi_em1_eta_inv, a0));
  }
  return r;
}

OElt LocalField::inv(const OElt& a) const {
  const ResidueField& rf = d_->res;
  const ResidueField::Elt r = residue(a);
  require(!rf.is_zero(r), ErrorKind::NotAUnit, "inverse of a non-unit");
  OElt x = lift_residue(rf.inv(r));
  const OElt two = from_int(2);
  for (int digits = 1; digits < capacity(); digits *= 2) x = mul(x, sub(two, mul(a, x)));
  return x;
}

int LocalField::val(const OElt& a) const {
  int v = kInfVal;
  for (int j = 0; j < d_->e; ++j) {
    const int w = w_val(coeff(a, j));
    if (w < kInfVal) v = std::min(v, d_->e * w + j);
  }
  return v;
}

ResidueField::Elt LocalField::residue(const OElt& a) const { return w_residue(coeff(a, 0)); }

bool LocalField::congruent(const OElt& a, const OElt& b, int t) const {
  const int v = val(sub(a, b));
  return v >= t;
}

OElt LocalField::truncate(const OElt& a, int t) const {
  const int e = d_->e;
  OElt r = a;
  for (int j = 0; j < e; ++j) {
    const int k = t > j ? (t - j + e - 1) / e : 0;
    if (k >= d_->n) continue;
    const u64 m = ipow(d_->p, k);
    for (int i = 0; i < d_->f; ++i) r.c[j * d_->f + i] %= m;
  }
  return r;
}

// --- FieldElement

FieldElement::FieldElement(LocalField k, const OElt& a, int absprec) : k_(std::move(k)) {
  const int cap = k_.capacity();
  const int ap = absprec < 0 ? cap : std::min(absprec, cap);
  const int v = k_.val(a);
  if (v >= ap) {
    val_ = kInfVal;
    prec_ = ap;
    unit_ = k_.zero();
    return;
  }
  val_ = v;
  prec_ = ap - v;
  unit_ = k_.truncate(k_.div_by_pi(a, v), prec_);
}

FieldElement FieldElement::zero(const LocalField& k, int absprec) {
  FieldElement r;
  r.k_ = k;
  r.val_ = kInfVal;
  r.prec_ = absprec < 0 ? k.capacity() : absprec;
  r.unit_ = k.zero();
  return r;
}

FieldElement FieldElement::one(const LocalField& k) { return FieldElement(k, k.one()); }

FieldElement FieldElement::from_int(const LocalField& k, i64 v) {
  if (v == 0) return zero(k);
  return FieldElement(k, k.from_int(v));
}

FieldElement FieldElement::uniformizer(const LocalField& k) {
  return from_unit(k, 1, k.one(), k.capacity());
}

FieldElement FieldElement::from_unit(const LocalField& k, int val, const OElt& unit, int relprec) {
  require(k.is_unit(unit) || relprec <= 0, ErrorKind::NotAUnit, "from_unit needs a unit");
  FieldElement r;
  r.k_ = k;
  if (relprec <= 0) {
    r.val_ = kInfVal;
    r.prec_ = val;
    r.unit_ = k.zero();
    return r;
  }
  r.val_ = val;
  r.prec_ = std::min(relprec, k.capacity());
  r.unit_ = k.truncate(unit, r.prec_);
  return r;
}

OElt FieldElement::integral() const {
  if (is_zero()) return k_.zero();
  require(val_ >= 0, ErrorKind::InvalidArgument, "element is not integral");
  return k_.mul_by_pi(unit_, val_);
}

ResidueField::Elt FieldElement::residue() const {
  if (is_zero() || val_ > 0) return k_.residue_field().zero();
  require(val_ == 0, ErrorKind::InvalidArgument, "residue of a non-integral element");
  return k_.residue(unit_);
}

FieldElement FieldElement::operator-() const {
  FieldElement r = *this;
  if (!is_zero()) r.unit_ = k_.truncate(k_.neg(unit_), prec_);
  return r;
}

FieldElement FieldElement::inv() const {
  require(!is_zero(), ErrorKind::InvalidArgument, "division by zero");
  FieldElement r = *this;
  r.val_ = -val_;
  r.unit_ = k_.truncate(k_.inv(unit_), prec_);
  return r;
}

FieldElement FieldElement::pow(i64 e) const {
  if (e < 0) return inv().pow(-e);
  if (e == 0) return one(k_);
  if (is_zero()) {
    FieldElement r = *this;
    r.prec_ = prec_ > 0 ? prec_ * static_cast<int>(std::min<i64>(e, k_.capacity())) : prec_;
    r.prec_ = std::min(r.prec_, k_.capacity());
    return r;
  }
  FieldElement r = *this;
  r.val_ = static_cast<int>(val_ * e);
  r.unit_ = k_.truncate(k_.pow(unit_, static_cast<u64>(e)), prec_);
  return r;
}

FieldElement FieldElement::mul_pi_power(int t) const {
  FieldElement r = *this;
  if (is_zero())
    r.prec_ += t;
  else
    r.val_ += t;
  return r;
}

FieldElement FieldElement::with_relprec(int r) const {
  if (is_zero()) return *this;
  if (r >= prec_) return *this;
  if (r <= 0) return zero(k_, val_ + std::max(r, 0));
  FieldElement out = *this;
  out.prec_ = r;
  out.unit_ = k_.truncate(unit_, r);
  return out;
}

FieldElement operator*(const FieldElement& a, const FieldElement& b) {
  require(a.k_.same(b.k_), ErrorKind::FieldMismatch, "product of elements of different fields");
  const LocalField& k = a.k_;
  if (a.is_zero() || b.is_zero()) {
    int ap;
    if (a.is_zero() && b.is_zero())
      ap = a.prec_ + b.prec_;
    else if (a.is_zero())
      ap = a.prec_ + b.val_;
    else
      ap = b.prec_ + a.val_;
    return FieldElement::zero(k, ap);
  }
  FieldElement r;
  r.k_ = k;
  r.val_ = a.val_ + b.val_;
  r.prec_ = std::min(a.prec_, b.prec_);
  r.unit_ = k.truncate(k.mul(a.unit_, b.unit_), r.prec_);
  return r;
}

FieldElement operator/(const FieldElement& a, const FieldElement& b) { return a * b.inv(); }

FieldElement operator+(const FieldElement& a, const FieldElement& b) {
  require(a.k_.same(b.k_), ErrorKind::FieldMismatch, "sum of elements of different fields");
  const LocalField& k = a.k_;
  if (a.is_zero() || b.is_zero()) {
    const FieldElement& z = a.is_zero() ? a : b;
    const FieldElement& y = a.is_zero() ? b : a;
    if (y.is_zero()) return FieldElement::zero(k, std::min(a.prec_, b.prec_));
    if (y.val_ >= z.prec_) return FieldElement::zero(k, z.prec_);
    return y.with_relprec(std::min(y.prec_, z.prec_ - y.val_));
  }
  const FieldElement& x = a.val_ <= b.val_ ? a : b;
  const FieldElement& y = a.val_ <= b.val_ ? b : a;
  const int ap = std::min(x.absprec(), y.absprec());
  const int rel = ap - x.val_;
  const int d = y.val_ - x.val_;
  if (d >= rel) return x.with_relprec(rel);
  const OElt s = k.add(x.unit_, k.mul_by_pi(y.unit_, d));
  const int w = k.val(k.truncate(s, rel));
  if (w >= rel) return FieldElement::zero(k, ap);
  FieldElement r;
  r.k_ = k;
  r.val_ = x.val_ + w;
  r.prec_ = rel - w;
  r.unit_ = k.truncate(k.div_by_pi(s, w), r.prec_);
  return r;
}

FieldElement operator-(const FieldElement& a, const FieldElement& b) { return a + (-b); }

bool FieldElement::equals(const FieldElement& b) const {
  const FieldElement d = *this - b;
  if (d.is_zero()) return true;
  const int mv = std::min(val_, b.val_);
  const int target = std::min<long long>(static_cast<long long>(mv) + k_.prec(), kInfVal);
  return d.val_ >= target;
}

// --- embeddings

OElt embed_from_parent(const LocalField& child, const OElt& a) {
  const Provenance& pv = child.provenance();
  require(pv.parent != nullptr, ErrorKind::FieldMismatch, "field has no parent");
  const LocalField par(pv.parent);
  const ZMod& zc = child.zmod();
  std::vector<OElt> gpow(par.f());
  gpow[0] = child.one();
  for (int i = 1; i < par.f(); ++i) gpow[i] = child.mul(gpow[i - 1], pv.gen_image);
  OElt out = child.zero();
  OElt pipow = child.one();
  for (int j = 0; j < par.e(); ++j) {
    OElt w = child.zero();
    for (int i = 0; i < par.f(); ++i) {
      const u64 c = a.c[j * par.f() + i] % zc.mod;
      if (c == 0) continue;
      for (size_t t = 0; t < w.c.size(); ++t) w.c[t] = zc.add(w.c[t], zc.mul(c, gpow[i].c[t]));
    }
    out = child.add(out, child.mul(w, pipow));
    if (j + 1 < par.e()) pipow = child.mul(pipow, pv.pi_image);
  }
  return out;
}

bool descends_from(const LocalField& k, const LocalField& ancestor) {
  std::shared_ptr<const FieldData> cur = k.handle();
  while (cur) {
    if (cur == ancestor.handle()) return true;
    cur = cur->prov.parent;
  }
  return false;
}

int relative_ramification(const LocalField& k, const LocalField& ancestor) {
  require(descends_from(k, ancestor), ErrorKind::FieldMismatch, "not an ancestor");
  return k.e() / ancestor.e();
}

FieldElement embed(const FieldElement& x, const LocalField& to) {
  if (x.field().same(to)) return x;
  require(descends_from(to, x.field()), ErrorKind::FieldMismatch,
          "target field does not contain the source field");
  std::vector<LocalField> chain;
  for (LocalField cur = to; !cur.same(x.field()); cur = *cur.parent()) chain.push_back(cur);
  std::reverse(chain.begin(), chain.end());
  FieldElement cur = x;
  for (const auto& step : chain) {
    const int ram = step.provenance().step_ramification;
    if (cur.is_zero()) {
      cur = FieldElement::zero(step, std::min(cur.absprec() * ram, step.capacity()));
      continue;
    }
    const OElt u = embed_from_parent(step, cur.unit());
    const FieldElement unit =
        FieldElement::from_unit(step, 0, u, std::min(cur.relprec() * ram, step.capacity()));
    cur = unit * FieldElement(step, step.provenance().pi_image).pow(cur.val());
  }
  return cur;
}

}  // namespace ramlock
