#include "descent/tower.hpp"

#include <algorithm>
#include <numeric>

#include "descent/poly.hpp"

namespace descent {

namespace {

// raw dense polynomial helpers over F_p (coefficient vectors, no trailing zeros)

void raw_trim(std::vector<u64>& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

std::vector<u64> raw_mul(const Zp& f, const std::vector<u64>& a, const std::vector<u64>& b) {
  if (a.empty() || b.empty()) return {};
  std::vector<u64> r(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); i++) {
    if (!a[i]) continue;
    for (std::size_t j = 0; j < b.size(); j++)
      r[i + j] = f.add(r[i + j], f.mul(a[i], b[j]));
  }
  return r;
}

// reduce a modulo monic m in place
void raw_mod(const Zp& f, std::vector<u64>& a, const std::vector<u64>& m) {
  std::size_t dm = m.size() - 1;
  raw_trim(a);
  while (a.size() > dm) {
    u64 c = a.back();
    std::size_t shift = a.size() - 1 - dm;
    if (c) {
      for (std::size_t j = 0; j < dm; j++)
        a[shift + j] = f.sub(a[shift + j], f.mul(c, m[j]));
    }
    a.pop_back();
    raw_trim(a);
  }
}

}  // namespace

// ---------------------------------------------------------------------------
// FF

FF::FF(const Tower* tw, unsigned deg, std::vector<u64> c) : tw_(tw), deg_(deg), c_(std::move(c)) {
  c_.resize(deg_, 0);
  for (auto& v : c_) v %= tw->p();
}

bool FF::is_zero() const {
  for (u64 v : c_)
    if (v) return false;
  return true;
}

bool FF::in_prime_field() const {
  for (std::size_t i = 1; i < c_.size(); i++)
    if (c_[i]) return false;
  return true;
}

FF FF::operator+(const FF& o) const {
  if (deg_ != o.deg_) {
    auto [a, b] = tw_->lift_common(*this, o);
    return a + b;
  }
  Zp f = tw_->zp();
  std::vector<u64> r(deg_);
  for (unsigned i = 0; i < deg_; i++) r[i] = f.add(c_[i], o.c_[i]);
  return FF(tw_, deg_, std::move(r));
}

FF FF::operator-(const FF& o) const {
  if (deg_ != o.deg_) {
    auto [a, b] = tw_->lift_common(*this, o);
    return a - b;
  }
  Zp f = tw_->zp();
  std::vector<u64> r(deg_);
  for (unsigned i = 0; i < deg_; i++) r[i] = f.sub(c_[i], o.c_[i]);
  return FF(tw_, deg_, std::move(r));
}

FF FF::operator-() const {
  Zp f = tw_->zp();
  std::vector<u64> r(deg_);
  for (unsigned i = 0; i < deg_; i++) r[i] = f.neg(c_[i]);
  return FF(tw_, deg_, std::move(r));
}

FF FF::operator*(const FF& o) const {
  if (deg_ != o.deg_) {
    auto [a, b] = tw_->lift_common(*this, o);
    return a * b;
  }
  return FF(tw_, deg_, tw_->ff_mul_raw(deg_, c_, o.c_));
}

FF FF::operator/(const FF& o) const { return *this * o.inv(); }

bool FF::operator==(const FF& o) const {
  if (deg_ == o.deg_) return c_ == o.c_;
  unsigned l = std::lcm(deg_, o.deg_);
  return tw_->embed(*this, l).coeffs() == tw_->embed(o, l).coeffs();
}

bool FF::operator<(const FF& o) const {
  if (deg_ != o.deg_) return deg_ < o.deg_;
  return c_ < o.c_;
}

FF FF::pow(u64 e) const {
  FF r = tw_->one(deg_), b = *this;
  while (e) {
    if (e & 1) r = r * b;
    b = b * b;
    e >>= 1;
  }
  return r;
}

FF FF::pow_subgroup_exponent(unsigned d, u64 g) const {
  // exponent N = (p^d - 1)/g written in base p; x^N = prod (x^{p^i})^{digit_i}
  u64 p = tw_->p();
  std::vector<u64> digits(d, p - 1);  // base-p digits of p^d - 1, LSB first
  // long division by g, MSB to LSB
  u64 rem = 0;
  for (std::size_t i = d; i-- > 0;) {
    u128 cur = (u128)rem * p + digits[i];
    digits[i] = (u64)(cur / g);
    rem = (u64)(cur % g);
  }
  if (rem != 0) throw error("pow_subgroup_exponent: g does not divide p^d-1");
  FF res = tw_->one(deg_);
  FF base = *this;
  for (std::size_t i = 0; i < d; i++) {
    if (digits[i]) res = res * base.pow(digits[i]);
    if (i + 1 < d) base = base.frob(1);
  }
  return res;
}

FF FF::frob(unsigned j) const { return tw_->frobenius(*this, j); }

FF FF::inv() const {
  if (is_zero()) throw error("FF::inv of zero");
  Zp f = tw_->zp();
  if (deg_ == 1) return FF(tw_, 1, {f.inv(c_[0])});
  // extended euclid in F_p[x] against the defining polynomial
  const auto& def = tw_->extend(deg_).defining;
  std::vector<u64> r0 = def, r1 = c_;
  raw_trim(r1);
  std::vector<u64> t0 = {}, t1 = {1};
  while (!r1.empty()) {
    // divide r0 by r1
    std::vector<u64> q;
    std::vector<u64> rem = r0;
    raw_trim(rem);
    if (rem.size() >= r1.size()) {
      q.assign(rem.size() - r1.size() + 1, 0);
      u64 lcinv = f.inv(r1.back());
      while (rem.size() >= r1.size() && !rem.empty()) {
        u64 c = f.mul(rem.back(), lcinv);
        std::size_t shift = rem.size() - r1.size();
        q[shift] = c;
        for (std::size_t j2 = 0; j2 < r1.size(); j2++)
          rem[shift + j2] = f.sub(rem[shift + j2], f.mul(c, r1[j2]));
        raw_trim(rem);
        if (rem.empty()) break;
      }
    }
    std::vector<u64> t2_sub = raw_mul(f, q, t1);
    std::vector<u64> t2(std::max(t0.size(), t2_sub.size()), 0);
    for (std::size_t i = 0; i < t0.size(); i++) t2[i] = t0[i];
    for (std::size_t i = 0; i < t2_sub.size(); i++) t2[i] = f.sub(t2[i], t2_sub[i]);
    raw_trim(t2);
    t0 = std::move(t1);
    t1 = std::move(t2);
    r0 = std::move(r1);
    r1 = std::move(rem);
  }
  if (r0.size() != 1) throw error("FF::inv: element not invertible (bad field?)");
  u64 s = f.inv(r0[0]);
  for (auto& v : t0) v = f.mul(v, s);
  return FF(tw_, deg_, std::move(t0));
}

// ---------------------------------------------------------------------------
// Tower

Tower::Tower(u64 p, u64 seed) : zp_{p}, rng_(seed ^ 0x9e3779b97f4a7c15ULL) {
  if (p < 5) throw error("Tower: prime p > 3 required");
  // quick primality check (p is desk scale)
  for (u64 d = 2; d * d <= p; d++)
    if (p % d == 0) throw error("Tower: p is not prime");
  make_field(1);
}

bool Tower::has_field(unsigned k) const { return fields_.count(k) != 0; }

std::vector<unsigned> Tower::registered_degrees() const {
  std::vector<unsigned> v;
  for (auto& kv : fields_) v.push_back(kv.first);
  return v;
}

const Tower::Field& Tower::extend(unsigned k) const {
  if (k == 0) throw error("extend: degree must be >= 1");
  if (!fields_.count(k)) make_field(k);
  return fields_.at(k)->pub;
}

Tower::FieldData& Tower::fdata(unsigned k) const {
  extend(k);
  return *fields_.at(k);
}

FF Tower::zero(unsigned k) const {
  extend(k);
  return FF(this, k, std::vector<u64>(k, 0));
}

FF Tower::one(unsigned k) const { return from_int(1, k); }

FF Tower::from_int(u64 v, unsigned k) const {
  extend(k);
  std::vector<u64> c(k, 0);
  c[0] = v % zp_.p;
  return FF(this, k, std::move(c));
}

FF Tower::gen(unsigned k) const {
  extend(k);
  std::vector<u64> c(k, 0);
  if (k > 1) c[1] = 1;
  return FF(this, k, std::move(c));
}

FF Tower::make(unsigned k, std::vector<u64> coeffs) const {
  extend(k);
  return FF(this, k, std::move(coeffs));
}

FF Tower::random_element(unsigned k) const {
  extend(k);
  std::vector<u64> c(k);
  for (auto& v : c) v = rng_() % zp_.p;
  return FF(this, k, std::move(c));
}

FF Tower::random_nonzero(unsigned k) const {
  for (;;) {
    FF x = random_element(k);
    if (!x.is_zero()) return x;
  }
}

std::vector<u64> Tower::ff_mul_raw(unsigned k, const std::vector<u64>& a, const std::vector<u64>& b) const {
  if (k == 1) return {zp_.mul(a.empty() ? 0 : a[0], b.empty() ? 0 : b[0])};
  auto r = raw_mul(zp_, a, b);
  raw_mod(zp_, r, fields_.at(k)->pub.defining);
  r.resize(k, 0);
  return r;
}

FF Tower::embed(const FF& x, unsigned K) const {
  if (x.degree() == K) return x;
  if (K % x.degree() != 0) throw error("embed: degree does not divide target");
  extend(K);
  const Emb& e = emb(x.degree(), K);
  return FF(this, K, e.mat.apply(x.coeffs()));
}

std::pair<FF, FF> Tower::lift_common(const FF& a, const FF& b) const {
  unsigned l = std::lcm(a.degree(), b.degree());
  return {embed(a, l), embed(b, l)};
}

std::optional<FF> Tower::extract(const FF& x, unsigned d) const {
  if (x.degree() == d) return x;
  if (x.degree() % d != 0) return std::nullopt;
  const Emb& e = emb(d, x.degree());
  auto u = e.mat.solve(x.coeffs());
  if (!u) return std::nullopt;
  return FF(this, d, *u);
}

bool Tower::in_subfield(const FF& x, unsigned d) const {
  if (x.degree() % d == 0 && frobenius(x, d) == x) return true;
  return false;
}

unsigned Tower::minimal_field_degree(const FF& x) const {
  for (unsigned d = 1; d <= x.degree(); d++)
    if (x.degree() % d == 0 && in_subfield(x, d)) return d;
  return x.degree();
}

FF Tower::frobenius(const FF& x, unsigned j) const {
  unsigned k = x.degree();
  if (k == 1) return x;
  j %= k;
  if (j == 0) return x;
  FieldData& fd = fdata(k);
  while (fd.frob_pows.size() <= j) {
    if (fd.frob_pows.empty()) fd.frob_pows.push_back(FpMat::identity(zp_, k));
    fd.frob_pows.push_back(fd.frob_pows.back().mul(fd.frob));
  }
  return FF(this, k, fd.frob_pows[j].apply(x.coeffs()));
}

std::vector<u64> Tower::eval_prime_poly(const std::vector<u64>& poly, const FF& at) const {
  FF acc = zero(at.degree());
  for (std::size_t i = poly.size(); i-- > 0;) acc = acc * at + from_int(poly[i], 1);
  return acc.coeffs();
}

std::vector<u64> Tower::find_irreducible(unsigned k) const {
  // random monic search; density ~ 1/k
  for (int tries = 0; tries < 40000; tries++) {
    std::vector<FF> c(k + 1);
    for (unsigned i = 0; i < k; i++) c[i] = FF(this, 1, {rng_() % zp_.p});
    c[k] = one(1);
    FPoly f(this, 1, c);
    if (poly_is_irreducible(f)) {
      std::vector<u64> raw(k + 1);
      for (unsigned i = 0; i <= k; i++) raw[i] = f[i].const_coeff();
      return raw;
    }
  }
  throw error("find_irreducible: search exhausted");
}

void Tower::make_field(unsigned k) const {
  auto fd = std::make_unique<FieldData>();
  fd->pub.k = k;
  if (k == 1) {
    fd->pub.defining = {0, 1};
    fd->frob = FpMat::identity(zp_, 1);
  } else {
    fd->pub.defining = find_irreducible(k);
  }
  fields_[k] = std::move(fd);
  FieldData& f = *fields_[k];
  if (k > 1) {
    // p-power map is F_p-linear; build its matrix from images of basis powers
    FF gp = gen(k).pow(zp_.p);
    FpMat m(zp_, k, k);
    FF cur = one(k);
    for (unsigned j = 0; j < k; j++) {
      for (unsigned i = 0; i < k; i++) m.at(i, j) = cur.coeffs()[i];
      cur = cur * gp;
    }
    f.frob = m;
  }
  // register embeddings with all existing comparable fields
  std::vector<unsigned> degs = registered_degrees();
  for (unsigned d : degs)
    if (d != k && k % d == 0) make_embedding(d, k);
  for (unsigned D : degs)
    if (D != k && D % k == 0) make_embedding(k, D);
}

void Tower::make_embedding(unsigned from, unsigned to) const {
  if (embs_.count({from, to})) return;
  if (from == 1) {
    Emb e;
    e.gen_image.assign(to, 0);
    e.mat = FpMat(zp_, to, 1);
    e.mat.at(0, 0) = 1;
    embs_[{from, to}] = std::move(e);
    return;
  }
  // roots of the degree-`from` defining polynomial inside F_{p^to}
  const auto& def = fields_.at(from)->pub.defining;
  std::vector<FF> c(def.size());
  for (std::size_t i = 0; i < def.size(); i++) c[i] = from_int(def[i], to);
  FPoly f(this, to, c);
  std::vector<FF> rts = poly_roots(f);
  std::sort(rts.begin(), rts.end());
  if (rts.size() != from) throw error("make_embedding: defining polynomial does not split");

  for (const FF& r : rts) {
    // compatibility with every registered smaller field
    bool ok = true;
    for (auto& kv : embs_) {
      unsigned m = kv.first.first;
      if (kv.first.second != from || m == 1) continue;
      auto it = embs_.find({m, to});
      if (it == embs_.end()) continue;
      // image of g_m via candidate: evaluate its g_from-expansion at r
      std::vector<u64> via = eval_prime_poly(kv.second.gen_image, r);
      if (via != it->second.gen_image) { ok = false; break; }
    }
    if (!ok) continue;
    Emb e;
    e.gen_image = r.coeffs();
    e.mat = FpMat(zp_, to, from);
    FF cur = one(to);
    for (unsigned j = 0; j < from; j++) {
      for (unsigned i = 0; i < to; i++) e.mat.at(i, j) = cur.coeffs()[i];
      cur = cur * r;
    }
    embs_[{from, to}] = std::move(e);
    return;
  }
  throw error("make_embedding: no compatible root found");
}

const Tower::Emb& Tower::emb(unsigned from, unsigned to) const {
  auto it = embs_.find({from, to});
  if (it == embs_.end()) {
    extend(from);
    extend(to);
    make_embedding(from, to);
    it = embs_.find({from, to});
  }
  return it->second;
}

std::optional<FF> Tower::nth_root(const FF& x, unsigned n) const {
  if (x.is_zero()) throw error("nth_root: x must be nonzero");
  unsigned k = x.degree();
  // X^n - x over the owning field
  std::vector<FF> c(n + 1, zero(k));
  c[0] = -x;
  c[n] = one(k);
  FPoly f(this, k, c);
  std::vector<FF> rts = poly_roots(f);
  if (rts.empty()) return std::nullopt;
  // canonical choice: smallest subfield first, then lexicographic
  return *std::min_element(rts.begin(), rts.end(), [&](const FF& a, const FF& b) {
    unsigned da = minimal_field_degree(a), db = minimal_field_degree(b);
    if (da != db) return da < db;
    return a < b;
  });
}

}  // namespace descent
