#include "descent/poly.hpp"

#include <algorithm>
#include <map>

namespace descent {

void FPoly::trim() {
  while (!c_.empty() && c_.back().is_zero()) c_.pop_back();
}

FPoly::FPoly(const Tower* tw, unsigned k, std::vector<FF> c) : tw_(tw), k_(k), c_(std::move(c)) {
  trim();
}

FPoly FPoly::X(const Tower* tw, unsigned k) {
  return FPoly(tw, k, {tw->zero(k), tw->one(k)});
}

FPoly FPoly::constant(const FF& c) {
  return FPoly(c.tower(), c.degree(), {c});
}

FF FPoly::coeff(std::size_t i) const {
  return i < c_.size() ? c_[i] : tw_->zero(k_);
}

FF FPoly::lead() const {
  if (c_.empty()) throw error("FPoly::lead of zero");
  return c_.back();
}

FPoly FPoly::operator+(const FPoly& o) const {
  std::vector<FF> r(std::max(c_.size(), o.c_.size()), tw_->zero(k_));
  for (std::size_t i = 0; i < r.size(); i++) {
    if (i < c_.size()) r[i] = r[i] + c_[i];
    if (i < o.c_.size()) r[i] = r[i] + o.c_[i];
  }
  return FPoly(tw_, k_, std::move(r));
}

FPoly FPoly::operator-(const FPoly& o) const {
  std::vector<FF> r(std::max(c_.size(), o.c_.size()), tw_->zero(k_));
  for (std::size_t i = 0; i < r.size(); i++) {
    if (i < c_.size()) r[i] = r[i] + c_[i];
    if (i < o.c_.size()) r[i] = r[i] - o.c_[i];
  }
  return FPoly(tw_, k_, std::move(r));
}

FPoly FPoly::operator*(const FPoly& o) const {
  if (c_.empty() || o.c_.empty()) return FPoly(tw_, k_);
  std::vector<FF> r(c_.size() + o.c_.size() - 1, tw_->zero(k_));
  for (std::size_t i = 0; i < c_.size(); i++) {
    if (c_[i].is_zero()) continue;
    for (std::size_t j = 0; j < o.c_.size(); j++)
      r[i + j] = r[i + j] + c_[i] * o.c_[j];
  }
  return FPoly(tw_, k_, std::move(r));
}

FPoly FPoly::scaled(const FF& s) const {
  std::vector<FF> r = c_;
  for (auto& v : r) v = v * s;
  return FPoly(tw_, k_, std::move(r));
}

bool FPoly::operator==(const FPoly& o) const {
  if (c_.size() != o.c_.size()) return false;
  for (std::size_t i = 0; i < c_.size(); i++)
    if (!(c_[i] == o.c_[i])) return false;
  return true;
}

FPoly FPoly::monic() const {
  if (c_.empty()) return *this;
  return scaled(lead().inv());
}

FPoly FPoly::pow(unsigned e) const {
  FPoly r = FPoly::constant(tw_->one(k_));
  FPoly b = *this;
  while (e) {
    if (e & 1) r = r * b;
    b = b * b;
    e >>= 1;
  }
  return r;
}

FPoly FPoly::derivative() const {
  if (c_.size() <= 1) return FPoly(tw_, k_);
  std::vector<FF> r(c_.size() - 1, tw_->zero(k_));
  for (std::size_t i = 1; i < c_.size(); i++)
    r[i - 1] = c_[i] * tw_->from_int(i % tw_->p(), k_);
  return FPoly(tw_, k_, std::move(r));
}

std::pair<FPoly, FPoly> FPoly::divrem(const FPoly& d) const {
  if (d.is_zero()) throw error("FPoly::divrem by zero");
  FPoly rem = *this;
  if (rem.deg() < d.deg()) return {FPoly(tw_, k_), rem};
  FF lcinv = d.lead().inv();
  std::vector<FF> q(rem.deg() - d.deg() + 1, tw_->zero(k_));
  while (!rem.is_zero() && rem.deg() >= d.deg()) {
    FF c = rem.lead() * lcinv;
    std::size_t shift = rem.deg() - d.deg();
    q[shift] = c;
    std::vector<FF> rc = rem.c_;
    for (std::size_t j = 0; j < d.c_.size(); j++)
      rc[shift + j] = rc[shift + j] - c * d.c_[j];
    rem = FPoly(tw_, k_, std::move(rc));
  }
  return {FPoly(tw_, k_, std::move(q)), rem};
}

FPoly FPoly::operator/(const FPoly& d) const { return divrem(d).first; }
FPoly FPoly::operator%(const FPoly& d) const { return divrem(d).second; }

bool FPoly::divides(const FPoly& f) const { return f.divrem(*this).second.is_zero(); }

FF FPoly::eval(const FF& at) const {
  FF acc = at.tower()->zero(at.degree());
  for (std::size_t i = c_.size(); i-- > 0;) acc = acc * at + c_[i];
  return acc;
}

FPoly FPoly::lifted(unsigned K) const {
  std::vector<FF> r;
  r.reserve(c_.size());
  for (const auto& v : c_) r.push_back(tw_->embed(v, K));
  return FPoly(tw_, K, std::move(r));
}

FPoly poly_gcd(FPoly a, FPoly b) {
  while (!b.is_zero()) {
    FPoly r = a % b;
    a = std::move(b);
    b = std::move(r);
  }
  if (a.is_zero()) return a;
  return a.monic();
}

FPoly poly_powmod(const FPoly& a, u64 e, const FPoly& m) {
  FPoly r = FPoly::constant(m.tower()->one(m.field_degree()));
  FPoly b = a % m;
  while (e) {
    if (e & 1) r = (r * b) % m;
    b = (b * b) % m;
    e >>= 1;
  }
  return r;
}

FPoly poly_qth_power_mod(const FPoly& a, const FPoly& m) {
  // q = p^k: apply p-th powering k times
  FPoly r = a % m;
  for (unsigned i = 0; i < m.field_degree(); i++) r = poly_powmod(r, m.tower()->p(), m);
  return r;
}

FPoly poly_pow_halforder(const FPoly& a, unsigned d, const FPoly& m) {
  // (q^d - 1)/2 has base-p digits all (p-1)/2, length k*d
  const Tower* tw = m.tower();
  u64 half = (tw->p() - 1) / 2;
  unsigned len = m.field_degree() * d;
  FPoly res = FPoly::constant(tw->one(m.field_degree()));
  FPoly cur = a % m;
  for (unsigned i = 0; i < len; i++) {
    res = (res * poly_powmod(cur, half, m)) % m;
    if (i + 1 < len) cur = poly_powmod(cur, tw->p(), m);
  }
  return res;
}

bool poly_is_irreducible(const FPoly& f) {
  int n = f.deg();
  if (n <= 0) return false;
  if (n == 1) return true;
  const Tower* tw = f.tower();
  FPoly x = FPoly::X(tw, f.field_degree());
  FPoly fm = f.monic();
  // x^{q^n} == x mod f
  FPoly h = x;
  std::vector<FPoly> qpowers;  // x^{q^(i+1)} mod f
  for (int i = 0; i < n; i++) {
    h = poly_qth_power_mod(h, fm);
    qpowers.push_back(h);
  }
  if (!(qpowers[n - 1] == (x % fm))) return false;
  // gcd(x^{q^{n/l}} - x, f) == 1 for prime l | n
  for (int l = 2; l <= n; l++) {
    if (n % l != 0) continue;
    bool isprime = true;
    for (int d2 = 2; d2 * d2 <= l; d2++)
      if (l % d2 == 0) { isprime = false; break; }
    if (!isprime) continue;
    FPoly g = poly_gcd(qpowers[n / l - 1] - x, fm);
    if (g.deg() != 0) return false;
  }
  return true;
}

namespace {

// Cantor-Zassenhaus equal-degree splitting of a squarefree product of
// degree-d irreducibles (q odd).
void equal_degree_split(const FPoly& f, unsigned d, std::vector<FPoly>& out) {
  if ((unsigned)f.deg() == d) {
    out.push_back(f.monic());
    return;
  }
  const Tower* tw = f.tower();
  unsigned k = f.field_degree();
  for (int tries = 0; tries < 256; tries++) {
    std::vector<FF> rc((std::size_t)f.deg(), tw->zero(k));
    for (auto& v : rc) v = tw->random_element(k);
    FPoly a(tw, k, std::move(rc));
    if (a.is_zero()) continue;
    FPoly g = poly_gcd(a, f);
    if (g.deg() > 0 && g.deg() < f.deg()) {
      equal_degree_split(g, d, out);
      equal_degree_split(f / g, d, out);
      return;
    }
    FPoly b = poly_pow_halforder(a, d, f);
    FPoly one = FPoly::constant(tw->one(k));
    g = poly_gcd(b - one, f);
    if (g.deg() > 0 && g.deg() < f.deg()) {
      equal_degree_split(g, d, out);
      equal_degree_split(f / g, d, out);
      return;
    }
  }
  throw error("equal_degree_split: retries exhausted");
}

// distinct-degree then equal-degree factorization of a squarefree monic poly
std::vector<FPoly> split_squarefree(FPoly w) {
  std::vector<FPoly> out;
  const Tower* tw = w.tower();
  unsigned k = w.field_degree();
  FPoly x = FPoly::X(tw, k);
  FPoly h = x;
  unsigned d = 0;
  while (w.deg() > 0 && 2 * (d + 1) <= (unsigned)w.deg()) {
    d++;
    h = poly_qth_power_mod(h, w);
    FPoly g = poly_gcd(h - x, w);
    if (g.deg() > 0) {
      equal_degree_split(g, d, out);
      w = w / g;
      h = h % w;
    }
  }
  if (w.deg() > 0) out.push_back(w.monic());
  return out;
}

// f with zero derivative: f(x) = g(x^p) with g coeffs the p^(k-1)-th powers
FPoly pth_root_poly(const FPoly& f) {
  const Tower* tw = f.tower();
  unsigned k = f.field_degree();
  std::vector<FF> g((std::size_t)(f.deg() / tw->p()) + 1, tw->zero(k));
  for (std::size_t i = 0; i < g.size(); i++) {
    FF c = f.coeff(i * tw->p());
    g[i] = k == 1 ? c : c.frob(k - 1);  // p-th root in F_{p^k}
  }
  return FPoly(tw, k, std::move(g));
}

}  // namespace

Factorization poly_factor(const FPoly& f0) {
  if (f0.is_zero()) throw error("poly_factor: zero polynomial");
  Factorization out;
  out.unit = f0.lead();
  FPoly f = f0.monic();
  std::map<int, std::vector<std::pair<FPoly, unsigned>>> acc;  // keyed by degree for sort
  std::vector<std::pair<FPoly, unsigned>> found;
  unsigned pmult = 1;  // accumulated p-power multiplicity from p-th roots
  while (f.deg() > 0) {
    FPoly fp = f.derivative();
    if (fp.is_zero()) {
      f = pth_root_poly(f);
      pmult *= (unsigned)f.tower()->p();
      continue;
    }
    FPoly g = poly_gcd(f, fp);
    FPoly w = f / g;  // squarefree, contains each factor of f with mult not divisible by p
    for (FPoly& u : split_squarefree(w)) {
      unsigned m = 0;
      while (u.divides(f)) {
        f = f / u;
        m++;
      }
      found.push_back({u, m * pmult});
    }
    if (f.deg() == 0) break;
  }
  std::sort(found.begin(), found.end(), [](const auto& a, const auto& b) {
    if (a.first.deg() != b.first.deg()) return a.first.deg() < b.first.deg();
    for (int i = a.first.deg(); i >= 0; i--) {
      if (a.first[i] == b.first[i]) continue;
      return a.first[i] < b.first[i];
    }
    return false;
  });
  for (auto& kv : found) out.factors.push_back({kv.first, kv.second});
  return out;
}

std::vector<FF> poly_roots(const FPoly& f) {
  // restrict to the part splitting into linear factors before full factorization
  const Tower* tw = f.tower();
  unsigned k = f.field_degree();
  FPoly x = FPoly::X(tw, k);
  FPoly fm = f.monic();
  FPoly g = fm;
  FPoly gp = g.derivative();
  if (!gp.is_zero()) {
    FPoly sq = poly_gcd(g, gp);
    if (sq.deg() > 0) g = g / sq;
  }
  FPoly xq = poly_qth_power_mod(x, g);
  FPoly lin = poly_gcd(xq - x, g);
  std::vector<FF> rts;
  if (lin.deg() > 0) {
    std::vector<FPoly> facs;
    equal_degree_split(lin, 1, facs);
    for (auto& u : facs) rts.push_back(-u[0]);
  }
  std::sort(rts.begin(), rts.end());
  return rts;
}

}  // namespace descent
