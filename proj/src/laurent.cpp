#include "descent/laurent.hpp"

namespace descent {

void Laurent::normalize() {
  std::size_t lz = 0;
  while (lz < c_.size() && c_[lz].is_zero()) lz++;
  if (lz == c_.size()) {
    c_.clear();
    return;
  }
  if (lz) {
    c_.erase(c_.begin(), c_.begin() + (long)lz);
    lead_ += (int)lz;
    // dropping leading zeros does not extend knowledge past the window
    prec_ -= (unsigned)lz;
  }
  if (c_.size() > prec_) c_.resize(prec_);
}

Laurent::Laurent(const Tower* tw, unsigned k, int lead, std::vector<FF> c, unsigned prec)
    : tw_(tw), k_(k), lead_(lead), c_(std::move(c)), prec_(prec) {
  normalize();
}

Laurent Laurent::zero(const Tower* tw, unsigned k, unsigned prec) {
  return Laurent(tw, k, 0, {}, prec);
}

Laurent Laurent::t_power(const Tower* tw, unsigned k, int e, unsigned prec) {
  return Laurent(tw, k, e, {tw->one(k)}, prec);
}

Laurent Laurent::constant(const FF& c, unsigned prec) {
  return Laurent(c.tower(), c.degree(), 0, {c}, prec);
}

int Laurent::val() const {
  if (c_.empty()) throw error("Laurent::val of (truncation-)zero series");
  return lead_;
}

FF Laurent::lead_coeff() const {
  if (c_.empty()) throw error("Laurent::lead_coeff of zero series");
  return c_[0];
}

FF Laurent::coeff(int e) const {
  if (c_.empty() || e < lead_ || e >= lead_ + (int)c_.size()) return tw_->zero(k_);
  return c_[(std::size_t)(e - lead_)];
}

Laurent Laurent::operator+(const Laurent& o) const {
  if (c_.empty()) return o;
  if (o.c_.empty()) return *this;
  int lo = std::min(lead_, o.lead_);
  unsigned prec = std::min((unsigned)(lead_ + (int)prec_ - lo), (unsigned)(o.lead_ + (int)o.prec_ - lo));
  std::vector<FF> r(prec, tw_->zero(k_));
  for (unsigned i = 0; i < prec; i++) r[i] = coeff(lo + (int)i) + o.coeff(lo + (int)i);
  return Laurent(tw_, k_, lo, std::move(r), prec);
}

Laurent Laurent::operator-(const Laurent& o) const { return *this + o.scaled(-tw_->one(k_)); }

Laurent Laurent::scaled(const FF& s) const {
  Laurent r = *this;
  for (auto& v : r.c_) v = v * s;
  r.normalize();
  return r;
}

Laurent Laurent::operator*(const Laurent& o) const {
  if (c_.empty() || o.c_.empty()) {
    unsigned prec = std::min(prec_, o.prec_);
    return Laurent(tw_, k_, 0, {}, prec);
  }
  unsigned prec = std::min(prec_, o.prec_);
  std::vector<FF> r(prec, tw_->zero(k_));
  for (std::size_t i = 0; i < c_.size() && i < prec; i++) {
    if (c_[i].is_zero()) continue;
    for (std::size_t j = 0; j < o.c_.size() && i + j < prec; j++)
      r[i + j] = r[i + j] + c_[i] * o.c_[j];
  }
  return Laurent(tw_, k_, lead_ + o.lead_, std::move(r), prec);
}

Laurent Laurent::inv() const {
  if (c_.empty()) throw error("Laurent::inv of zero series");
  // write as c0 t^lead (1 + u), invert the unit part by Neumann series
  FF c0i = c_[0].inv();
  std::vector<FF> u(prec_, tw_->zero(k_));
  for (std::size_t i = 1; i < c_.size(); i++) u[i - 1] = c_[i] * c0i;  // u starts at t^1
  // v = 1/(1+u) iteratively: v_{n+1} = v_n (2 - (1+u) v_n)
  std::vector<FF> v(prec_, tw_->zero(k_));
  v[0] = tw_->one(k_);
  for (unsigned it = 0; it < prec_; it++) {
    // w = (1+u) * v truncated
    std::vector<FF> w(prec_, tw_->zero(k_));
    for (unsigned i = 0; i < prec_; i++) {
      if (v[i].is_zero()) continue;
      w[i] = w[i] + v[i];
      for (unsigned j = 0; i + j + 1 < prec_; j++) w[i + j + 1] = w[i + j + 1] + v[i] * u[j];
    }
    bool done = true;
    for (unsigned i = 1; i < prec_; i++)
      if (!w[i].is_zero()) { done = false; break; }
    if (done) break;
    // v = v*(2 - w)
    std::vector<FF> two_minus_w(prec_, tw_->zero(k_));
    two_minus_w[0] = tw_->from_int(2, k_) - w[0];
    for (unsigned i = 1; i < prec_; i++) two_minus_w[i] = -w[i];
    std::vector<FF> nv(prec_, tw_->zero(k_));
    for (unsigned i = 0; i < prec_; i++) {
      if (v[i].is_zero()) continue;
      for (unsigned j = 0; i + j < prec_; j++) nv[i + j] = nv[i + j] + v[i] * two_minus_w[j];
    }
    v = std::move(nv);
  }
  for (auto& vv : v) vv = vv * c0i;
  return Laurent(tw_, k_, -lead_, std::move(v), prec_);
}

Laurent Laurent::operator/(const Laurent& o) const { return *this * o.inv(); }

Laurent Laurent::pow(unsigned e) const {
  Laurent r = Laurent::constant(tw_->one(k_), prec_);
  Laurent b = *this;
  while (e) {
    if (e & 1) r = r * b;
    b = b * b;
    e >>= 1;
  }
  return r;
}

CurveExpansion curve_expansion(const Tower* tw, const FF& a4, const FF& a6, unsigned prec) {
  unsigned k = std::max(a4.degree(), a6.degree());
  FF A = tw->embed(a4, k), B = tw->embed(a6, k);
  unsigned wp = prec + 8;
  // s = 1/y satisfies s = t^3 + a4 t s^2 + a6 s^3; iterate from s = t^3
  Laurent t = Laurent::t_power(tw, k, 1, wp);
  Laurent s = Laurent::t_power(tw, k, 3, wp);
  for (unsigned it = 0; it < wp + 2; it++) {
    Laurent ns = t.pow(3) + (t * s * s).scaled(A) + (s * s * s).scaled(B);
    if (ns.val() == s.val()) {
      bool same = true;
      for (int e = s.val(); e < s.val() + (int)wp; e++)
        if (!(s.coeff(e) == ns.coeff(e))) { same = false; break; }
      if (same) { s = ns; break; }
    }
    s = ns;
  }
  Laurent y = s.inv();
  Laurent x = t * y;
  return {x, y};
}

}  // namespace descent
