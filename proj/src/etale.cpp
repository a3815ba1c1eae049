#include "descent/etale.hpp"

#include <algorithm>
#include <numeric>

namespace descent {

// ---------------------------------------------------------------------------
// element arithmetic

bool EtaleElement::invertible() const {
  for (auto& x : v)
    if (x.is_zero()) return false;
  return true;
}

EtaleElement EtaleElement::operator*(const EtaleElement& o) const {
  EtaleElement r{tw, v, rational && o.rational};
  for (std::size_t i = 0; i < v.size(); i++) r.v[i] = v[i] * o.v[i];
  return r;
}

EtaleElement EtaleElement::operator/(const EtaleElement& o) const {
  EtaleElement r{tw, v, rational && o.rational};
  for (std::size_t i = 0; i < v.size(); i++) r.v[i] = v[i] / o.v[i];
  return r;
}

EtaleElement EtaleElement::inv() const {
  EtaleElement r{tw, v, rational};
  for (auto& x : r.v) x = x.inv();
  return r;
}

EtaleElement EtaleElement::pow(u64 e) const {
  EtaleElement r{tw, v, rational};
  for (auto& x : r.v) x = x.pow(e);
  return r;
}

bool EtaleElement::operator==(const EtaleElement& o) const {
  if (v.size() != o.v.size()) return false;
  for (std::size_t i = 0; i < v.size(); i++)
    if (!(v[i] == o.v[i])) return false;
  return true;
}

bool TensorElement::invertible() const {
  for (auto& row : v)
    for (auto& x : row)
      if (x.is_zero()) return false;
  return true;
}

TensorElement TensorElement::operator*(const TensorElement& o) const {
  TensorElement r{tw, v, rational && o.rational};
  for (std::size_t i = 0; i < v.size(); i++)
    for (std::size_t j = 0; j < v.size(); j++) r.v[i][j] = v[i][j] * o.v[i][j];
  return r;
}

TensorElement TensorElement::operator/(const TensorElement& o) const {
  TensorElement r{tw, v, rational && o.rational};
  for (std::size_t i = 0; i < v.size(); i++)
    for (std::size_t j = 0; j < v.size(); j++) r.v[i][j] = v[i][j] / o.v[i][j];
  return r;
}

TensorElement TensorElement::inv() const {
  TensorElement r{tw, v, rational};
  for (auto& row : r.v)
    for (auto& x : row) x = x.inv();
  return r;
}

TensorElement TensorElement::op() const {
  TensorElement r{tw, v, rational};
  for (std::size_t i = 0; i < v.size(); i++)
    for (std::size_t j = 0; j < v.size(); j++) r.v[i][j] = v[j][i];
  return r;
}

bool TensorElement::operator==(const TensorElement& o) const {
  for (std::size_t i = 0; i < v.size(); i++)
    for (std::size_t j = 0; j < v.size(); j++)
      if (!(v[i][j] == o.v[i][j])) return false;
  return true;
}

// ---------------------------------------------------------------------------
// constructors and Galois action

EtaleElement constant_element(const Tower* tw, const TorsionData& td, const FF& c, bool rational) {
  return EtaleElement{tw, std::vector<FF>(td.pts.size(), c), rational};
}

TensorElement constant_tensor(const Tower* tw, const TorsionData& td, const FF& c, bool rational) {
  return TensorElement{tw, std::vector<std::vector<FF>>(td.pts.size(), std::vector<FF>(td.pts.size(), c)), rational};
}

EtaleElement delta_element(const Tower* tw, const TorsionData& td, unsigned at) {
  EtaleElement r = constant_element(tw, td, tw->zero(td.m), false);
  r.v[at] = tw->one(td.m);
  return r;
}

static std::vector<unsigned> perm_pow(const std::vector<unsigned>& p, unsigned j) {
  std::vector<unsigned> r(p.size());
  for (unsigned i = 0; i < p.size(); i++) r[i] = i;
  for (unsigned t = 0; t < j; t++)
    for (unsigned i = 0; i < p.size(); i++) r[i] = p[r[i]];
  return r;
}

static std::vector<unsigned> perm_inv(const std::vector<unsigned>& p) {
  std::vector<unsigned> r(p.size());
  for (unsigned i = 0; i < p.size(); i++) r[p[i]] = i;
  return r;
}

EtaleElement galois_act(const Tower* tw, const TorsionData& td, const EtaleElement& a, unsigned j) {
  auto pj = perm_inv(perm_pow(td.frob_perm, j));
  EtaleElement r = a;
  for (unsigned i = 0; i < a.v.size(); i++) r.v[i] = tw->frobenius(a.v[pj[i]], j);
  return r;
}

TensorElement galois_act(const Tower* tw, const TorsionData& td, const TensorElement& a, unsigned j) {
  auto pj = perm_inv(perm_pow(td.frob_perm, j));
  TensorElement r = a;
  for (unsigned i = 0; i < a.v.size(); i++)
    for (unsigned k = 0; k < a.v.size(); k++) r.v[i][k] = tw->frobenius(a.v[pj[i]][pj[k]], j);
  return r;
}

bool is_equivariant(const Tower* tw, const TorsionData& td, const EtaleElement& a) {
  for (unsigned i = 0; i < a.v.size(); i++)
    if (!(a.v[td.frob_perm[i]] == tw->frobenius(a.v[i], 1))) return false;
  return true;
}

bool is_equivariant(const Tower* tw, const TorsionData& td, const TensorElement& a) {
  for (unsigned i = 0; i < a.v.size(); i++)
    for (unsigned j = 0; j < a.v.size(); j++)
      if (!(a.v[td.frob_perm[i]][td.frob_perm[j]] == tw->frobenius(a.v[i][j], 1))) return false;
  return true;
}

// ---------------------------------------------------------------------------
// basis with trace-dual

EtaleBasis build_basis(const Tower* tw, const TorsionData& td) {
  EtaleBasis B;
  B.td = &td;
  unsigned n2 = (unsigned)td.pts.size();
  std::vector<bool> seen(n2, false);
  for (unsigned i = 0; i < n2; i++) {
    if (seen[i]) continue;
    std::vector<unsigned> orb;
    unsigned j = i;
    do {
      orb.push_back(j);
      seen[j] = true;
      j = td.frob_perm[j];
    } while (j != i);
    B.orbits.push_back(orb);
  }
  for (const auto& orb : B.orbits) {
    unsigned d = (unsigned)orb.size();
    tw->extend(d);
    FF g = d == 1 ? tw->one(1) : tw->gen(d);
    for (unsigned l = 0; l < d; l++) {
      EtaleElement r = constant_element(tw, td, tw->zero(td.m), true);
      FF val = tw->embed(g.pow(l), td.m);
      for (unsigned t = 0; t < d; t++) r.v[orb[t]] = tw->frobenius(val, t);
      B.r.push_back(r);
      B.orbit_rep.push_back(orb[0]);
    }
  }
  if (B.r.size() != n2) throw error("build_basis: dimension mismatch");
  // Gram matrix of the trace form, over K
  Zp zp = tw->zp();
  FpMat G(zp, n2, n2);
  for (unsigned i = 0; i < n2; i++)
    for (unsigned j = 0; j < n2; j++) {
      FF s = tw->zero(td.m);
      for (unsigned t = 0; t < n2; t++) s = s + B.r[i].v[t] * B.r[j].v[t];
      if (!s.in_prime_field()) throw error("build_basis: trace form not rational");
      G.at(i, j) = s.const_coeff();
    }
  auto Gi = G.inverse();
  if (!Gi) throw error("build_basis: trace Gram matrix singular");
  for (unsigned i = 0; i < n2; i++) {
    EtaleElement rd = constant_element(tw, td, tw->zero(td.m), true);
    for (unsigned j = 0; j < n2; j++) {
      FF c = tw->from_int(Gi->at(i, j));
      for (unsigned t = 0; t < n2; t++) rd.v[t] = rd.v[t] + c * B.r[j].v[t];
    }
    B.rdual.push_back(rd);
  }
  return B;
}

EtaleElement from_k_coords(const EtaleBasis& B, const std::vector<u64>& coords) {
  const Tower* tw = B.r[0].tw;
  const TorsionData& td = *B.td;
  EtaleElement a = constant_element(tw, td, tw->zero(td.m), true);
  for (std::size_t i = 0; i < coords.size(); i++) {
    FF c = tw->from_int(coords[i]);
    for (unsigned t = 0; t < a.v.size(); t++) a.v[t] = a.v[t] + c * B.r[i].v[t];
  }
  return a;
}

std::vector<u64> to_k_coords(const EtaleBasis& B, const EtaleElement& a) {
  const Tower* tw = a.tw;
  std::vector<u64> out;
  for (std::size_t i = 0; i < B.rdual.size(); i++) {
    FF s = tw->zero(1);
    for (unsigned t = 0; t < a.v.size(); t++) s = s + a.v[t] * B.rdual[i].v[t];
    if (!s.in_prime_field()) throw error("to_k_coords: element not rational");
    out.push_back(s.const_coeff());
  }
  return out;
}

// ---------------------------------------------------------------------------
// structure maps

TensorElement partial1(const Tower* tw, const TorsionData& td, const EtaleElement& g) {
  if (!g.invertible()) throw error("partial1: non-invertible input");
  unsigned n2 = (unsigned)td.pts.size();
  TensorElement r = constant_tensor(tw, td, tw->one(1), g.rational);
  for (unsigned i = 0; i < n2; i++)
    for (unsigned j = 0; j < n2; j++) r.v[i][j] = g.v[i] * g.v[j] / g.v[td.add_tab[i][j]];
  return r;
}

std::vector<std::vector<std::vector<FF>>> partial2(const Tower* tw, const TorsionData& td,
                                                   const TensorElement& rho) {
  if (!rho.invertible()) throw error("partial2: non-invertible input");
  unsigned n2 = (unsigned)td.pts.size();
  std::vector<std::vector<std::vector<FF>>> out(
      n2, std::vector<std::vector<FF>>(n2, std::vector<FF>(n2, tw->one(1))));
  for (unsigned i = 0; i < n2; i++)
    for (unsigned j = 0; j < n2; j++)
      for (unsigned k = 0; k < n2; k++)
        out[i][j][k] = rho.v[i][j] * rho.v[td.add_tab[i][j]][k] /
                       (rho.v[i][td.add_tab[j][k]] * rho.v[j][k]);
  return out;
}

bool partial2_trivial(const Tower* tw, const TorsionData& td, const TensorElement& rho) {
  (void)tw;
  unsigned n2 = (unsigned)td.pts.size();
  for (unsigned i = 0; i < n2; i++)
    for (unsigned j = 0; j < n2; j++)
      for (unsigned k = 0; k < n2; k++) {
        FF lhs = rho.v[i][j] * rho.v[td.add_tab[i][j]][k];
        FF rhs = rho.v[i][td.add_tab[j][k]] * rho.v[j][k];
        if (!(lhs == rhs)) return false;
      }
  return true;
}

EtaleElement w_map(const Tower* tw, const TorsionData& td, unsigned S) {
  EtaleElement r = constant_element(tw, td, tw->one(td.m), false);
  for (unsigned t = 0; t < td.pts.size(); t++) r.v[t] = td.pairing[S][t];
  return r;
}

TensorElement weil_tensor(const Tower* tw, const TorsionData& td) {
  TensorElement e = constant_tensor(tw, td, tw->one(td.m), true);
  for (unsigned i = 0; i < td.pts.size(); i++)
    for (unsigned j = 0; j < td.pts.size(); j++) e.v[i][j] = td.pairing[i][j];
  return e;
}

EtaleElement trace_R2_to_R(const Tower* tw, const TorsionData& td, const TensorElement& rho) {
  unsigned n2 = (unsigned)td.pts.size();
  EtaleElement r = constant_element(tw, td, tw->zero(1), rho.rational);
  for (unsigned t = 0; t < n2; t++) {
    FF s = tw->zero(1);
    for (unsigned i = 0; i < n2; i++)
      for (unsigned j = 0; j < n2; j++)
        if (td.add_tab[i][j] == t) s = s + rho.v[i][j];
    r.v[t] = s;
  }
  return r;
}

TensorElement comult(const Tower* tw, const TorsionData& td, const EtaleElement& a) {
  unsigned n2 = (unsigned)td.pts.size();
  TensorElement r = constant_tensor(tw, td, tw->zero(1), a.rational);
  for (unsigned i = 0; i < n2; i++)
    for (unsigned j = 0; j < n2; j++) r.v[i][j] = a.v[td.add_tab[i][j]];
  return r;
}

EtaleElement fourier(const Tower* tw, const TorsionData& td, const EtaleElement& a) {
  unsigned n2 = (unsigned)td.pts.size();
  FF inv_n2 = tw->from_int(n2 % tw->p()).inv();
  EtaleElement r = constant_element(tw, td, tw->zero(td.m), a.rational);
  for (unsigned s = 0; s < n2; s++) {
    FF acc = tw->zero(td.m);
    for (unsigned t = 0; t < n2; t++) acc = acc + td.pairing[s][t] * a.v[t];
    r.v[s] = acc * inv_n2;
  }
  return r;
}

EtaleElement convolve(const Tower* tw, const TorsionData& td, const TensorElement& rho,
                      const EtaleElement& a, const EtaleElement& b) {
  unsigned n2 = (unsigned)td.pts.size();
  EtaleElement r = constant_element(tw, td, tw->zero(1), rho.rational && a.rational && b.rational);
  for (unsigned t = 0; t < n2; t++) r.v[t] = tw->zero(1);
  for (unsigned i = 0; i < n2; i++)
    for (unsigned j = 0; j < n2; j++) {
      unsigned t = td.add_tab[i][j];
      r.v[t] = r.v[t] + rho.v[i][j] * a.v[i] * b.v[j];
    }
  return r;
}

bool is_in_H(const Tower* tw, const TorsionData& td, const TensorElement& rho) {
  if (!rho.invertible()) return false;
  if (!(rho == rho.op())) return false;
  return partial2_trivial(tw, td, rho);
}

bool is_in_theta_coset(const Tower* tw, const TorsionData& td, const TensorElement& rho,
                       const TensorElement& e) {
  if (!rho.invertible()) return false;
  if (!(rho / rho.op() == e)) return false;
  return partial2_trivial(tw, td, rho);
}

// ---------------------------------------------------------------------------
// Hilbert 90 and descent classes

Cocycle cocycle_from_torsion_value(const Tower* tw, const TorsionData& td, unsigned xi_idx, unsigned mprime) {
  Cocycle c;
  c.mprime = mprime;
  c.c.resize(mprime, constant_element(tw, td, tw->one(td.m), false));
  if (mprime > 1) {
    EtaleElement c1 = w_map(tw, td, xi_idx);
    c.c[1] = c1;
    for (unsigned j = 2; j < mprime; j++) c.c[j] = c1 * galois_act(tw, td, c.c[j - 1], 1);
    EtaleElement closure = c1 * galois_act(tw, td, c.c[mprime - 1], 1);
    for (auto& x : closure.v)
      if (!(x == tw->one(x.degree()))) throw error("cocycle: closure fails (twisted norm != 1)");
  }
  return c;
}

EtaleElement hilbert90(const Tower* tw, const TorsionData& td, const Cocycle& c, unsigned field_deg) {
  tw->extend(field_deg);
  for (int tries = 0; tries < 64; tries++) {
    EtaleElement theta = constant_element(tw, td, tw->zero(field_deg), false);
    for (auto& x : theta.v) x = tw->random_element(field_deg);
    EtaleElement acc = constant_element(tw, td, tw->zero(field_deg), false);
    for (unsigned j = 0; j < c.mprime; j++) {
      EtaleElement term = galois_act(tw, td, theta, j);
      for (unsigned t = 0; t < acc.v.size(); t++) acc.v[t] = acc.v[t] + c.c[j].v[t] * term.v[t];
    }
    if (!acc.invertible()) continue;
    EtaleElement gamma = acc.inv();
    // orientation: sigma(gamma)/gamma = c_sigma
    EtaleElement chk = galois_act(tw, td, gamma, 1) / gamma;
    if (c.mprime > 1 && !(chk == c.c[1])) throw error("hilbert90: orientation check failed");
    return gamma;
  }
  throw error("hilbert90: resolvent degenerate after bounded retries");
}

static void normalize_class(const Tower* tw, const TorsionData& td, EtaleElement& gamma) {
  // scale gamma by the rational constant gamma(O)^-1 so rho(O,O) = 1
  FF g0 = gamma.v[td.origin()];
  if (!g0.in_prime_field()) {
    auto e = tw->extract(g0, 1);
    if (!e) throw error("normalize_class: gamma(O) not rational");
    g0 = *e;
  }
  FF inv = g0.inv();
  for (auto& x : gamma.v) x = x * inv;
}

static DescentClass finish_class(const Tower* tw, const TorsionData& td, EtaleElement gamma,
                                 unsigned gamma_field, std::string provenance) {
  normalize_class(tw, td, gamma);
  TensorElement rho = partial1(tw, td, gamma);
  EtaleElement alpha = gamma.pow(td.n);
  if (!is_equivariant(tw, td, rho)) throw error("descent class: rho not rational");
  if (!is_equivariant(tw, td, alpha)) throw error("descent class: alpha not rational");
  // rational values live in L; pull them down
  for (auto& row : rho.v)
    for (auto& x : row) {
      auto e = tw->extract(x, td.m);
      if (!e) throw error("descent class: rho value outside L");
      x = *e;
    }
  for (auto& x : alpha.v) {
    auto e = tw->extract(x, td.m);
    if (!e) throw error("descent class: alpha value outside L");
    x = *e;
  }
  rho.rational = alpha.rational = true;
  if (!is_in_H(tw, td, rho)) throw error("descent class: rho not in H");
  DescentClass D;
  D.rho = rho;
  D.alpha = alpha;
  D.gamma = gamma;
  D.gamma_field = gamma_field;
  D.provenance = std::move(provenance);
  return D;
}

DescentClass trivial_class(const Tower* tw, const TorsionData& td) {
  EtaleElement gamma = constant_element(tw, td, tw->one(td.m), true);
  return finish_class(tw, td, gamma, td.m, "trivial");
}

DescentClass class_from_cocycle(const Tower* tw, const Curve& E, const TorsionData& td, unsigned xi_idx) {
  (void)E;
  if (xi_idx == td.origin()) return trivial_class(tw, td);
  Cocycle c = cocycle_from_torsion_value(tw, td, xi_idx, td.m);
  EtaleElement gamma = hilbert90(tw, td, c, td.m);
  return finish_class(tw, td, gamma, td.m, "cocycle");
}

DescentClass class_from_point(const Tower* tw, const Curve& E, const TorsionData& td, const Point& P) {
  unsigned n = td.n;
  if (P.inf) return trivial_class(tw, td);
  if (!on_curve(E, P) || P.x.degree() != 1) throw error("class_from_point: P must be rational on E");
  // preimage Q with nQ = P, over a controlled extension
  FPoly N = preimage_poly(E, n, P.x);
  auto fac = poly_factor(N);
  unsigned dx = (unsigned)fac.factors[0].f.deg();
  tw->extend(dx);
  auto rts = poly_roots(fac.factors[0].f.lifted(dx));
  if (rts.empty()) throw error("class_from_point: no root in expected field");
  FF xq = *std::min_element(rts.begin(), rts.end());
  FF r = xq * xq * xq + tw->embed(E.a4, dx) * xq + tw->embed(E.a6, dx);
  unsigned dq = dx;
  std::optional<FF> yq;
  if (r.is_zero())
    yq = tw->zero(dx);
  else {
    yq = tw->nth_root(r, 2);
    if (!yq) {
      dq = 2 * dx;
      tw->extend(dq);
      yq = tw->nth_root(tw->embed(r, dq), 2);
      if (!yq) throw error("class_from_point: square root failure");
    }
  }
  Point Q = Point::affine(tw->embed(xq, dq), *yq);
  Point nQ = ec_mul(E, (long)n, Q);
  if (!(nQ.x == P.x)) throw error("class_from_point: preimage check failed");
  if (!(nQ == Point::affine(tw->embed(P.x, nQ.x.degree()), tw->embed(P.y, nQ.y.degree())))) Q = ec_neg(E, Q);
  unsigned mprime = std::lcm(td.m, dq);
  tw->extend(mprime);
  // cocycle value at Frobenius: xi = phi(Q) - Q in E[n]
  Point xi = ec_add(E, frob_point(E, Q), ec_neg(E, Q));
  if (!ec_mul(E, (long)n, xi).inf) throw error("class_from_point: cocycle value not n-torsion");
  unsigned xi_idx = td.pts.size();
  for (unsigned i = 0; i < td.pts.size(); i++)
    if (td.pts[i] == xi) xi_idx = i;
  if (xi_idx == td.pts.size()) throw error("class_from_point: cocycle value not found in torsion list");
  Cocycle c = cocycle_from_torsion_value(tw, td, xi_idx, mprime);
  EtaleElement gamma = hilbert90(tw, td, c, mprime);
  return finish_class(tw, td, gamma, mprime, "point");
}

// ---------------------------------------------------------------------------
// solving d(gamma) = rho, kappa, power classes

EtaleElement cyclic_alpha(const Tower* tw, const TorsionData& td, const TensorElement& rho) {
  unsigned n = td.n;
  EtaleElement a = constant_element(tw, td, tw->one(1), rho.rational);
  for (unsigned t = 0; t < td.pts.size(); t++) {
    FF prod = tw->one(1);
    unsigned cur = td.origin();  // iT for i = 0
    for (unsigned i = 0; i < n; i++) {
      prod = prod * rho.v[t][cur];
      cur = td.add_tab[cur][t];
    }
    a.v[t] = prod;
  }
  return a;
}

EtaleElement solve_partial(const Tower* tw, const TorsionData& td, const TensorElement& rho) {
  unsigned n = td.n;
  EtaleElement alpha = cyclic_alpha(tw, td, rho);
  // common value field
  unsigned D = 1;
  for (auto& row : rho.v)
    for (auto& x : row) D = std::lcm(D, x.degree());
  D = std::lcm(D, td.m);
  auto root_of = [&](const FF& a) -> FF {
    FF av = tw->embed(a, D);
    auto r = tw->nth_root(av, n);
    unsigned Dr = D;
    while (!r) {
      Dr *= n;
      if (Dr > 4096) throw error("solve_partial: root field too large");
      tw->extend(Dr);
      r = tw->nth_root(tw->embed(av, Dr), n);
    }
    return *r;
  };
  FF gS = root_of(alpha.v[td.iS]);
  FF gT = root_of(alpha.v[td.iT]);
  unsigned Dg = std::lcm(std::lcm(gS.degree(), gT.degree()), D);
  tw->extend(Dg);
  gS = tw->embed(gS, Dg);
  gT = tw->embed(gT, Dg);

  EtaleElement gamma = constant_element(tw, td, tw->zero(Dg), false);
  std::vector<bool> have(td.pts.size(), false);
  unsigned O = td.origin();
  gamma.v[O] = tw->embed(rho.v[O][O], Dg);
  have[O] = true;
  gamma.v[td.iS] = gS;
  have[td.iS] = true;
  if (td.iT != td.iS) {
    gamma.v[td.iT] = gT;
    have[td.iT] = true;
  }
  // extend multiplicatively along S then T
  for (unsigned a = 0; a < n; a++)
    for (unsigned b = 0; b < n; b++) {
      unsigned idx = td.idx(a, b);
      if (have[idx]) continue;
      unsigned prev, gen;
      if (a > 0) {
        prev = td.idx(a - 1, b);
        gen = td.iS;
      } else {
        prev = td.idx(a, b - 1);
        gen = td.iT;
      }
      if (!have[prev]) throw error("solve_partial: ordering bug");
      gamma.v[idx] = gamma.v[gen] * gamma.v[prev] / tw->embed(rho.v[gen][prev], Dg);
      have[idx] = true;
    }
  // closure: d(gamma) = rho exactly
  TensorElement chk = partial1(tw, td, gamma);
  for (unsigned i = 0; i < td.pts.size(); i++)
    for (unsigned j = 0; j < td.pts.size(); j++)
      if (!(chk.v[i][j] == rho.v[i][j]))
        throw error("solve_partial: closure failure (rho not in H)");
  return gamma;
}

EtaleElement kappa(const Tower* tw, const TorsionData& td, const TensorElement& rho) {
  EtaleElement gamma = solve_partial(tw, td, rho);
  EtaleElement alpha = gamma.pow(td.n);
  EtaleElement direct = cyclic_alpha(tw, td, rho);
  for (unsigned t = 0; t < td.pts.size(); t++)
    if (!(alpha.v[t] == direct.v[t])) throw error("kappa: gamma^n != cyclic alpha");
  alpha.rational = rho.rational;
  return alpha;
}

static u64 component_gcd(const Tower* tw, unsigned n, unsigned d) {
  // gcd(n, p^d - 1) via p^d - 1 mod n
  u64 t = 1;
  for (unsigned i = 0; i < d; i++) t = (t * (tw->p() % n)) % n;
  u64 r = (t + n - 1) % n;
  return r == 0 ? n : std::gcd<u64>(n, r);
}

bool power_class_trivial(const Tower* tw, const TorsionData& td, const EtaleBasis& B, const EtaleElement& a) {
  for (const auto& orb : B.orbits) {
    unsigned rep = orb[0];
    unsigned d = (unsigned)orb.size();
    FF x = a.v[rep];
    if (!tw->in_subfield(x, d)) throw error("power_class: value outside component field");
    u64 g = component_gcd(tw, td.n, d);
    if (g == 1) continue;  // component group has no n-part: always an n-th power
    FF chi = x.pow_subgroup_exponent(d, g);
    if (!(chi == tw->one(chi.degree()))) return false;
  }
  return true;
}

bool power_class_equal(const Tower* tw, const TorsionData& td, const EtaleBasis& B, const EtaleElement& a,
                       const EtaleElement& b) {
  return power_class_trivial(tw, td, B, a / b);
}

std::vector<unsigned> power_class_label(const Tower* tw, const TorsionData& td, const EtaleBasis& B,
                                        const EtaleElement& a) {
  std::vector<unsigned> labels;
  FF zeta = td.zeta;
  for (const auto& orb : B.orbits) {
    unsigned rep = orb[0];
    unsigned d = (unsigned)orb.size();
    FF x = a.v[rep];
    u64 g = component_gcd(tw, td.n, d);
    if (g == 1) {
      labels.push_back(0);
      continue;
    }
    FF chi = x.pow_subgroup_exponent(d, g);
    // chi lies in mu_g <= mu_n; label it as a power of zeta^(n/g)
    FF base = zeta.pow(td.n / g);
    unsigned lab = g;
    FF cur = tw->one(1);
    for (unsigned k2 = 0; k2 < g; k2++) {
      if (chi == cur) {
        lab = k2;
        break;
      }
      cur = cur * base;
    }
    if (lab == g) throw error("power_class_label: chi not a power of the reference root");
    labels.push_back(lab);
  }
  return labels;
}

bool same_H_class(const Tower* tw, const TorsionData& td, const TensorElement& rho1, const TensorElement& rho2) {
  TensorElement ratio = rho1 / rho2;
  EtaleElement gamma = solve_partial(tw, td, ratio);
  for (unsigned s = 0; s < td.pts.size(); s++) {
    EtaleElement tw_gamma = w_map(tw, td, s) * gamma;
    if (is_equivariant(tw, td, tw_gamma)) return true;
  }
  return false;
}

}  // namespace descent
