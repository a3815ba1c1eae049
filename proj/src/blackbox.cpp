#include "descent/blackbox.hpp"

#include <random>

#include "descent/poly.hpp"

namespace descent {

namespace {

// factor a monic polynomial over F_p given as a raw coefficient vector
std::vector<std::pair<std::vector<u64>, unsigned>> factor_raw(const Tower* tw, const std::vector<u64>& poly) {
  std::vector<FF> c;
  for (u64 v : poly) c.push_back(tw->from_int(v));
  auto fac = poly_factor(FPoly(tw, 1, c));
  std::vector<std::pair<std::vector<u64>, unsigned>> out;
  for (auto& fm : fac.factors) {
    std::vector<u64> f;
    for (int i = 0; i <= fm.f.deg(); i++) f.push_back(fm.f[i].const_coeff());
    out.push_back({f, fm.mult});
  }
  return out;
}

std::vector<u64> poly_mul_raw(Zp zp, const std::vector<u64>& a, const std::vector<u64>& b) {
  std::vector<u64> r(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); i++)
    for (std::size_t j = 0; j < b.size(); j++) r[i + j] = zp.add(r[i + j], zp.mul(a[i], b[j]));
  return r;
}

std::vector<u64> poly_pow_raw(Zp zp, std::vector<u64> base, unsigned e) {
  std::vector<u64> r{1};
  while (e) {
    if (e & 1) r = poly_mul_raw(zp, r, base);
    base = poly_mul_raw(zp, base, base);
    e >>= 1;
  }
  return r;
}

// divide a by b (b monic), returning quotient
std::vector<u64> poly_div_raw(Zp zp, std::vector<u64> a, const std::vector<u64>& b) {
  std::vector<u64> q(a.size() >= b.size() ? a.size() - b.size() + 1 : 0, 0);
  while (a.size() >= b.size()) {
    u64 c = a.back();
    std::size_t shift = a.size() - b.size();
    q[shift] = c;
    for (std::size_t i = 0; i < b.size(); i++) a[shift + i] = zp.sub(a[shift + i], zp.mul(c, b[i]));
    while (!a.empty() && a.back() == 0) a.pop_back();
    if (a.empty()) break;
  }
  return q;
}

std::vector<u64> poly_mod_raw(Zp zp, std::vector<u64> a, const std::vector<u64>& b) {
  while (a.size() >= b.size()) {
    u64 c = a.back();
    std::size_t shift = a.size() - b.size();
    for (std::size_t i = 0; i < b.size(); i++) a[shift + i] = zp.sub(a[shift + i], zp.mul(c, b[i]));
    while (!a.empty() && a.back() == 0) a.pop_back();
  }
  return a;
}

// inverse of a modulo monic m (coprime), via extended euclid
std::vector<u64> poly_invmod_raw(Zp zp, std::vector<u64> a, std::vector<u64> m) {
  std::vector<u64> r0 = m, r1 = poly_mod_raw(zp, a, m);
  std::vector<u64> t0{}, t1{1};
  while (!r1.empty()) {
    // quotient of r0 by r1 (r1 not necessarily monic)
    std::vector<u64> q(r0.size() >= r1.size() ? r0.size() - r1.size() + 1 : 0, 0);
    std::vector<u64> rem = r0;
    u64 lcinv = zp.inv(r1.back());
    while (rem.size() >= r1.size()) {
      u64 c = zp.mul(rem.back(), lcinv);
      std::size_t shift = rem.size() - r1.size();
      q[shift] = c;
      for (std::size_t i = 0; i < r1.size(); i++) rem[shift + i] = zp.sub(rem[shift + i], zp.mul(c, r1[i]));
      while (!rem.empty() && rem.back() == 0) rem.pop_back();
      if (rem.empty()) break;
    }
    std::vector<u64> qt1 = t1.empty() ? std::vector<u64>{} : poly_mul_raw(zp, q, t1);
    std::vector<u64> t2(std::max(t0.size(), qt1.size()), 0);
    for (std::size_t i = 0; i < t0.size(); i++) t2[i] = t0[i];
    for (std::size_t i = 0; i < qt1.size(); i++) t2[i] = zp.sub(t2[i], qt1[i]);
    while (!t2.empty() && t2.back() == 0) t2.pop_back();
    t0 = std::move(t1);
    t1 = std::move(t2);
    r0 = std::move(r1);
    r1 = std::move(rem);
  }
  if (r0.size() != 1) throw error("poly_invmod_raw: not coprime");
  u64 s = zp.inv(r0[0]);
  for (auto& v : t0) v = zp.mul(v, s);
  return t0;
}

}  // namespace

SplitIsomorphism trivialize(const AlgebraK& A, u64 seed) {
  const Tower* tw = A.tw;
  Zp zp = tw->zp();
  unsigned n = 0;
  while (n * n < A.dim) n++;
  if (n * n != A.dim) throw error("trivialize: dimension is not a square");
  std::mt19937_64 rng(seed ^ 0xd1b54a32d192ed03ULL);

  std::vector<u64> e = A.unit;
  auto ideal_dim = [&](const std::vector<u64>& idem) { return A.left_ideal_basis(idem).size(); };

  int level_budget = 64;
  while (ideal_dim(e) > n) {
    auto corner = A.corner_basis(e);  // e A e, contains e as its identity
    bool refined = false;
    for (int tries = 0; tries < level_budget && !refined; tries++) {
      // random element of the corner algebra
      std::vector<u64> b(A.dim, 0);
      for (auto& row : corner) {
        u64 s = rng() % zp.p;
        for (unsigned k = 0; k < A.dim; k++) b[k] = zp.add(b[k], zp.mul(s, row[k]));
      }
      // minimal polynomial relative to the corner unit e
      std::vector<std::vector<u64>> powers{e};
      std::vector<u64> mu;
      for (;;) {
        FpMat m(zp, A.dim, powers.size());
        for (std::size_t j = 0; j < powers.size(); j++)
          for (unsigned i = 0; i < A.dim; i++) m.at(i, j) = powers[j][i];
        std::vector<u64> next = A.mul(powers.back(), b);
        auto sol = m.solve(next);
        if (sol) {
          mu.assign(powers.size() + 1, 0);
          for (std::size_t j = 0; j < sol->size(); j++) mu[j] = zp.neg((*sol)[j]);
          mu[powers.size()] = 1;
          break;
        }
        powers.push_back(next);
        if (powers.size() > A.dim + 1) throw error("trivialize: minimal polynomial search failed");
      }
      auto factors = factor_raw(tw, mu);
      if (factors.size() < 2) continue;  // irreducible or a single repeated factor: redraw
      // CRT idempotent for each factor; keep the one with the smallest ideal
      std::size_t best = ideal_dim(e);
      std::vector<u64> best_e;
      for (auto& [f, mult] : factors) {
        std::vector<u64> fe = poly_pow_raw(zp, f, mult);
        std::vector<u64> g = poly_div_raw(zp, mu, fe);
        std::vector<u64> u = poly_invmod_raw(zp, g, fe);
        std::vector<u64> idem_poly = poly_mul_raw(zp, u, g);
        // evaluate at b inside the corner algebra (powers of b, with e as 1)
        std::vector<u64> idem(A.dim, 0);
        std::vector<u64> pw = e;
        for (std::size_t i = 0; i < idem_poly.size(); i++) {
          for (unsigned k = 0; k < A.dim; k++) idem[k] = zp.add(idem[k], zp.mul(idem_poly[i], pw[k]));
          pw = A.mul(pw, b);
        }
        if (A.mul(idem, idem) != idem) throw error("trivialize: CRT element not idempotent");
        bool zero = true;
        for (u64 v : idem)
          if (v) zero = false;
        if (zero) continue;
        std::size_t d = ideal_dim(idem);
        if (d > 0 && d < best) {
          best = d;
          best_e = idem;
        }
      }
      if (!best_e.empty()) {
        e = best_e;
        refined = true;
      }
    }
    if (!refined) throw error("trivialize: input not split/central simple (refinement stalled)");
  }
  if (ideal_dim(e) != n) throw error("trivialize: input not split/central simple (bad ideal dimension)");
  // idempotent ledger: e^2 = e and dim(Ae) = n
  if (A.mul(e, e) != e) throw error("trivialize: final element not idempotent");

  // left-regular action of A on V = A e
  auto V = A.left_ideal_basis(e);
  FpMat Vm(zp, A.dim, n);
  for (unsigned j = 0; j < n; j++)
    for (unsigned i = 0; i < A.dim; i++) Vm.at(i, j) = V[j][i];
  SplitIsomorphism out;
  out.n = n;
  for (unsigned i = 0; i < A.dim; i++) {
    std::vector<u64> bi(A.dim, 0);
    bi[i] = 1;
    FpMat img(zp, n, n);
    for (unsigned j = 0; j < n; j++) {
      auto col = Vm.solve(A.mul(bi, V[j]));
      if (!col) throw error("trivialize: module action leaves the ideal");
      for (unsigned a = 0; a < n; a++) img.at(a, j) = (*col)[a];
    }
    out.tau.push_back(img);
  }
  if (!check_split_iso(A, out)) throw error("trivialize: verification failed (input not split?)");
  return out;
}

}  // namespace descent
