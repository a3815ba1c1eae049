#include "descent/flex.hpp"

#include <algorithm>
#include <numeric>

#include "descent/poly.hpp"

namespace descent {

FMat fmat_mul(const AlgebraK& F, const FMat& X, const FMat& Y) {
  FMat R;
  R.n = X.n;
  R.dim = X.dim;
  R.e.assign((std::size_t)R.n * R.n, std::vector<u64>(R.dim, 0));
  Zp zp = F.tw->zp();
  for (unsigned a = 0; a < R.n; a++)
    for (unsigned b = 0; b < R.n; b++) {
      std::vector<u64> acc(R.dim, 0);
      for (unsigned k = 0; k < R.n; k++) {
        auto prod = F.mul(X.at(a, k), Y.at(k, b));
        for (unsigned t = 0; t < R.dim; t++) acc[t] = zp.add(acc[t], prod[t]);
      }
      R.at(a, b) = acc;
    }
  return R;
}

bool fmat_equal(const FMat& X, const FMat& Y) { return X.e == Y.e; }

// ---------------------------------------------------------------------------
// etale decomposition

EtaleDecomposition etale_decompose(const AlgebraK& F, u64 seed) {
  if (!F.is_commutative()) throw error("etale_decompose: algebra not commutative");
  const Tower* tw = F.tw;
  Zp zp = tw->zp();
  std::mt19937_64 rng(seed ^ 0xa0761d6478bd642fULL);

  struct Block {
    std::vector<u64> idem;
    std::vector<std::vector<u64>> basis;
  };
  auto block_of = [&](const std::vector<u64>& idem) {
    Block b;
    b.idem = idem;
    b.basis = F.left_ideal_basis(idem);
    return b;
  };
  auto minpoly_rel = [&](const Block& blk, const std::vector<u64>& b) {
    std::vector<std::vector<u64>> powers{blk.idem};
    for (;;) {
      FpMat m(zp, F.dim, powers.size());
      for (std::size_t j = 0; j < powers.size(); j++)
        for (unsigned i = 0; i < F.dim; i++) m.at(i, j) = powers[j][i];
      auto next = F.mul(powers.back(), b);
      auto sol = m.solve(next);
      if (sol) {
        std::vector<u64> mu(powers.size() + 1, 0);
        for (std::size_t j = 0; j < sol->size(); j++) mu[j] = zp.neg((*sol)[j]);
        mu[powers.size()] = 1;
        return mu;
      }
      powers.push_back(next);
      if (powers.size() > F.dim + 1) throw error("etale_decompose: dependence search failed");
    }
  };

  EtaleDecomposition out;
  std::vector<Block> todo{block_of(F.unit)};
  int guard = 0;
  while (!todo.empty()) {
    if (++guard > 4096) throw error("etale_decompose: no progress");
    Block blk = todo.back();
    todo.pop_back();
    unsigned dim = (unsigned)blk.basis.size();
    bool handled = false;
    for (int tries = 0; tries < 128 && !handled; tries++) {
      std::vector<u64> b(F.dim, 0);
      for (auto& row : blk.basis) {
        u64 s = rng() % zp.p;
        for (unsigned k = 0; k < F.dim; k++) b[k] = zp.add(b[k], zp.mul(s, row[k]));
      }
      std::vector<u64> mu = minpoly_rel(blk, b);
      std::vector<FF> muc;
      for (u64 v : mu) muc.push_back(tw->from_int(v));
      FPoly mupoly(tw, 1, muc);
      auto fac = poly_factor(mupoly);
      for (auto& fm : fac.factors)
        if (fm.mult > 1) throw error("etale_decompose: nilpotents present (algebra not etale)");
      if (fac.factors.size() == 1) {
        if ((unsigned)fac.factors[0].f.deg() != dim) continue;  // b does not generate; redraw
        EtaleComponent comp;
        comp.idem = blk.idem;
        comp.deg = dim;
        comp.basis.push_back(blk.idem);
        std::vector<u64> pw = blk.idem;
        for (unsigned k = 1; k < dim; k++) {
          pw = F.mul(pw, b);
          comp.basis.push_back(pw);
        }
        tw->extend(dim);
        auto rts = poly_roots(fac.factors[0].f.lifted(dim));
        if (rts.empty()) throw error("etale_decompose: defining root missing");
        comp.beta = *std::min_element(rts.begin(), rts.end());
        comp.beta_powers = FpMat(zp, dim, dim);
        FF cur = tw->one(dim);
        for (unsigned k = 0; k < dim; k++) {
          for (unsigned i = 0; i < dim; i++) comp.beta_powers.at(i, k) = cur.coeffs()[i];
          cur = cur * comp.beta;
        }
        out.comps.push_back(std::move(comp));
        handled = true;
        break;
      }
      for (auto& fm : fac.factors) {
        FPoly g = mupoly / fm.f;
        FPoly r0 = fm.f.monic(), r1 = g % fm.f;
        FPoly t0(tw, 1), t1 = FPoly::constant(tw->one(1));
        while (!r1.is_zero()) {
          auto [q, rr] = r0.divrem(r1);
          FPoly t2 = t0 - q * t1;
          t0 = t1;
          t1 = t2;
          r0 = r1;
          r1 = rr;
        }
        if (r0.deg() != 0) throw error("etale_decompose: factors not coprime");
        FPoly idem_poly = t0.scaled(r0[0].inv()) * g;
        std::vector<u64> idem(F.dim, 0);
        std::vector<u64> pw = blk.idem;
        for (int i = 0; i <= idem_poly.deg(); i++) {
          u64 cf = idem_poly[i].const_coeff();
          for (unsigned k = 0; k < F.dim; k++) idem[k] = zp.add(idem[k], zp.mul(cf, pw[k]));
          pw = F.mul(pw, b);
        }
        if (F.mul(idem, idem) != idem) throw error("etale_decompose: CRT element not idempotent");
        todo.push_back(block_of(idem));
      }
      handled = true;
    }
    if (!handled) throw error("etale_decompose: generator search exhausted");
  }
  std::sort(out.comps.begin(), out.comps.end(), [](const EtaleComponent& a, const EtaleComponent& b) {
    if (a.deg != b.deg) return a.deg < b.deg;
    return a.idem < b.idem;
  });
  return out;
}

FF component_value(const AlgebraK& F, const EtaleDecomposition& dec, unsigned j, const std::vector<u64>& x) {
  const Tower* tw = F.tw;
  Zp zp = tw->zp();
  const EtaleComponent& comp = dec.comps[j];
  // coordinates of x*e over the power basis of b
  std::vector<u64> xe = F.mul(x, comp.idem);
  FpMat basis(zp, F.dim, comp.deg);
  for (unsigned k = 0; k < comp.deg; k++)
    for (unsigned i = 0; i < F.dim; i++) basis.at(i, k) = comp.basis[k][i];
  auto coords = basis.solve(xe);
  if (!coords) throw error("component_value: projection failed");
  // map b^k -> beta^k
  std::vector<u64> out = comp.beta_powers.apply(*coords);
  return tw->make(comp.deg, out);
}

std::vector<u64> component_lift(const AlgebraK& F, const EtaleDecomposition& dec, unsigned j, const FF& v) {
  const EtaleComponent& comp = dec.comps[j];
  if (v.degree() != comp.deg) throw error("component_lift: wrong field degree");
  auto coords = comp.beta_powers.solve(v.coeffs());
  if (!coords) throw error("component_lift: beta powers singular");
  Zp zp = F.tw->zp();
  std::vector<u64> out(F.dim, 0);
  for (unsigned k = 0; k < comp.deg; k++)
    for (unsigned i = 0; i < F.dim; i++) out[i] = zp.add(out[i], zp.mul((*coords)[k], comp.basis[k][i]));
  return out;
}

FlexAlgebra flex_algebra(CurveContext& ctx, const TensorElement& rho) {
  FlexAlgebra FA;
  FA.F = enveloping_algebra(ctx.B, rho);
  if (!FA.F.is_commutative()) throw error("flex_algebra: rho not symmetric");
  FA.dec = etale_decompose(FA.F, ctx.seed);
  unsigned total = 0;
  for (auto& c : FA.dec.comps) total += c.deg;
  if (total != FA.F.dim) throw error("flex_algebra: component degrees do not sum to the dimension");
  return FA;
}

FMat tau_prime(CurveContext& ctx, const std::vector<u64>& x_coords) {
  const Tower* tw = &ctx.tw;
  unsigned n = ctx.td.n, dim = (unsigned)ctx.B.r.size();
  FMat out;
  out.n = n;
  out.dim = dim;
  out.e.assign((std::size_t)n * n, std::vector<u64>(dim, 0));
  EtaleElement x = from_k_coords(ctx.B, x_coords);
  Zp zp = tw->zp();
  for (unsigned i = 0; i < dim; i++) {
    EtaleElement prod = ctx.B.rdual[i] * x;  // pointwise product in R
    prod.rational = true;
    FpMat img = apply_split_iso(ctx.t1, to_k_coords(ctx.B, prod), zp);
    for (unsigned a = 0; a < n; a++)
      for (unsigned b = 0; b < n; b++) out.at(a, b)[i] = zp.add(out.at(a, b)[i], img.at(a, b));
  }
  return out;
}

FMat solve_B(CurveContext& ctx, const FlexAlgebra& FA, const ClassMethods& cm) {
  const Tower* tw = &ctx.tw;
  unsigned n = ctx.td.n, dim = (unsigned)ctx.B.r.size();
  Zp zp = tw->zp();
  // tau'(r_i) for each basis element
  std::vector<FMat> tp(dim);
  for (unsigned i = 0; i < dim; i++) {
    std::vector<u64> bi(dim, 0);
    bi[i] = 1;
    tp[i] = tau_prime(ctx, bi);
  }
  FMat B;
  B.n = n;
  B.dim = dim;
  B.e.assign((std::size_t)n * n, std::vector<u64>(dim, 0));
  for (unsigned j = 0; j < FA.dec.comps.size(); j++) {
    unsigned d = FA.dec.comps[j].deg;
    tw->extend(d);
    // intertwiner system over F_{p^d}: X tau_rho(r_i) = tau'_j(r_i) X
    Mat sys(tw, d, (std::size_t)dim * n * n, (std::size_t)n * n);
    std::size_t row = 0;
    for (unsigned i = 0; i < dim; i++) {
      // project tau'(r_i) entries into the component field
      Mat tpi(tw, d, n, n);
      for (unsigned a = 0; a < n; a++)
        for (unsigned b = 0; b < n; b++) tpi.at(a, b) = component_value(FA.F, FA.dec, j, tp[i].at(a, b));
      for (unsigned a = 0; a < n; a++)
        for (unsigned b = 0; b < n; b++) {
          for (unsigned u = 0; u < n; u++)
            for (unsigned v = 0; v < n; v++) {
              FF coef = tw->zero(d);
              if (u == a) coef = coef + tw->from_int(cm.tau_rho.tau[i].at(v, b), d);
              if (v == b) coef = coef - tpi.at(a, u);
              sys.at(row, u * n + v) = coef;
            }
          row++;
        }
    }
    auto ker = sys.kernel();
    if (ker.size() != 1) throw error("solve_B: intertwiner space not one-dimensional");
    Mat X(tw, d, n, n);
    for (unsigned u = 0; u < n; u++)
      for (unsigned v = 0; v < n; v++) X.at(u, v) = ker[0][u * n + v];
    if (X.det().is_zero()) throw error("solve_B: non-invertible intertwiner");
    for (unsigned u = 0; u < n; u++)
      for (unsigned v = 0; v < n; v++) {
        auto lifted = component_lift(FA.F, FA.dec, j, X.at(u, v));
        for (unsigned t = 0; t < dim; t++) B.at(u, v)[t] = zp.add(B.at(u, v)[t], lifted[t]);
      }
  }
  // conjugation identity on all basis elements
  for (unsigned i = 0; i < dim; i++) {
    FMat taurho_i;
    taurho_i.n = n;
    taurho_i.dim = dim;
    taurho_i.e.assign((std::size_t)n * n, std::vector<u64>(dim, 0));
    for (unsigned a = 0; a < n; a++)
      for (unsigned b = 0; b < n; b++) {
        u64 val = cm.tau_rho.tau[i].at(a, b);
        for (unsigned t = 0; t < dim; t++)
          taurho_i.at(a, b)[t] = zp.mul(val, FA.F.unit[t]);
      }
    if (!fmat_equal(fmat_mul(FA.F, tp[i], B), fmat_mul(FA.F, B, taurho_i)))
      throw error("solve_B: conjugation identity fails");
  }
  return B;
}

static TernaryCubic extract_common_cubic(const Tower* tw, const std::vector<std::vector<FF>>& coord_cubics) {
  // coord_cubics: list of 10-coefficient K-cubics; all nonzero ones must be
  // proportional; return the normalized one
  std::optional<TernaryCubic> out;
  for (const auto& cc : coord_cubics) {
    bool nonzero = false;
    for (auto& x : cc)
      if (!x.is_zero()) nonzero = true;
    if (!nonzero) continue;
    TernaryCubic F{tw, cc};
    if (!out)
      out = F.normalized();
    else if (!out->proportional_to(F))
      throw error("transform_equations: coordinate cubics not proportional");
  }
  if (!out) throw error("transform_equations: all coordinate cubics vanish");
  return *out;
}

TernaryCubic transform_equations(CurveContext& ctx, const FlexAlgebra& FA, const FMat& B) {
  const Tower* tw = &ctx.tw;
  unsigned dim = B.dim;
  Zp zp = tw->zp();
  // f(B x): f = y^2 z - x^3 - a4 x z^2 - a6 z^3; rows of B give the linear forms
  // coefficients of the expansion live in F
  std::vector<std::vector<u64>> out10(10, std::vector<u64>(dim, 0));
  struct Term {
    u64 coef;
    unsigned rows[3];
  };
  u64 a4 = ctx.E.a4.const_coeff(), a6 = ctx.E.a6.const_coeff();
  std::vector<Term> fterms = {{1, {1, 1, 2}},                 // y^2 z
                              {zp.p - 1, {0, 0, 0}},          // -x^3
                              {zp.neg(a4), {0, 2, 2}},        // -a4 x z^2
                              {zp.neg(a6), {2, 2, 2}}};       // -a6 z^3
  for (const auto& t : fterms) {
    if (t.coef == 0) continue;
    for (unsigned j0 = 0; j0 < 3; j0++)
      for (unsigned j1 = 0; j1 < 3; j1++)
        for (unsigned j2 = 0; j2 < 3; j2++) {
          auto prod = FA.F.mul(FA.F.mul(B.at(t.rows[0], j0), B.at(t.rows[1], j1)), B.at(t.rows[2], j2));
          unsigned ex = (j0 == 0) + (j1 == 0) + (j2 == 0);
          unsigned ey = (j0 == 1) + (j1 == 1) + (j2 == 1);
          unsigned ez = (j0 == 2) + (j1 == 2) + (j2 == 2);
          for (unsigned k = 0; k < 10; k++)
            if (kCubicMonomials[k] == std::array<unsigned, 3>{ex, ey, ez}) {
              for (unsigned tt = 0; tt < dim; tt++)
                out10[k][tt] = zp.add(out10[k][tt], zp.mul(t.coef, prod[tt]));
              break;
            }
        }
  }
  // w-coordinates: one K-cubic per w-basis index
  std::vector<std::vector<FF>> coord_cubics(dim, std::vector<FF>(10, tw->zero(1)));
  for (unsigned t = 0; t < dim; t++)
    for (unsigned k = 0; k < 10; k++) coord_cubics[t][k] = tw->from_int(out10[k][t]);
  return extract_common_cubic(tw, coord_cubics);
}

TernaryCubic transform_equations_component(CurveContext& ctx, const FlexAlgebra& FA, const FMat& B, unsigned j) {
  const Tower* tw = &ctx.tw;
  unsigned d = FA.dec.comps[j].deg;
  tw->extend(d);
  Mat Bj(tw, d, 3, 3);
  for (unsigned a = 0; a < 3; a++)
    for (unsigned b = 0; b < 3; b++) Bj.at(a, b) = component_value(FA.F, FA.dec, j, B.at(a, b));
  TernaryCubic f = weierstrass_cubic(ctx.E);
  TernaryCubic fb = f.transformed(Bj);
  // coordinates over the K-power-basis of the component field
  std::vector<std::vector<FF>> coord_cubics(d, std::vector<FF>(10, tw->zero(1)));
  for (unsigned k = 0; k < 10; k++) {
    FF v = tw->extract(fb.c[k], d) ? *tw->extract(fb.c[k], d) : fb.c[k];
    for (unsigned t = 0; t < d; t++) coord_cubics[t][k] = tw->from_int(v.coeffs()[t]);
  }
  return extract_common_cubic(tw, coord_cubics);
}

FlexResult run_flex(CurveContext& ctx, const ClassMethods& cm) {
  FlexResult fr;
  fr.FA = flex_algebra(ctx, cm.cls.rho);
  fr.B = solve_B(ctx, fr.FA, cm);
  fr.cubic = transform_equations(ctx, fr.FA, fr.B);
  return fr;
}

}  // namespace descent
