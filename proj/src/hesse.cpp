#include "descent/hesse.hpp"

#include <algorithm>
#include <numeric>

namespace descent {

TranslationMatrices matrices_from_tau(const EtaleBasis& B, const SplitIsomorphism& tau) {
  const Tower* tw = B.r[0].tw;
  const TorsionData& td = *B.td;
  unsigned n = td.n, n2 = (unsigned)td.pts.size();
  TranslationMatrices out;
  out.M.assign(n2, Mat());
  for (unsigned t = 0; t < n2; t++) {
    Mat M(tw, td.m, n, n);
    for (unsigned i = 0; i < n2; i++) {
      FF coef = B.rdual[i].v[t];
      if (coef.is_zero()) continue;
      for (unsigned a = 0; a < n; a++)
        for (unsigned b = 0; b < n; b++)
          M.at(a, b) = M.at(a, b) + coef * tw->from_int(tau.tau[i].at(a, b));
    }
    if (!M.inverse()) throw error("matrices_from_tau: singular matrix value");
    out.M[t] = M;
  }
  // hypotheses: T -> [M_T] is a homomorphism with commutator the Weil pairing
  for (unsigned i = 0; i < n2; i++)
    for (unsigned j = 0; j < n2; j++) {
      Mat prod = out.M[i] * out.M[j];
      auto cscale = out.M[td.add_tab[i][j]].proportionality(prod);
      if (!cscale) throw error("matrices_from_tau: homomorphism hypothesis fails");
      Mat comm = prod * *(out.M[j] * out.M[i]).inverse();
      Mat expect = Mat::identity(tw, td.m, n).scaled(td.pairing[i][j]);
      if (!(comm == expect)) throw error("matrices_from_tau: commutator hypothesis fails");
    }
  return out;
}

namespace {

// product of three linear forms (coefficient triples) as a TernaryCubic
void accumulate_form_product(std::vector<FF>& out, const FF l0[3], const FF l1[3], const FF l2[3],
                             const FF& sign) {
  for (unsigned j0 = 0; j0 < 3; j0++)
    for (unsigned j1 = 0; j1 < 3; j1++)
      for (unsigned j2 = 0; j2 < 3; j2++) {
        FF term = sign * l0[j0] * l1[j1] * l2[j2];
        if (term.is_zero()) continue;
        unsigned ex = (j0 == 0) + (j1 == 0) + (j2 == 0);
        unsigned ey = (j0 == 1) + (j1 == 1) + (j2 == 1);
        unsigned ez = (j0 == 2) + (j1 == 2) + (j2 == 2);
        for (unsigned k = 0; k < 10; k++)
          if (kCubicMonomials[k] == std::array<unsigned, 3>{ex, ey, ez}) {
            out[k] = out[k] + term;
            break;
          }
      }
}

}  // namespace

Pencil pencil_from_M(const EtaleBasis& B, const TranslationMatrices& M) {
  const Tower* tw = B.r[0].tw;
  const TorsionData& td = *B.td;
  unsigned n2 = (unsigned)td.pts.size();
  // det_T(x,y,z) = |v, M_T v, M_T^2 v| as a cubic over L, per torsion index
  std::vector<std::vector<FF>> detT(n2, std::vector<FF>(10, tw->zero(td.m)));
  static const int perms[6][4] = {{0, 1, 2, 1}, {1, 2, 0, 1}, {2, 0, 1, 1}, {2, 1, 0, -1}, {1, 0, 2, -1}, {0, 2, 1, -1}};
  for (unsigned t = 0; t < n2; t++) {
    Mat M2 = M.M[t] * M.M[t];
    // columns: identity, M_T, M_T^2; column c row r = linear form
    auto lf = [&](unsigned col, unsigned row, FF out3[3]) {
      for (unsigned j = 0; j < 3; j++) {
        if (col == 0)
          out3[j] = (row == j) ? tw->one(td.m) : tw->zero(td.m);
        else if (col == 1)
          out3[j] = M.M[t].at(row, j);
        else
          out3[j] = M2.at(row, j);
      }
    };
    for (auto& pm : perms) {
      FF a[3], b[3], c[3];
      lf(0, (unsigned)pm[0], a);
      lf(1, (unsigned)pm[1], b);
      lf(2, (unsigned)pm[2], c);
      FF sign = pm[3] == 1 ? tw->one(td.m) : -tw->one(td.m);
      accumulate_form_product(detT[t], a, b, c, sign);
    }
  }
  // F_i = sum_T det_T rdual_i(T), coefficients in K
  Zp zp = tw->zp();
  FpMat coeffs(zp, n2, 10);
  for (unsigned i = 0; i < n2; i++)
    for (unsigned k = 0; k < 10; k++) {
      FF s = tw->zero(td.m);
      for (unsigned t = 0; t < n2; t++) s = s + detT[t][k] * B.rdual[i].v[t];
      if (!s.in_prime_field()) throw error("pencil_from_M: coefficient not rational");
      coeffs.at(i, k) = s.const_coeff();
    }
  auto piv = coeffs.rref();
  if (piv.size() != 2) throw error("pencil_from_M: span dimension != 2");
  Pencil P;
  P.F1 = TernaryCubic{tw, std::vector<FF>(10, tw->zero(1))};
  P.F2 = P.F1;
  for (unsigned k = 0; k < 10; k++) {
    P.F1.c[k] = tw->from_int(coeffs.at(0, k));
    P.F2.c[k] = tw->from_int(coeffs.at(1, k));
  }
  return P;
}

unsigned nu_E3(const Curve& E, const TorsionData& td) {
  // Aut_K(E[3]) = centralizer of the Frobenius matrix in SL_2(Z/3)
  auto mul2 = [](const std::array<unsigned, 4>& A, const std::array<unsigned, 4>& Bm) {
    return std::array<unsigned, 4>{(A[0] * Bm[0] + A[1] * Bm[2]) % 3, (A[0] * Bm[1] + A[1] * Bm[3]) % 3,
                                   (A[2] * Bm[0] + A[3] * Bm[2]) % 3, (A[2] * Bm[1] + A[3] * Bm[3]) % 3};
  };
  std::array<unsigned, 4> F{td.frob_mat[0][0], td.frob_mat[0][1], td.frob_mat[1][0], td.frob_mat[1][1]};
  unsigned cent = 0;
  for (unsigned a = 0; a < 3; a++)
    for (unsigned b = 0; b < 3; b++)
      for (unsigned c = 0; c < 3; c++)
        for (unsigned d = 0; d < 3; d++) {
          if ((3 + a * d % 3 + 3 - b * c % 3) % 3 != 1) continue;  // det = 1
          std::array<unsigned, 4> X{a, b, c, d};
          if (mul2(X, F) == mul2(F, X)) cent++;
        }
  // Aut_K(E): units u with u^4 a4 = a4 and u^6 a6 = a6
  const Tower* tw = E.tw;
  unsigned autE = 0;
  for (u64 u = 1; u < tw->p(); u++) {
    FF uf = tw->from_int(u);
    if (uf.pow(4) * E.a4 == E.a4 && uf.pow(6) * E.a6 == E.a6) autE++;
  }
  if (cent % autE != 0) throw error("nu_E3: automorphisms do not divide the centralizer");
  return cent / autE;
}

namespace {

std::vector<u64> binary_mul(Zp zp, const std::vector<u64>& A, const std::vector<u64>& Bv) {
  std::vector<u64> r(A.size() + Bv.size() - 1, 0);
  for (std::size_t i = 0; i < A.size(); i++)
    for (std::size_t j = 0; j < Bv.size(); j++) r[i + j] = zp.add(r[i + j], zp.mul(A[i], Bv[j]));
  return r;
}

}  // namespace

std::vector<TernaryCubic> select_member(const Pencil& pencil, const Curve& E, const EtaleBasis& B,
                                        const TranslationMatrices& M) {
  const Tower* tw = E.tw;
  const TorsionData& td = *B.td;
  Zp zp = tw->zp();
  auto member = [&](const FF& a, const FF& b) {
    TernaryCubic F = pencil.F1.scaled(a);
    for (unsigned k = 0; k < 10; k++) F.c[k] = F.c[k] + b * pencil.F2.c[k];
    return F;
  };
  // c4, c6 of a F1 + b F2 as binary forms in (a, b), expanded exactly
  auto c4form = pencil_invariant_form(pencil.F1, pencil.F2, 4);
  auto c6form = pencil_invariant_form(pencil.F1, pencil.F2, 6);
  // selection polynomial: c4(a,b)^3 disc(E) - disc(a,b) c4(E)^3, degree 12
  std::vector<u64> c4cubed = binary_mul(zp, binary_mul(zp, c4form, c4form), c4form);
  std::vector<u64> c6sq = binary_mul(zp, c6form, c6form);
  u64 inv1728 = zp.inv(1728 % zp.p);
  std::vector<u64> discf(13, 0);
  for (unsigned k = 0; k < 13; k++) discf[k] = zp.mul(zp.sub(c4cubed[k], c6sq[k]), inv1728);
  u64 discE = E.discriminant().const_coeff();
  u64 c4E3 = E.c4().pow(3).const_coeff();
  std::vector<u64> sel(13, 0);
  bool allzero = true;
  for (unsigned k = 0; k < 13; k++) {
    sel[k] = zp.sub(zp.mul(c4cubed[k], discE), zp.mul(discf[k], c4E3));
    if (sel[k]) allzero = false;
  }
  std::vector<std::pair<FF, FF>> roots;
  if (allzero) {
    // j-condition degenerate: fall back to scanning P^1(K)
    roots.push_back({tw->one(1), tw->zero(1)});
    for (u64 t = 0; t < tw->p(); t++) roots.push_back({tw->from_int(t), tw->one(1)});
  } else {
    if (sel[0] == 0) roots.push_back({tw->one(1), tw->zero(1)});  // (a : b) = (1 : 0)
    // dehomogenize b = 1: polynomial in a of degree <= 12
    std::vector<FF> pc;
    for (unsigned k = 0; k <= 12; k++) pc.push_back(tw->from_int(sel[12 - k]));
    FPoly f(tw, 1, pc);
    if (!f.is_zero())
      for (const FF& r : poly_roots(f)) roots.push_back({r, tw->one(1)});
  }
  std::vector<TernaryCubic> out;
  for (auto& [a, b] : roots) {
    TernaryCubic F = member(a, b);
    if (F.is_zero() || !cubic_smooth(F)) continue;
    if (!jacobian_matches(F, E)) continue;
    bool stab = true;
    for (unsigned t = 0; t < td.pts.size() && stab; t++)
      if (!stabilized_by(TernaryCubic{tw, {F.c.begin(), F.c.end()}}, M.M[t])) stab = false;
    if (!stab) continue;
    out.push_back(F.normalized());
  }
  unsigned nu = nu_E3(E, td);
  if (out.size() != nu) throw error("select_member: candidate count differs from nu");
  return out;
}

EtaleElement det_M_element(const EtaleBasis& B, const TranslationMatrices& M) {
  const Tower* tw = B.r[0].tw;
  const TorsionData& td = *B.td;
  EtaleElement d = constant_element(tw, td, tw->one(td.m), true);
  for (unsigned t = 0; t < td.pts.size(); t++) d.v[t] = M.M[t].det();
  if (!is_equivariant(tw, td, d)) throw error("det_M_element: not rational");
  return d;
}

}  // namespace descent
