#include "descent/segre.hpp"

#include <algorithm>
#include <numeric>

namespace descent {

namespace {

// upper-triangle flattening of symmetric N x N matrices over a field
std::vector<FF> flatten_sym(const Mat& A) {
  std::vector<FF> out;
  for (std::size_t i = 0; i < A.rows(); i++)
    for (std::size_t j = i; j < A.cols(); j++) out.push_back(A.at(i, j));
  return out;
}

// K-basis of the Frobenius-fixed part of the L-span of the given vectors
std::vector<std::vector<u64>> galois_descend_span(const Tower* tw, unsigned m,
                                                  const std::vector<std::vector<FF>>& gens,
                                                  unsigned expected_dim) {
  if (gens.empty()) return {};
  Zp zp = tw->zp();
  std::size_t N = gens[0].size();
  // F_p-span of {g^j * v}: rows of a (gens*m) x (N*m) matrix
  FF g = m == 1 ? tw->one(1) : tw->gen(m);
  std::vector<std::vector<u64>> rows;
  for (const auto& v : gens) {
    FF scale = tw->one(m);
    for (unsigned j = 0; j < m; j++) {
      std::vector<u64> row(N * m, 0);
      for (std::size_t t = 0; t < N; t++) {
        FF val = tw->embed(v[t], m) * scale;
        for (unsigned c = 0; c < m; c++) row[t * m + c] = val.coeffs()[c];
      }
      rows.push_back(std::move(row));
      scale = scale * g;
    }
  }
  FpMat span(zp, rows.size(), N * m);
  for (std::size_t i = 0; i < rows.size(); i++)
    for (std::size_t j = 0; j < N * m; j++) span.at(i, j) = rows[i][j];
  auto piv = span.rref();
  std::size_t d = piv.size();
  if (d != (std::size_t)expected_dim * m) throw error("galois_descend_span: span dimension mismatch");
  // Frobenius acts blockwise on the flattened coordinates
  FpMat frob_block(zp, m, m);
  {
    FF cur = tw->one(m);
    for (unsigned k = 0; k < m; k++) {
      FF img = tw->frobenius(cur, 1);
      for (unsigned i = 0; i < m; i++) frob_block.at(i, k) = img.coeffs()[i];
      cur = cur * g;
    }
  }
  // basis rows B (d x Nm); solve (Frob - I) B^T c = 0
  FpMat M(zp, N * m, d);
  for (std::size_t col = 0; col < d; col++) {
    // frob applied to row col of the rref basis, minus the row itself
    for (std::size_t t = 0; t < N; t++) {
      std::vector<u64> chunk(m), img(m);
      for (unsigned c = 0; c < m; c++) chunk[c] = span.at(col, t * m + c);
      img = frob_block.apply(chunk);
      for (unsigned c = 0; c < m; c++) M.at(t * m + c, col) = zp.sub(img[c], chunk[c]);
    }
  }
  auto ker = M.kernel();
  if (ker.size() != expected_dim) throw error("galois_descend_span: fixed space dimension mismatch");
  std::vector<std::vector<u64>> out;
  for (auto& c : ker) {
    std::vector<u64> v(N, 0);
    for (std::size_t t = 0; t < N; t++) {
      // entry must be rational: only the constant coordinate may be nonzero
      for (unsigned cc = 1; cc < m; cc++) {
        u64 acc = 0;
        for (std::size_t col = 0; col < d; col++) acc = zp.add(acc, zp.mul(c[col], span.at(col, t * m + cc)));
        if (acc) throw error("galois_descend_span: fixed vector not rational");
      }
      u64 acc = 0;
      for (std::size_t col = 0; col < d; col++) acc = zp.add(acc, zp.mul(c[col], span.at(col, t * m)));
      v[t] = acc;
    }
    out.push_back(std::move(v));
  }
  // canonical form
  FpMat red(zp, out.size(), N);
  for (std::size_t i = 0; i < out.size(); i++)
    for (std::size_t j = 0; j < N; j++) red.at(i, j) = out[i][j];
  red.rref();
  for (std::size_t i = 0; i < out.size(); i++)
    for (std::size_t j = 0; j < N; j++) out[i][j] = red.at(i, j);
  return out;
}

// z(T) as linear forms over L: column vector of r_i(T)
std::vector<FF> z_form(const EtaleBasis& B, unsigned t) {
  std::vector<FF> l;
  for (auto& r : B.r) l.push_back(r.v[t]);
  return l;
}

// symmetric matrix of the product of two linear forms
Mat sym_product(const Tower* tw, unsigned deg, const std::vector<FF>& a, const std::vector<FF>& b) {
  std::size_t N = a.size();
  Mat A(tw, deg, N, N);
  FF half = tw->from_int(2, deg).inv();
  for (std::size_t i = 0; i < N; i++)
    for (std::size_t j = 0; j < N; j++) {
      FF v = (tw->embed(a[i], deg) * tw->embed(b[j], deg) + tw->embed(a[j], deg) * tw->embed(b[i], deg)) * half;
      A.at(i, j) = v;
    }
  return A;
}

FpMat to_fpmat_sym(const Tower* tw, const std::vector<u64>& flat, unsigned N) {
  Zp zp = tw->zp();
  FpMat A(zp, N, N);
  std::size_t idx = 0;
  for (unsigned i = 0; i < N; i++)
    for (unsigned j = i; j < N; j++) {
      A.at(i, j) = flat[idx];
      A.at(j, i) = flat[idx];
      idx++;
    }
  return A;
}

std::vector<u64> flatten_fpmat_sym(const FpMat& A) {
  std::vector<u64> out;
  for (std::size_t i = 0; i < A.rows(); i++)
    for (std::size_t j = i; j < A.cols(); j++) out.push_back(A.at(i, j));
  return out;
}

}  // namespace

QuadricSystem type1_quadrics(CurveContext& ctx, const TensorElement& rho) {
  const Tower* tw = &ctx.tw;
  const TorsionData& td = ctx.td;
  unsigned N = (unsigned)ctx.B.r.size(), m = td.m;
  unsigned O = td.origin();
  // P_T = (x - x(T)) z(O)^2 - rho(T,-T) z(T) z(-T); differences kill x
  std::vector<Mat> P;  // the x-free parts, plus记 x-coefficients z(O)^2 all equal
  std::vector<unsigned> idxs;
  Mat zO2 = sym_product(tw, m, z_form(ctx.B, O), z_form(ctx.B, O));
  for (unsigned t = 0; t < td.pts.size(); t++) {
    if (t == O) continue;
    Mat A = zO2.scaled(-tw->embed(td.pts[t].x, m)) -
            sym_product(tw, m, z_form(ctx.B, t), z_form(ctx.B, td.neg_tab[t])).scaled(tw->embed(rho.v[t][td.neg_tab[t]], m));
    P.push_back(A);
    idxs.push_back(t);
  }
  std::vector<std::vector<FF>> gens;
  for (std::size_t i = 1; i < P.size(); i++) gens.push_back(flatten_sym(P[i] - P[0]));
  unsigned nsq = N;
  unsigned d1 = (ctx.n % 2 == 1) ? (nsq - 3) / 2 : nsq / 2;
  auto basis = galois_descend_span(tw, m, gens, d1);
  QuadricSystem out;
  out.nvars = N;
  for (auto& flat : basis) {
    out.quads.push_back(to_fpmat_sym(tw, flat, N));
    out.type.push_back(1);
  }
  return out;
}

QuadricSystem type2_quadrics(CurveContext& ctx, const TensorElement& rho) {
  const Tower* tw = &ctx.tw;
  const TorsionData& td = ctx.td;
  unsigned N = (unsigned)ctx.B.r.size(), m = td.m;
  unsigned O = td.origin();
  std::vector<std::vector<FF>> gens;
  unsigned pair_groups = 0;
  for (unsigned t = 0; t < td.pts.size(); t++) {
    if (t == O) continue;
    // unordered pairs (T1, T2), both nonzero, T1 + T2 = T
    std::vector<std::pair<unsigned, unsigned>> pairs;
    for (unsigned t1 = 0; t1 < td.pts.size(); t1++) {
      if (t1 == O) continue;
      // T2 = T - T1
      unsigned t2 = td.add_tab[t][td.neg_tab[t1]];
      if (t2 == O) continue;
      if (t1 <= t2) pairs.push_back({t1, t2});
    }
    if (pairs.empty()) continue;
    pair_groups++;
    std::vector<Mat> Q;
    Mat zOzT = sym_product(tw, m, z_form(ctx.B, O), z_form(ctx.B, t));
    for (auto [t1, t2] : pairs) {
      FF lam = ec_slope(ctx.E, td.pts[t1], td.pts[t2]);
      Mat A = zOzT.scaled(-tw->embed(lam, m)) -
              sym_product(tw, m, z_form(ctx.B, t1), z_form(ctx.B, t2)).scaled(tw->embed(rho.v[t1][t2], m));
      Q.push_back(A);
    }
    for (std::size_t i = 1; i < Q.size(); i++) gens.push_back(flatten_sym(Q[i] - Q[0]));
  }
  unsigned nsq = N;
  unsigned d2 = (ctx.n % 2 == 1) ? (nsq - 1) * (nsq - 3) / 2 : nsq * (nsq - 4) / 2;
  QuadricSystem out;
  out.nvars = N;
  if (d2 == 0) {
    if (!gens.empty()) throw error("type2_quadrics: expected no generators");
    return out;
  }
  auto basis = galois_descend_span(tw, m, gens, d2);
  for (auto& flat : basis) {
    out.quads.push_back(to_fpmat_sym(tw, flat, N));
    out.type.push_back(2);
  }
  return out;
}

QuadricSystem segre_quadrics(CurveContext& ctx, const TensorElement& rho) {
  QuadricSystem q1 = type1_quadrics(ctx, rho);
  QuadricSystem q2 = type2_quadrics(ctx, rho);
  QuadricSystem out = q1;
  for (std::size_t i = 0; i < q2.quads.size(); i++) {
    out.quads.push_back(q2.quads[i]);
    out.type.push_back(2);
  }
  return out;
}

SegreResult run_segre(CurveContext& ctx, const ClassMethods& cm) {
  const Tower* tw = &ctx.tw;
  Zp zp = tw->zp();
  unsigned n = ctx.n, N = (unsigned)ctx.B.r.size();
  SegreResult sr;
  sr.zquads = segre_quadrics(ctx, cm.cls.rho);
  if (n == 2) return sr;  // quadric-intersection model in P^3; nothing further

  // Step 3: trivialize (R, +, *_{epsF rho}) by composing the black-box
  // isomorphism for (R, +, *_{epsM rho}) with the gauge by g, d(g) = epsF/epsM
  const EtaleElement& g = ctx.gauge_F_over_M();
  FpMat Ng = gauge_matrix(ctx.B, g);
  AlgebraK AF = enveloping_algebra(ctx.B, ctx.epsF() * cm.cls.rho);
  sr.tau_s.n = n;
  for (unsigned i = 0; i < N; i++) {
    std::vector<u64> ei(N, 0);
    ei[i] = 1;
    sr.tau_s.tau.push_back(apply_split_iso(cm.tau_rho, Ng.apply(ei), zp));
  }
  if (!check_split_iso(AF, sr.tau_s)) throw error("run_segre: composed trivialization fails verification");

  // Step 4: x_{ab} = sum_i tau_s(r_i)_{ab} z_i
  sr.Phi = FpMat(zp, N, N);
  for (unsigned a = 0; a < n; a++)
    for (unsigned b = 0; b < n; b++)
      for (unsigned i = 0; i < N; i++) sr.Phi.at(a * n + b, i) = sr.tau_s.tau[i].at(a, b);
  auto PhiInv = sr.Phi.inverse();
  if (!PhiInv) throw error("run_segre: coordinate change singular");
  sr.xquads.nvars = N;
  for (std::size_t q = 0; q < sr.zquads.quads.size(); q++) {
    FpMat A = sr.zquads.quads[q];
    FpMat B2 = PhiInv->transpose().mul(A).mul(*PhiInv);
    sr.xquads.quads.push_back(B2);
    sr.xquads.type.push_back(sr.zquads.type[q]);
  }

  // Step 5: project to trace zero, take a column, solve for the plane cubic
  u64 inv3 = zp.inv(n % zp.p);
  // cubic monomials in N variables
  std::vector<std::array<unsigned, 3>> monos;  // index triples i <= j <= k
  for (unsigned i = 0; i < N; i++)
    for (unsigned j = i; j < N; j++)
      for (unsigned k = j; k < N; k++) monos.push_back({i, j, k});
  auto mono_index = [&](unsigned a, unsigned b, unsigned c) {
    unsigned s[3] = {a, b, c};
    std::sort(s, s + 3);
    for (std::size_t t = 0; t < monos.size(); t++)
      if (monos[t][0] == s[0] && monos[t][1] == s[1] && monos[t][2] == s[2]) return t;
    throw error("mono_index");
  };
  // degree-3 part of the ideal: quadric * variable
  std::vector<std::vector<u64>> ideal_rows;
  for (auto& A : sr.xquads.quads)
    for (unsigned v = 0; v < N; v++) {
      std::vector<u64> row(monos.size(), 0);
      for (unsigned i = 0; i < N; i++)
        for (unsigned j = i; j < N; j++) {
          u64 coef = (i == j) ? A.at(i, i) : zp.add(A.at(i, j), A.at(i, j));
          if (!coef) continue;
          row[mono_index(i, j, v)] = zp.add(row[mono_index(i, j, v)], coef);
        }
      ideal_rows.push_back(std::move(row));
    }

  for (unsigned col = 0; col < n; col++) {
    // linear forms: column col of X - (tr X / 3) I, as functions of z
    // expressed in x-coordinates: ell_a(x) = x_{a,col} - [a == col] (sum_c x_cc)/3
    std::vector<std::vector<u64>> ell(3, std::vector<u64>(N, 0));
    for (unsigned a = 0; a < n; a++) {
      ell[a][a * n + col] = zp.add(ell[a][a * n + col], 1);
      if (a == col)
        for (unsigned c = 0; c < n; c++) ell[a][c * n + c] = zp.sub(ell[a][c * n + c], inv3);
    }
    // build the linear system [G-coeffs | ideal coefficients]
    std::size_t rows = monos.size();
    std::size_t cols = 10 + ideal_rows.size();
    FpMat sys(zp, rows, cols);
    // G monomial m -> m(ell_0, ell_1, ell_2) expanded over x-monomials
    for (unsigned gm = 0; gm < 10; gm++) {
      auto [ex, ey, ez] = kCubicMonomials[gm];
      std::vector<unsigned> fs;
      for (unsigned e = 0; e < ex; e++) fs.push_back(0);
      for (unsigned e = 0; e < ey; e++) fs.push_back(1);
      for (unsigned e = 0; e < ez; e++) fs.push_back(2);
      for (unsigned i = 0; i < N; i++) {
        if (!ell[fs[0]][i]) continue;
        for (unsigned j = 0; j < N; j++) {
          if (!ell[fs[1]][j]) continue;
          for (unsigned k = 0; k < N; k++) {
            if (!ell[fs[2]][k]) continue;
            u64 coef = zp.mul(zp.mul(ell[fs[0]][i], ell[fs[1]][j]), ell[fs[2]][k]);
            std::size_t mi = mono_index(i, j, k);
            sys.at(mi, gm) = zp.add(sys.at(mi, gm), coef);
          }
        }
      }
    }
    for (std::size_t r = 0; r < ideal_rows.size(); r++)
      for (std::size_t mi = 0; mi < rows; mi++) sys.at(mi, 10 + r) = zp.neg(ideal_rows[r][mi]);
    auto ker = sys.kernel();
    // project kernel onto the G-coordinates
    FpMat gpart(zp, ker.size(), 10);
    for (std::size_t i = 0; i < ker.size(); i++)
      for (unsigned j = 0; j < 10; j++) gpart.at(i, j) = ker[i][j];
    auto piv = gpart.rref();
    if (piv.size() != 1) continue;  // degenerate column; try the next one
    TernaryCubic G{tw, std::vector<FF>(10, tw->zero(1))};
    for (unsigned j = 0; j < 10; j++) G.c[j] = tw->from_int(gpart.at(0, j));
    if (G.is_zero()) continue;
    sr.cubic = G.normalized();
    sr.column_used = col;
    return sr;
  }
  throw error("run_segre: projection degenerate for every column choice");
}

long count_segre_points(CurveContext& ctx, const SegreResult& sr, unsigned k) {
  const Tower* tw = &ctx.tw;
  unsigned n = ctx.n, N = (unsigned)ctx.B.r.size();
  tw->extend(k);
  u64 p = tw->p();
  u64 qk = 1;
  for (unsigned i = 0; i < k; i++) qk *= p;
  // enumerate field elements
  std::vector<FF> elems;
  elems.reserve(qk);
  {
    std::vector<u64> cv(k, 0);
    for (u64 t = 0; t < qk; t++) {
      u64 v = t;
      for (unsigned i = 0; i < k; i++) {
        cv[i] = v % p;
        v /= p;
      }
      elems.push_back(tw->make(k, cv));
    }
  }
  // projective points of P^2(F_{q^k})
  std::vector<std::array<FF, 3>> proj;
  for (const FF& a : elems)
    for (const FF& b : elems) proj.push_back({tw->one(k), a, b});
  for (const FF& b : elems) proj.push_back({tw->zero(k), tw->one(k), b});
  proj.push_back({tw->zero(k), tw->zero(k), tw->one(k)});

  // x-quadrics lifted to the extension
  std::vector<Mat> QX;
  for (auto& A : sr.xquads.quads) {
    Mat B(tw, k, N, N);
    for (unsigned i = 0; i < N; i++)
      for (unsigned j = 0; j < N; j++) B.at(i, j) = tw->from_int(A.at(i, j), k);
    QX.push_back(B);
  }
  long count = 0;
  for (auto& u : proj) {
    // x-space of the fiber: u w^T (w in u-perp) + mu I
    // basis of u-perp
    Mat ug(tw, k, 1, 3);
    for (unsigned t = 0; t < 3; t++) ug.at(0, t) = u[t];
    auto wbasis = ug.kernel();
    std::vector<std::vector<FF>> fiber;  // three x-vectors (length N = 9)
    for (auto& w : wbasis) {
      std::vector<FF> x(N, tw->zero(k));
      for (unsigned a = 0; a < n; a++)
        for (unsigned b = 0; b < n; b++) x[a * n + b] = u[a] * w[b];
      fiber.push_back(std::move(x));
    }
    {
      std::vector<FF> x(N, tw->zero(k));
      for (unsigned a = 0; a < n; a++) x[a * n + a] = tw->one(k);
      fiber.push_back(std::move(x));
    }
    // restrict quadrics to the 3-dim fiber space: 6 monomial coefficients
    Mat sys(tw, k, QX.size(), 6);
    for (std::size_t q = 0; q < QX.size(); q++) {
      auto form = [&](const std::vector<FF>& x, const std::vector<FF>& y) {
        FF s = tw->zero(k);
        for (unsigned i = 0; i < N; i++) {
          if (x[i].is_zero()) continue;
          for (unsigned j = 0; j < N; j++) s = s + x[i] * QX[q].at(i, j) * y[j];
        }
        return s;
      };
      unsigned idx = 0;
      for (unsigned i = 0; i < 3; i++)
        for (unsigned j = i; j < 3; j++) {
          FF v = i == j ? form(fiber[i], fiber[i]) : form(fiber[i], fiber[j]) + form(fiber[j], fiber[i]);
          sys.at(q, idx++) = v;
        }
    }
    auto ker = sys.kernel();
    if (ker.empty()) continue;
    // rank-one rays (c_i c_j) in the kernel of the restricted system
    auto rank1_count = [&](const std::vector<FF>& mvec) {
      // mvec = (m00, m01, m02, m11, m12, m22); decomposable iff the symmetric
      // 3x3 matrix has rank 1
      Mat S(tw, k, 3, 3);
      S.at(0, 0) = mvec[0];
      S.at(0, 1) = S.at(1, 0) = mvec[1];
      S.at(0, 2) = S.at(2, 0) = mvec[2];
      S.at(1, 1) = mvec[3];
      S.at(1, 2) = S.at(2, 1) = mvec[4];
      S.at(2, 2) = mvec[5];
      bool nonzero = false;
      for (unsigned i = 0; i < 3; i++)
        for (unsigned j = 0; j < 3; j++)
          if (!S.at(i, j).is_zero()) nonzero = true;
      if (!nonzero) return false;
      return S.rank() == 1;
    };
    if (ker.size() == 1) {
      if (rank1_count(ker[0])) count++;
    } else {
      // scan the projectivized kernel for rank-one rays (diagonal quadrics can
      // intersect a fiber in more than one point only off the curve; ker > 1
      // is rare and desk-scale small)
      std::vector<std::vector<FF>> rays;
      if (ker.size() > 2) throw error("count_segre_points: unexpectedly large fiber kernel");
      for (const FF& lam : elems) {
        std::vector<FF> v(6, tw->zero(k));
        for (unsigned t = 0; t < 6; t++) v[t] = ker[0][t] * lam + ker[1][t];
        if (rank1_count(v)) rays.push_back(v);
      }
      std::vector<FF> v0(6, tw->zero(k));
      for (unsigned t = 0; t < 6; t++) v0[t] = ker[0][t];
      if (rank1_count(v0)) rays.push_back(v0);
      count += (long)rays.size();
    }
  }
  return count;
}

bool gauge_covariance_holds(CurveContext& ctx, const QuadricSystem& base, const QuadricSystem& gauged,
                            const EtaleElement& eta) {
  Zp zp = ctx.tw.zp();
  unsigned N = base.nvars;
  FpMat Ninv = gauge_matrix(ctx.B, eta.inv());
  // transformed gauged quadrics: Ninv^T A Ninv must span the base space
  auto span_rows = [&](const std::vector<FpMat>& quads) {
    FpMat M(zp, quads.size(), N * (N + 1) / 2);
    for (std::size_t i = 0; i < quads.size(); i++) {
      auto flat = flatten_fpmat_sym(quads[i]);
      for (std::size_t j = 0; j < flat.size(); j++) M.at(i, j) = flat[j];
    }
    return M;
  };
  std::vector<FpMat> transformed;
  for (auto& A : gauged.quads) transformed.push_back(Ninv.transpose().mul(A).mul(Ninv));
  FpMat M1 = span_rows(base.quads);
  FpMat M2 = span_rows(transformed);
  if (M1.rank() != M2.rank()) return false;
  // union has the same rank
  FpMat M3(zp, M1.rows() + M2.rows(), N * (N + 1) / 2);
  for (std::size_t i = 0; i < M1.rows(); i++)
    for (std::size_t j = 0; j < M1.cols(); j++) M3.at(i, j) = M1.at(i, j);
  for (std::size_t i = 0; i < M2.rows(); i++)
    for (std::size_t j = 0; j < M2.cols(); j++) M3.at(M1.rows() + i, j) = M2.at(i, j);
  return M3.rank() == M1.rank();
}

}  // namespace descent
