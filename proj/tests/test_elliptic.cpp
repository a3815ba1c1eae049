#include "doctest.h"

#include <set>

#include "descent/elliptic.hpp"

using namespace descent;

static Curve curve(Tower& tw, u64 a4, u64 a6) {
  return make_curve(&tw, tw.from_int(a4), tw.from_int(a6));
}

TEST_CASE("group law: identity, inverse, Lagrange") {
  Tower tw(11, 7);
  Curve E = curve(tw, 3, 5);
  Point P = random_point(E, 1);
  CHECK(ec_add(E, P, Point::infinity()) == P);
  CHECK(ec_add(E, P, ec_neg(E, P)).inf);
  long N = count_points(E, 1);
  CHECK(ec_mul(E, N, P).inf);
}

TEST_CASE("group law axioms on random triples") {
  Tower tw(13, 3);
  Curve E = curve(tw, 1, 4);
  for (int i = 0; i < 100; i++) {
    Point P = random_point(E, 2), Q = random_point(E, 2), R = random_point(E, 2);
    CHECK(ec_add(E, P, Q) == ec_add(E, Q, P));
    CHECK(ec_add(E, ec_add(E, P, Q), R) == ec_add(E, P, ec_add(E, Q, R)));
  }
}

TEST_CASE("slope identities") {
  Tower tw(11, 5);
  Curve E = curve(tw, 2, 5);
  for (int i = 0; i < 20; i++) {
    Point P = random_point(E, 2), Q = random_point(E, 2);
    if (P == Q || P.x == Q.x) continue;
    FF lam = ec_slope(E, P, Q);
    Point S = ec_add(E, P, Q);
    CHECK(S.x == lam * lam - P.x - Q.x);
    if (!P.y.is_zero()) {
      FF lt = ec_slope(E, P, P);
      CHECK(lt == (tw.from_int(3) * P.x * P.x + E.a4) / (tw.from_int(2) * P.y));
    }
  }
}

TEST_CASE("slope is Galois equivariant on torsion pairs") {
  Tower tw(7, 2);
  Curve E = curve(tw, 1, 3);
  TorsionData td = torsion_data(E, 3);
  int checked = 0;
  for (unsigned i = 1; i < td.pts.size() && checked < 8; i++)
    for (unsigned j = 1; j < td.pts.size() && checked < 8; j++) {
      if (i == j || td.neg_tab[i] == j) continue;
      if (td.pts[i].x == td.pts[j].x) continue;
      FF s = ec_slope(E, td.pts[i], td.pts[j]);
      FF sf = ec_slope(E, frob_point(E, td.pts[i]), frob_point(E, td.pts[j]));
      CHECK(sf == s.frob(1));
      checked++;
    }
  CHECK(checked > 0);
}

TEST_CASE("count_points: Hasse bound and zeta recurrence vs enumeration") {
  for (u64 p : {5ull, 7ull, 11ull, 13ull}) {
    Tower tw(p, 1);
    Curve E = curve(tw, 1, 1);
    long n1 = count_points(E, 1);
    long a = (long)p + 1 - n1;
    CHECK((double)a * a <= 4.0 * (double)p);
    // direct enumeration over F_{p^2} must match the recurrence
    long n2 = count_points(E, 2);
    long direct = 1;
    tw.extend(2);
    std::vector<FF> elems;
    // enumerate F_{p^2} by coefficient vectors
    for (u64 c0 = 0; c0 < p; c0++)
      for (u64 c1 = 0; c1 < p; c1++) elems.push_back(tw.make(2, {c0, c1}));
    for (const FF& x : elems) {
      FF r = x * x * x + tw.embed(E.a4, 2) * x + tw.embed(E.a6, 2);
      if (r.is_zero())
        direct += 1;
      else if (r.pow_subgroup_exponent(2, 2) == tw.one(2))
        direct += 2;
    }
    CHECK(direct == n2);
  }
}

TEST_CASE("division polynomial psi_3 matches the closed form") {
  Tower tw(13, 1);
  Curve E = curve(tw, 4, 9);
  FPoly psi3 = division_poly(E, 3);
  // 3x^4 + 6a x^2 + 12b x - a^2
  CHECK(psi3.deg() == 4);
  CHECK(psi3[4] == tw.from_int(3));
  CHECK(psi3[3].is_zero());
  CHECK(psi3[2] == tw.from_int(6) * E.a4);
  CHECK(psi3[1] == tw.from_int(12) * E.a6);
  CHECK(psi3[0] == -E.a4 * E.a4);
}

TEST_CASE("torsion_data n=3: structure and invariants") {
  Tower tw(7, 4);
  Curve E = curve(tw, 1, 3);
  TorsionData td = torsion_data(E, 3);
  CHECK(td.pts.size() == 9);
  FPoly psi3 = division_poly(E, 3);
  for (unsigned i = 1; i < 9; i++) {
    CHECK(psi3.lifted(1).eval(td.pts[i].x).is_zero());
    CHECK(ec_mul(E, 3, td.pts[i]).inf);
  }
  // zeta has exact order 3
  CHECK(td.zeta.pow(3) == tw.one(td.zeta.degree()));
  CHECK(td.zeta != tw.one(td.m));
  // m divides an element order of GL2(Z/3); oracle: enumerate element orders
  std::set<unsigned> orders;
  {
    int M[4];
    for (M[0] = 0; M[0] < 3; M[0]++)
      for (M[1] = 0; M[1] < 3; M[1]++)
        for (M[2] = 0; M[2] < 3; M[2]++)
          for (M[3] = 0; M[3] < 3; M[3]++) {
            int det = (M[0] * M[3] - M[1] * M[2]) % 3;
            if ((det + 3) % 3 == 0) continue;
            int A[4] = {1, 0, 0, 1};
            for (unsigned o = 1; o <= 24; o++) {
              int B[4] = {(A[0] * M[0] + A[1] * M[2]) % 3, (A[0] * M[1] + A[1] * M[3]) % 3,
                          (A[2] * M[0] + A[3] * M[2]) % 3, (A[2] * M[1] + A[3] * M[3]) % 3};
              std::copy(B, B + 4, A);
              if (A[0] == 1 && A[1] == 0 && A[2] == 0 && A[3] == 1) {
                orders.insert(o);
                break;
              }
            }
          }
  }
  CHECK(orders.count(td.m) == 1);  // m is realized as an element order (max 8)
  CHECK(*orders.rbegin() == 8);
  // frobenius permutation is induced by the p-power map
  for (unsigned i = 0; i < 9; i++) CHECK(td.pts[td.frob_perm[i]] == frob_point(E, td.pts[i]));
  // m equals the multiplicative order of the Frobenius matrix
  {
    unsigned a = td.frob_mat[0][0], b = td.frob_mat[0][1], c = td.frob_mat[1][0], d = td.frob_mat[1][1];
    unsigned A0 = 1, B0 = 0, C0 = 0, D0 = 1, o = 0;
    for (unsigned t = 1; t <= 24; t++) {
      unsigned A1 = (A0 * a + B0 * c) % 3, B1 = (A0 * b + B0 * d) % 3;
      unsigned C1 = (C0 * a + D0 * c) % 3, D1 = (C0 * b + D0 * d) % 3;
      A0 = A1; B0 = B1; C0 = C1; D0 = D1;
      if (A0 == 1 && B0 == 0 && C0 == 0 && D0 == 1) { o = t; break; }
    }
    CHECK(o == td.m);
  }
}

TEST_CASE("y^2 = x^3 + 1 over F_7: torsion splits over degree 3") {
  // oracle (zeta recurrence): #E(F_49) = 48 is not divisible by 9, while
  // #E(F_343) = 324 = 4 * 81 is; full 3-torsion therefore lives in degree 3
  Tower tw(7, 1);
  Curve E = curve(tw, 0, 1);
  CHECK(count_points(E, 1) == 12);
  CHECK(count_points(E, 2) == 48);
  CHECK(count_points(E, 3) == 324);
  TorsionData td = torsion_data(E, 3);
  CHECK(td.m == 3);
  for (auto& P : td.pts)
    if (!P.inf) CHECK(tw.frobenius(P.x, 3) == P.x);
}

TEST_CASE("weil pairing: alternating, antisymmetric, nondegenerate (brute force)") {
  Tower tw(11, 9);
  Curve E = curve(tw, 1, 6);
  TorsionData td = torsion_data(E, 3);
  // miller-based values on all pairs agree with the bilinear table
  for (unsigned i = 0; i < 9; i++)
    for (unsigned j = 0; j < 9; j++) {
      FF e = weil_pairing(E, td.pts[i], td.pts[j], 3);
      CHECK(e == td.pairing[i][j]);
    }
  for (unsigned i = 0; i < 9; i++) CHECK(td.pairing[i][i] == tw.one(td.m));
  for (unsigned i = 0; i < 9; i++)
    for (unsigned j = 0; j < 9; j++)
      CHECK(td.pairing[i][j] * td.pairing[j][i] == tw.one(td.m));
  // nondegeneracy: for each S != O some T pairs nontrivially
  for (unsigned i = 1; i < 9; i++) {
    bool nontriv = false;
    for (unsigned j = 0; j < 9; j++)
      if (td.pairing[i][j] != tw.one(td.m)) nontriv = true;
    CHECK(nontriv);
  }
  // bilinearity over all triples
  for (unsigned i = 0; i < 9; i++)
    for (unsigned j = 0; j < 9; j++)
      for (unsigned k = 0; k < 9; k++)
        CHECK(td.pairing[td.add_tab[i][j]][k] == td.pairing[i][k] * td.pairing[j][k]);
  // surjectivity onto mu_3
  std::set<std::vector<u64>> values;
  for (unsigned i = 0; i < 9; i++)
    for (unsigned j = 0; j < 9; j++) values.insert(td.pairing[i][j].coeffs());
  CHECK(values.size() == 3);
}

TEST_CASE("miller function: divisor, normalization, determinism across chains") {
  Tower tw(7, 8);
  Curve E = curve(tw, 2, 3);
  TorsionData td = torsion_data(E, 3);
  const Point& T = td.pts[1];
  CurveFn F = miller_function(E, T, 3);
  // valuation at the origin is exactly -3
  Laurent ex = F.expand(E, 8);
  CHECK(ex.val() == -3);
  CHECK(ex.lead_coeff() == tw.one(ex.lead_coeff().degree()));
  // vanishes to order 3 at T: F(P) != 0 away from T, and the tangent line at
  // T built directly is proportional; scale-normalized they must agree
  FF lam = ec_slope(E, T, T);
  LineFn tangent{-lam, tw.one(1), lam * T.x - T.y};
  CurveFn G{&tw, tw.one(1), {tangent}, {}};
  Laurent eg = G.expand(E, 8);
  CurveFn Gn = G;
  Gn.scalar = eg.lead_coeff().inv();
  for (int i = 0; i < 5; i++) {
    Point P = random_point(E, td.m * 2);
    if (P == T || P.inf) continue;
    try {
      CHECK(F.eval(P) == Gn.eval(P));
    } catch (const error&) {
      continue;
    }
  }
  // n=2 shape: F_T = x - x_T after normalization
  Curve E2 = curve(tw, 3, 4);
  TorsionData td2 = torsion_data(E2, 2);
  CurveFn F2 = miller_function(E2, td2.pts[1], 2);
  Laurent e2 = F2.expand(E2, 6);
  CHECK(e2.val() == -2);
  CHECK(e2.lead_coeff() == tw.one(e2.lead_coeff().degree()));
  Point P = random_point(E2, td2.m == 1 ? 2 : td2.m);
  if (!(P == td2.pts[1]))
    CHECK(F2.eval(P) == tw.embed(P.x, std::lcm(P.x.degree(), td2.pts[1].x.degree())) -
                            tw.embed(td2.pts[1].x, std::lcm(P.x.degree(), td2.pts[1].x.degree())));
}

TEST_CASE("laurent expansions of x and y satisfy the curve equation") {
  Tower tw(13, 2);
  Curve E = curve(tw, 5, 2);
  auto xy = curve_expansion(&tw, E.a4, E.a6, 14);
  CHECK(xy.x.val() == -2);
  CHECK(xy.y.val() == -3);
  CHECK(xy.x.lead_coeff() == tw.one(1));
  CHECK(xy.y.lead_coeff() == tw.one(1));
  Laurent lhs = xy.y * xy.y;
  Laurent rhs2 = xy.x * xy.x * xy.x + xy.x.scaled(E.a4) + Laurent::constant(E.a6, xy.x.prec());
  Laurent diff = lhs - rhs2;
  // zero to available precision
  bool zero = true;
  for (int e = -6; e < 6; e++)
    if (!diff.coeff(e).is_zero()) zero = false;
  CHECK(zero);
  // t = x/y expands to t
  Laurent t = xy.x / xy.y;
  CHECK(t.val() == 1);
  CHECK(t.lead_coeff() == tw.one(1));
  // (x/y) * y - x = 0
  Laurent z = t * xy.y - xy.x;
  bool z0 = true;
  for (int e = -6; e < 8; e++)
    if (!z.coeff(e).is_zero()) z0 = false;
  CHECK(z0);
}

TEST_CASE("preimage polynomial has the nine preimages as roots") {
  Tower tw(7, 6);
  Curve E = curve(tw, 1, 3);
  Point P = random_point(E, 1);
  FPoly N = preimage_poly(E, 3, P.x);
  CHECK(N.deg() == 9);
  // any root x0 over a splitting extension lifts to Q with x([3]Q) = x(P)
  auto fac = poly_factor(N);
  unsigned d = (unsigned)fac.factors[0].f.deg();
  tw.extend(d);
  auto rts = poly_roots(fac.factors[0].f.lifted(d));
  REQUIRE(!rts.empty());
  FF x0 = rts[0];
  FF r = x0 * x0 * x0 + tw.embed(E.a4, d) * x0 + tw.embed(E.a6, d);
  unsigned dy = d;
  auto y0 = tw.nth_root(r, 2);
  if (!y0) {
    dy = 2 * d;
    tw.extend(dy);
    y0 = tw.nth_root(tw.embed(r, dy), 2);
  }
  REQUIRE(y0.has_value());
  Point Q = Point::affine(tw.embed(x0, dy), *y0);
  CHECK(on_curve(E, Q));
  Point R3 = ec_mul(E, 3, Q);
  CHECK(!R3.inf);
  CHECK(R3.x == tw.embed(P.x, dy));
}

TEST_CASE("n = 5 torsion: structure, pairing and the etale layer") {
  Tower tw(7, 44);
  Curve E = make_curve(&tw, tw.from_int(1), tw.from_int(3));
  FPoly psi5 = division_poly(E, 5);
  CHECK(psi5.deg() == 12);
  TorsionData td = torsion_data(E, 5);
  CHECK(td.pts.size() == 25);
  // zeta has exact order 5; pairing bilinear and alternating on all pairs
  CHECK(td.zeta.pow(5) == tw.one(td.zeta.degree()));
  CHECK(td.zeta != tw.one(td.m));
  for (unsigned i = 0; i < 25; i++) {
    CHECK(td.pairing[i][i] == tw.one(td.m));
    CHECK(ec_mul(E, 5, td.pts[i]).inf);
  }
  for (unsigned i = 0; i < 25; i++)
    for (unsigned j = 0; j < 25; j++)
      CHECK(td.pairing[i][j] * td.pairing[j][i] == tw.one(td.m));
  // miller-based pairing at the basis agrees with the stored table
  CHECK(weil_pairing(E, td.pts[td.iS], td.pts[td.iT], 5) == td.zeta);
  // F_T has valuation -5 and leading coefficient 1
  CurveFn F = miller_function(E, td.pts[td.iS], 5);
  Laurent ex = F.expand(E, 8);
  CHECK(ex.val() == -5);
  CHECK(ex.lead_coeff() == tw.one(ex.lead_coeff().degree()));
}
