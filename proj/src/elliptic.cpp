#include "descent/elliptic.hpp"

#include <algorithm>
#include <map>
#include <numeric>

namespace descent {

FF Curve::discriminant() const {
  FF d = tw->from_int(4) * a4 * a4 * a4 + tw->from_int(27) * a6 * a6;
  return tw->from_int(tw->p() - 16 % tw->p()) * d;
}

FF Curve::j_invariant() const {
  FF c4v = c4();
  return tw->from_int(1728) * c4v * c4v * c4v / discriminant();
}

Curve make_curve(const Tower* tw, const FF& a4, const FF& a6) {
  Curve E{tw, a4, a6};
  if (E.discriminant().is_zero()) throw error("make_curve: singular curve");
  return E;
}

bool Point::operator==(const Point& o) const {
  if (inf || o.inf) return inf == o.inf;
  return x == o.x && y == o.y;
}

static FF rhs(const Curve& E, const FF& x) { return x * x * x + E.a4 * x + E.a6; }

bool on_curve(const Curve& E, const Point& P) {
  if (P.inf) return true;
  return P.y * P.y == rhs(E, P.x);
}

Point ec_neg(const Curve&, const Point& P) {
  if (P.inf) return P;
  return Point::affine(P.x, -P.y);
}

FF ec_slope(const Curve& E, const Point& P1, const Point& P2) {
  if (P1.inf || P2.inf) throw error("ec_slope: point at infinity");
  if (P1 == P2) {
    if (P1.y.is_zero()) throw error("ec_slope: vertical tangent");
    return (E.tw->from_int(3) * P1.x * P1.x + E.a4) / (E.tw->from_int(2) * P1.y);
  }
  if (P1.x == P2.x) throw error("ec_slope: vertical chord");
  return (P2.y - P1.y) / (P2.x - P1.x);
}

Point ec_add(const Curve& E, const Point& P, const Point& Q) {
  if (P.inf) return Q;
  if (Q.inf) return P;
  auto [x1, x2] = E.tw->lift_common(P.x, Q.x);
  auto [y1, y2] = E.tw->lift_common(P.y, Q.y);
  unsigned k = std::lcm(x1.degree(), y1.degree());
  Point A = Point::affine(E.tw->embed(x1, k), E.tw->embed(y1, k));
  Point B = Point::affine(E.tw->embed(x2, k), E.tw->embed(y2, k));
  if (A.x == B.x && A.y == -B.y) return Point::infinity();
  FF lam = ec_slope(E, A, B);
  FF x3 = lam * lam - A.x - B.x;
  FF y3 = lam * (A.x - x3) - A.y;
  return Point::affine(x3, y3);
}

Point ec_mul(const Curve& E, long k, const Point& P) {
  if (k < 0) return ec_mul(E, -k, ec_neg(E, P));
  Point R = Point::infinity(), B = P;
  unsigned long e = (unsigned long)k;
  while (e) {
    if (e & 1) R = ec_add(E, R, B);
    B = ec_add(E, B, B);
    e >>= 1;
  }
  return R;
}

Point frob_point(const Curve& E, const Point& P, unsigned j) {
  if (P.inf) return P;
  return Point::affine(E.tw->frobenius(P.x, j), E.tw->frobenius(P.y, j));
}

Point random_point(const Curve& E, unsigned deg) {
  const Tower* tw = E.tw;
  for (int tries = 0; tries < 4096; tries++) {
    FF x = tw->random_element(deg);
    FF r = rhs(E, tw->embed(x, deg));
    if (r.is_zero()) return Point::affine(x, tw->zero(deg));
    auto y = tw->nth_root(r, 2);
    if (!y) continue;
    if (tw->rng()() & 1) return Point::affine(x, -*y);
    return Point::affine(x, *y);
  }
  throw error("random_point: exhausted");
}

// ---------------------------------------------------------------------------
// division polynomials: psi_m = W_m(x) for m odd, y * W_m(x) for m even

static std::vector<FPoly> division_W(const Curve& E, unsigned upto) {
  const Tower* tw = E.tw;
  FPoly x = FPoly::X(tw, 1);
  FPoly a = FPoly::constant(E.a4), b = FPoly::constant(E.a6);
  FPoly f = x * x * x + a * x + b;
  std::vector<FPoly> W(std::max(upto + 1, 5u), FPoly(tw, 1));
  auto C = [&](u64 v) { return FPoly::constant(tw->from_int(v)); };
  W[0] = FPoly(tw, 1);
  W[1] = C(1);
  W[2] = C(2);
  W[3] = C(3) * x.pow(4) + C(6) * a * x * x + C(12) * b * x - a * a;
  W[4] = C(4) * (x.pow(6) + C(5) * a * x.pow(4) + C(20) * b * x * x * x -
                 C(5) * a * a * x * x - C(4) * a * b * x - C(8) * b * b - a * a * a);
  FF half = tw->from_int(2).inv();
  for (unsigned m2 = 5; m2 <= upto; m2++) {
    unsigned m = m2 / 2;
    if (m2 % 2 == 1) {
      // W_{2m+1}
      if (m % 2 == 0)
        W[m2] = f * f * W[m + 2] * W[m] * W[m] * W[m] - W[m - 1] * W[m + 1] * W[m + 1] * W[m + 1];
      else
        W[m2] = W[m + 2] * W[m] * W[m] * W[m] - f * f * W[m - 1] * W[m + 1] * W[m + 1] * W[m + 1];
    } else {
      W[m2] = (W[m] * (W[m + 2] * W[m - 1] * W[m - 1] - W[m - 2] * W[m + 1] * W[m + 1])).scaled(half);
    }
  }
  return W;
}

FPoly division_poly(const Curve& E, unsigned n) {
  auto W = division_W(E, n);
  return W[n];
}

FPoly preimage_poly(const Curve& E, unsigned n, const FF& xp) {
  const Tower* tw = E.tw;
  auto W = division_W(E, n + 1);
  FPoly x = FPoly::X(tw, 1);
  FPoly f = x * x * x + FPoly::constant(E.a4) * x + FPoly::constant(E.a6);
  FPoly psin2 = (n % 2 == 1) ? W[n] * W[n] : f * W[n] * W[n];
  FPoly prod = W[n + 1] * W[n - 1];
  if (n % 2 == 1) prod = f * prod;  // psi_{n+1} psi_{n-1} carries y^2 for odd n
  FPoly phin = x * psin2 - prod;
  unsigned k = xp.degree();
  return phin.lifted(k) - psin2.lifted(k).scaled(xp);
}

long count_points(const Curve& E, unsigned k, u64 qmax) {
  const Tower* tw = E.tw;
  u64 p = tw->p();
  if (p > qmax) throw error("count_points: base field too large for enumeration");
  long n1 = 1;  // point at infinity
  for (u64 xv = 0; xv < p; xv++) {
    FF r = rhs(E, tw->from_int(xv));
    if (r.is_zero())
      n1 += 1;
    else if (r.pow((p - 1) / 2) == tw->one(1))
      n1 += 2;
  }
  if (k == 1) return n1;
  // s_k = a s_{k-1} - q s_{k-2}, #E(F_{q^k}) = q^k + 1 - s_k  (exact integers)
  long long a = (long long)p + 1 - n1;
  long long s0 = 2, s1 = a;
  for (unsigned i = 2; i <= k; i++) {
    long long s2 = a * s1 - (long long)p * s0;
    s0 = s1;
    s1 = s2;
  }
  long long qk = 1;
  for (unsigned i = 0; i < k; i++) qk *= (long long)p;
  return (long)(qk + 1 - s1);
}

// ---------------------------------------------------------------------------
// curve functions built from lines

FF LineFn::eval(const Point& P) const {
  if (P.inf) throw error("LineFn::eval at infinity");
  return a * P.x + b * P.y + c;
}

Laurent LineFn::expand(const CurveExpansion& xy, unsigned prec) const {
  Laurent r = xy.x.scaled(a) + xy.y.scaled(b);
  return r + Laurent::constant(c, prec + 8);
}

FF CurveFn::eval(const Point& P) const {
  FF v = scalar;
  for (const auto& l : num) {
    FF t = l.eval(P);
    if (t.is_zero()) throw error("CurveFn::eval: point in divisor support (zero)");
    v = v * t;
  }
  for (const auto& l : den) {
    FF t = l.eval(P);
    if (t.is_zero()) throw error("CurveFn::eval: point in divisor support (pole)");
    v = v / t;
  }
  return v;
}

Laurent CurveFn::expand(const Curve& E, unsigned prec) const {
  auto xy = curve_expansion(tw, E.a4, E.a6, prec + 8 + 3 * (unsigned)(num.size() + den.size()));
  Laurent r = Laurent::constant(scalar, xy.x.prec());
  for (const auto& l : num) r = r * l.expand(xy, prec);
  for (const auto& l : den) r = r / l.expand(xy, prec);
  return r;
}

int CurveFn::valuation_at_origin(const Curve& E) const { return expand(E, 6).val(); }

static LineFn line_through(const Curve& E, const Point& P, const Point& Q) {
  const Tower* tw = E.tw;
  // vertical cases
  if (P == Q && P.y.is_zero()) return LineFn{tw->one(1), tw->zero(1), -P.x};
  if (!(P == Q) && P.x == Q.x) return LineFn{tw->one(1), tw->zero(1), -P.x};
  FF lam = ec_slope(E, P, Q);
  return LineFn{-lam, tw->one(1), lam * P.x - P.y};
}

CurveFn miller_function(const Curve& E, const Point& T, unsigned n) {
  if (T.inf) throw error("miller_function: T must be nonzero");
  const Tower* tw = E.tw;
  CurveFn F;
  F.tw = tw;
  F.scalar = tw->one(1);
  Point V = T;
  for (unsigned m = 1; m < n; m++) {
    LineFn l = line_through(E, V, T);
    F.num.push_back(l);
    V = ec_add(E, V, T);
    if (!V.inf) F.den.push_back(LineFn{tw->one(1), tw->zero(1), -V.x});
  }
  if (!V.inf) throw error("miller_function: T is not n-torsion");
  // cancel identical num/den line factors (up to scalar) so evaluation works
  for (std::size_t i = 0; i < F.den.size();) {
    bool cancelled = false;
    for (std::size_t j = 0; j < F.num.size(); j++) {
      const LineFn &d = F.den[i], &nu = F.num[j];
      // proportional?
      std::vector<FF> dv = {d.a, d.b, d.c}, nv = {nu.a, nu.b, nu.c};
      std::optional<FF> ratio;
      bool prop = true;
      for (int t2 = 0; t2 < 3; t2++) {
        if (dv[t2].is_zero() != nv[t2].is_zero()) { prop = false; break; }
        if (dv[t2].is_zero()) continue;
        FF r = nv[t2] / dv[t2];
        if (!ratio)
          ratio = r;
        else if (!(*ratio == r)) { prop = false; break; }
      }
      if (prop && ratio) {
        F.scalar = F.scalar * *ratio;
        F.num.erase(F.num.begin() + (long)j);
        F.den.erase(F.den.begin() + (long)i);
        cancelled = true;
        break;
      }
    }
    if (!cancelled) i++;
  }
  // normalize to leading Laurent coefficient 1 in t = x/y
  Laurent ex = F.expand(E, 6);
  if ((int)ex.val() != -(int)n) throw error("miller_function: unexpected valuation");
  F.scalar = F.scalar / ex.lead_coeff();
  return F;
}

// ---------------------------------------------------------------------------
// Weil pairing

FF weil_pairing(const Curve& E, const Point& S, const Point& T, unsigned n) {
  const Tower* tw = E.tw;
  if (S.inf || T.inf) return tw->one(1);
  if (S == T) return tw->one(1);
  CurveFn fS = miller_function(E, S, n);
  CurveFn fT = miller_function(E, T, n);
  unsigned base = std::lcm(std::lcm(S.x.degree(), T.x.degree()), std::lcm(S.y.degree(), T.y.degree()));
  for (int tries = 0; tries < 64; tries++) {
    unsigned deg = base * (tries < 16 ? 1 : 2);
    Point R = random_point(E, deg);
    try {
      FF num = fS.eval(ec_add(E, T, R)) / fS.eval(R);
      FF den = fT.eval(ec_add(E, S, ec_neg(E, R))) / fT.eval(ec_neg(E, R));
      FF e = num / den;
      if (e.is_zero()) continue;
      if (!(e.pow(n) == tw->one(e.degree()))) throw error("weil_pairing: value not in mu_n");
      return e;
    } catch (const error&) {
      continue;  // support collision; retry with a fresh auxiliary point
    }
  }
  throw error("weil_pairing: retries exhausted");
}

// ---------------------------------------------------------------------------
// torsion data

unsigned TorsionData::idx(unsigned a, unsigned b) const {
  for (unsigned i = 0; i < pts.size(); i++)
    if (coords[i][0] == a % n && coords[i][1] == b % n) return i;
  throw error("TorsionData::idx: missing point");
}

void TorsionData::invert_pairing() {
  auto old = pairing;
  for (unsigned i = 0; i < pts.size(); i++)
    for (unsigned j = 0; j < pts.size(); j++) pairing[i][j] = old[j][i];
  zeta = pairing[iS][iT];
}

TorsionData torsion_data(const Curve& E, unsigned n) {
  const Tower* tw = E.tw;
  if (tw->p() % n == 0) throw error("torsion_data: p divides n");
  TorsionData td;
  td.n = n;

  // x-coordinates: roots of the division polynomial (n odd) or of the cubic (n = 2)
  FPoly xpoly;
  if (n == 2) {
    FPoly x = FPoly::X(tw, 1);
    xpoly = x * x * x + FPoly::constant(E.a4) * x + FPoly::constant(E.a6);
  } else {
    xpoly = division_poly(E, n);
  }
  auto fac = poly_factor(xpoly);

  // working extension: big enough for all x's and y's
  unsigned N = 1;
  for (auto& fm : fac.factors) {
    unsigned d = (unsigned)fm.f.deg();
    tw->extend(d);
    auto rts = poly_roots(fm.f.lifted(d));
    if (rts.empty()) throw error("torsion_data: factor has no root in its own field");
    FF r = rhs(E, rts[0]);
    unsigned dy = d;
    if (!r.is_zero() && !tw->nth_root(r, 2).has_value()) dy = 2 * d;
    N = std::lcm(N, dy);
  }
  tw->extend(N);

  std::vector<Point> pts;
  pts.push_back(Point::infinity());
  for (const FF& x0 : poly_roots(xpoly.lifted(N))) {
    FF r = rhs(E, x0);
    if (r.is_zero()) {
      pts.push_back(Point::affine(x0, tw->zero(N)));
      continue;
    }
    auto y = tw->nth_root(r, 2);
    if (!y) throw error("torsion_data: y not in working field");
    pts.push_back(Point::affine(x0, *y));
    pts.push_back(Point::affine(x0, -*y));
  }
  if (pts.size() != n * n) throw error("torsion_data: wrong torsion count");
  for (auto& P : pts) {
    if (!on_curve(E, P)) throw error("torsion_data: point off curve");
    if (!ec_mul(E, (long)n, P).inf) throw error("torsion_data: point not killed by n");
  }

  // Frobenius permutation over the working field, then the true splitting degree
  auto find_idx = [&](const Point& P) -> unsigned {
    for (unsigned i = 0; i < pts.size(); i++)
      if (pts[i] == P) return i;
    throw error("torsion_data: closure failure");
  };
  std::vector<unsigned> perm(pts.size());
  for (unsigned i = 0; i < pts.size(); i++) perm[i] = find_idx(frob_point(E, pts[i]));
  unsigned m = 1;
  {
    std::vector<unsigned> cur(perm);
    auto is_id = [&](const std::vector<unsigned>& q) {
      for (unsigned i = 0; i < q.size(); i++)
        if (q[i] != i) return false;
      return true;
    };
    while (!is_id(cur)) {
      for (unsigned i = 0; i < cur.size(); i++) cur[i] = perm[cur[i]];
      m++;
      if (m > 64) throw error("torsion_data: Frobenius order too large");
    }
  }
  td.m = m;
  tw->extend(m);

  // move all coordinates down to L = F_{p^m} and sort deterministically
  std::vector<Point> lpts;
  lpts.push_back(Point::infinity());
  for (auto& P : pts) {
    if (P.inf) continue;
    auto x = tw->extract(P.x, m);
    auto y = tw->extract(P.y, m);
    if (!x || !y) throw error("torsion_data: coordinates not in splitting field");
    lpts.push_back(Point::affine(*x, *y));
  }
  std::sort(lpts.begin() + 1, lpts.end(), [](const Point& A, const Point& B) {
    if (!(A.x == B.x)) return A.x < B.x;
    return A.y < B.y;
  });
  td.pts = lpts;

  td.frob_perm.resize(td.pts.size());
  for (unsigned i = 0; i < td.pts.size(); i++) {
    Point Q = frob_point(E, td.pts[i]);
    td.frob_perm[i] = [&] {
      for (unsigned j = 0; j < td.pts.size(); j++)
        if (td.pts[j] == Q) return j;
      throw error("torsion_data: frobenius closure");
    }();
  }

  td.add_tab.assign(td.pts.size(), std::vector<unsigned>(td.pts.size(), 0));
  td.neg_tab.resize(td.pts.size());
  for (unsigned i = 0; i < td.pts.size(); i++) {
    Point Ni = ec_neg(E, td.pts[i]);
    for (unsigned j = 0; j < td.pts.size(); j++)
      if (td.pts[j] == Ni) td.neg_tab[i] = j;
    for (unsigned j = 0; j < td.pts.size(); j++) {
      Point Sm = ec_add(E, td.pts[i], td.pts[j]);
      for (unsigned k2 = 0; k2 < td.pts.size(); k2++)
        if (td.pts[k2] == Sm) td.add_tab[i][j] = k2;
    }
  }

  // basis: first pair (in list order) whose pairing has exact order n
  bool found = false;
  FF zeta;
  for (unsigned i = 1; i < td.pts.size() && !found; i++) {
    for (unsigned j = i + 1; j < td.pts.size() && !found; j++) {
      FF e = weil_pairing(E, td.pts[i], td.pts[j], n);
      // exact order n: e^n = 1 (checked inside) and e^(n/l) != 1 for prime l | n
      bool exact = !(e == tw->one(e.degree()));
      for (unsigned l = 2; exact && l < n; l++)
        if (n % l == 0 && e.pow(n / l) == tw->one(e.degree())) exact = false;
      if (exact) {
        td.iS = i;
        td.iT = j;
        zeta = tw->extract(e, m) ? *tw->extract(e, m) : e;
        found = true;
      }
    }
  }
  if (!found) throw error("torsion_data: no basis with exact-order pairing");
  td.zeta = zeta;

  // coordinates of every point over the basis
  td.coords.assign(td.pts.size(), {0, 0});
  {
    std::vector<std::vector<unsigned>> table(n, std::vector<unsigned>(n));
    Point Sa = Point::infinity();
    for (unsigned a = 0; a < n; a++) {
      Point cur = Sa;
      for (unsigned b = 0; b < n; b++) {
        unsigned idx = 0;
        for (unsigned k2 = 0; k2 < td.pts.size(); k2++)
          if (td.pts[k2] == cur) idx = k2;
        td.coords[idx] = {a, b};
        table[a][b] = idx;
        cur = ec_add(E, cur, td.pts[td.iT]);
      }
      Sa = ec_add(E, Sa, td.pts[td.iS]);
    }
  }

  // pairing table by bilinearity from zeta (exact: the pairing is bilinear
  // and alternating); cross-checked against Miller in the test suite
  td.pairing.assign(td.pts.size(), std::vector<FF>(td.pts.size(), tw->one(m)));
  FF zl = tw->embed(td.zeta, m);
  for (unsigned i = 0; i < td.pts.size(); i++)
    for (unsigned j = 0; j < td.pts.size(); j++) {
      long ad = (long)td.coords[i][0] * td.coords[j][1];
      long bc = (long)td.coords[i][1] * td.coords[j][0];
      long e = ((ad - bc) % (long)n + (long)n) % (long)n;
      td.pairing[i][j] = zl.pow((u64)e);
    }

  // Frobenius matrix w.r.t. (S,T)
  td.frob_mat[0][0] = td.coords[td.frob_perm[td.iS]][0];
  td.frob_mat[1][0] = td.coords[td.frob_perm[td.iS]][1];
  td.frob_mat[0][1] = td.coords[td.frob_perm[td.iT]][0];
  td.frob_mat[1][1] = td.coords[td.frob_perm[td.iT]][1];
  {
    long det = ((long)td.frob_mat[0][0] * td.frob_mat[1][1] - (long)td.frob_mat[0][1] * td.frob_mat[1][0]) % (long)n;
    if (((det % (long)n) + (long)n) % (long)n != (long)(tw->p() % n))
      throw error("torsion_data: Frobenius determinant mismatch");
  }
  return td;
}

}  // namespace descent
