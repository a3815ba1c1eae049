#pragma once

#include <array>
#include <optional>
#include <vector>

#include "descent/laurent.hpp"
#include "descent/poly.hpp"
#include "descent/tower.hpp"

namespace descent {

struct Curve {
  const Tower* tw = nullptr;
  FF a4, a6;  // y^2 = x^3 + a4 x + a6 over the prime field

  FF discriminant() const;
  FF c4() const { return tw->from_int(tw->p() - 48 % tw->p()) * a4; }  // -48 a4
  FF c6() const { return tw->from_int(tw->p() - 864 % tw->p()) * a6; }  // -864 a6
  FF j_invariant() const;
};

Curve make_curve(const Tower* tw, const FF& a4, const FF& a6);

struct Point {
  bool inf = true;
  FF x, y;

  static Point infinity() { return Point{}; }
  static Point affine(const FF& x, const FF& y) { return Point{false, x, y}; }
  bool operator==(const Point& o) const;
};

bool on_curve(const Curve& E, const Point& P);
Point ec_neg(const Curve& E, const Point& P);
Point ec_add(const Curve& E, const Point& P, const Point& Q);
Point ec_mul(const Curve& E, long k, const Point& P);
// chord slope, or tangent slope when P1 == P2; throws if P1 + P2 = O or either is O
FF ec_slope(const Curve& E, const Point& P1, const Point& P2);
Point frob_point(const Curve& E, const Point& P, unsigned j = 1);
Point random_point(const Curve& E, unsigned field_deg);

// n-division polynomial (odd n: polynomial in x) over the base field
FPoly division_poly(const Curve& E, unsigned n);
// numerator of x([n]X) - xp as a polynomial in x
FPoly preimage_poly(const Curve& E, unsigned n, const FF& xp);

// #E(F_{p^k}); k = 1 by enumeration (q <= qmax), k > 1 by the zeta recurrence
long count_points(const Curve& E, unsigned k = 1, u64 qmax = 20000);

// Rational function on E given as scalar * prod(lines)/prod(lines), with each
// line a x + b y + c. Supports exact evaluation and Laurent expansion at O.
struct LineFn {
  FF a, b, c;
  FF eval(const Point& P) const;
  Laurent expand(const CurveExpansion& xy, unsigned prec) const;
};
struct CurveFn {
  const Tower* tw = nullptr;
  FF scalar;
  std::vector<LineFn> num, den;

  FF eval(const Point& P) const;  // throws on support hit
  Laurent expand(const Curve& E, unsigned prec) const;
  int valuation_at_origin(const Curve& E) const;
};

// Miller function F_T with div = n(T) - n(O), normalized so its expansion in
// t = x/y at O has leading coefficient 1.
CurveFn miller_function(const Curve& E, const Point& T, unsigned n);

// Full n-torsion with Galois data over the splitting field L = F_{p^m}.
struct TorsionData {
  unsigned n = 0;
  unsigned m = 1;  // [L : F_p]
  std::vector<Point> pts;                       // size n^2, pts[0] = O, over L
  std::vector<unsigned> frob_perm;              // Frobenius as index permutation
  std::vector<std::vector<unsigned>> add_tab;   // index addition
  std::vector<unsigned> neg_tab;
  std::vector<std::array<unsigned, 2>> coords;  // index -> (a,b): P = aS + bT
  unsigned iS = 0, iT = 0;                      // basis indices
  std::array<std::array<unsigned, 2>, 2> frob_mat{};  // on (S,T), entries mod n
  std::vector<std::vector<FF>> pairing;         // e_n table over L
  FF zeta;                                      // e_n(S, T)

  unsigned idx(unsigned a, unsigned b) const;  // index of aS + bT
  unsigned origin() const { return idx(0, 0); }
  void invert_pairing();  // transpose the table (sign calibration)
};

TorsionData torsion_data(const Curve& E, unsigned n);

// Weil pairing of two n-torsion points by Miller's algorithm.
FF weil_pairing(const Curve& E, const Point& S, const Point& T, unsigned n);

}  // namespace descent
