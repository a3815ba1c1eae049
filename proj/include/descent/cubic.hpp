#pragma once

#include "descent/elliptic.hpp"
#include "descent/linalg.hpp"

namespace descent {

// Plane cubic with coefficients over F_{p^k} in the fixed monomial order
// x^3, x^2y, x^2z, xy^2, xyz, xz^2, y^3, y^2z, yz^2, z^3.
struct TernaryCubic {
  const Tower* tw = nullptr;
  std::vector<FF> c;  // 10 coefficients

  bool is_zero() const;
  FF eval(const FF& x, const FF& y, const FF& z) const;
  TernaryCubic scaled(const FF& s) const;
  // F(M (x,y,z)^t): substitute a linear change of variables
  TernaryCubic transformed(const Mat& M) const;
  // scale so the first nonzero coefficient is 1
  TernaryCubic normalized() const;
  bool proportional_to(const TernaryCubic& o) const;
};

extern const std::array<std::array<unsigned, 3>, 10> kCubicMonomials;

TernaryCubic weierstrass_cubic(const Curve& E);  // y^2 z - x^3 - a4 x z^2 - a6 z^3

// classical degree-4 and degree-6 invariants, normalized so that the
// Weierstrass cubic of E has (c4, c6) = (-48 a4, -864 a6); the Jacobian of F
// is then y^2 = x^3 - 27 c4(F) x - 54 c6(F)
FF cubic_c4(const TernaryCubic& F);
FF cubic_c6(const TernaryCubic& F);
// c4 (degree 4) or c6 (degree 6) of a F1 + b F2 as a binary form in (a, b),
// expanded exactly; coefficient k multiplies a^(deg-k) b^k
std::vector<u64> pencil_invariant_form(const TernaryCubic& F1, const TernaryCubic& F2, unsigned degree);
FF cubic_disc(const TernaryCubic& F);  // (c4^3 - c6^2)/1728
bool cubic_smooth(const TernaryCubic& F);
Curve jacobian_curve(const TernaryCubic& F);  // y^2 = x^3 - 27 c4 x - 54 c6 (K coefficients)

// is there u in K^x with c4(F) = u^4 c4(E), c6(F) = u^6 c6(E)?
bool jacobian_matches(const TernaryCubic& F, const Curve& E);
// same (c4 : c6) class up to (u^4, u^6) between two cubics over K
bool same_invariant_class(const TernaryCubic& F, const TernaryCubic& G);

long count_plane_points(const TernaryCubic& F, unsigned k);  // #F(F_{p^k}) in P^2
bool has_rational_point(const TernaryCubic& F);
// is F(M v) proportional to F?
bool stabilized_by(const TernaryCubic& F, const Mat& M);

}  // namespace descent
