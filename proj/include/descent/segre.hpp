#pragma once

#include "descent/flex.hpp"
#include "descent/pipeline.hpp"

namespace descent {

// Quadratic forms in n^2 variables with K-coefficients, as symmetric
// n^2 x n^2 matrices.
struct QuadricSystem {
  unsigned nvars = 0;
  std::vector<FpMat> quads;
  std::vector<unsigned> type;  // 1 or 2 per quadric
  unsigned count(unsigned t) const {
    unsigned c = 0;
    for (auto v : type)
      if (v == t) c++;
    return c;
  }
};

// types 1 and 2, descended to K; dimensions (n^2-3)/2 and (n^2-1)(n^2-3)/2
// for odd n, n^2/2 and n^2(n^2-4)/2 for even n
QuadricSystem type1_quadrics(CurveContext& ctx, const TensorElement& rho);
QuadricSystem type2_quadrics(CurveContext& ctx, const TensorElement& rho);
QuadricSystem segre_quadrics(CurveContext& ctx, const TensorElement& rho);  // both families

struct SegreResult {
  QuadricSystem zquads;     // model of C in P^{n^2-1}
  SplitIsomorphism tau_s;   // trivialization of (R, +, *_{epsF rho})
  FpMat Phi;                // z -> Mat_n coordinate map (row (a*n+b) = entries tau_s(r_i)_{ab})
  QuadricSystem xquads;     // quadrics on P(Mat_n) after the coordinate change
  TernaryCubic cubic;       // recovered plane cubic (n = 3)
  unsigned column_used = 0;
};

// full Segre method; n = 3 runs Steps 1-5, n = 2 stops after the two
// type-1 quadrics (cubic left empty)
SegreResult run_segre(CurveContext& ctx, const ClassMethods& cm);

// #(common zero locus of the quadrics) over F_{p^k}, by the rank-one-plus-
// scalar fiber enumeration over P^2 x mu; exact for q^k at desk scale
long count_segre_points(CurveContext& ctx, const SegreResult& sr, unsigned k);

// do two quadric systems span the same space after the substitution
// z -> gauge_matrix(eta^-1) z (the predicted change for rho -> rho d(eta))?
bool gauge_covariance_holds(CurveContext& ctx, const QuadricSystem& base, const QuadricSystem& gauged,
                            const EtaleElement& eta);

}  // namespace descent
