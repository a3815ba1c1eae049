#pragma once

#include "descent/pipeline.hpp"

namespace descent {

// Matrix over the flex algebra F = (R, +, *_rho): entries are K-coordinate
// vectors over the w-basis (the r-basis transported by the identity map).
struct FMat {
  unsigned n = 0, dim = 0;
  std::vector<std::vector<u64>> e;  // n*n entries, each a dim-long K-vector

  const std::vector<u64>& at(unsigned a, unsigned b) const { return e[a * n + b]; }
  std::vector<u64>& at(unsigned a, unsigned b) { return e[a * n + b]; }
};
FMat fmat_mul(const AlgebraK& F, const FMat& X, const FMat& Y);
bool fmat_equal(const FMat& X, const FMat& Y);

// decomposition of a commutative etale K-algebra into field components
struct EtaleComponent {
  std::vector<u64> idem;                  // primitive idempotent
  unsigned deg = 1;                       // component field degree d
  std::vector<std::vector<u64>> basis;    // e, b, ..., b^{d-1} (algebra coords)
  FF beta;                                // image of b in the tower field F_{p^d}
  FpMat beta_powers;                      // d x d: columns = coeffs of beta^k
};
struct EtaleDecomposition {
  std::vector<EtaleComponent> comps;
};
EtaleDecomposition etale_decompose(const AlgebraK& F, u64 seed);
// project x into component j and read it as a tower field element
FF component_value(const AlgebraK& F, const EtaleDecomposition& dec, unsigned j, const std::vector<u64>& x);
// lift a tower field element of degree comps[j].deg into the component
std::vector<u64> component_lift(const AlgebraK& F, const EtaleDecomposition& dec, unsigned j, const FF& v);

struct FlexAlgebra {
  AlgebraK F;  // commutative
  EtaleDecomposition dec;
};
FlexAlgebra flex_algebra(CurveContext& ctx, const TensorElement& rho);

// tau'_rho(x) = sum_i tau1(rdual_i . x) (x) r_i, an F-algebra map A_rho (x) F -> Mat_n(F)
FMat tau_prime(CurveContext& ctx, const std::vector<u64>& x_coords);

// B in GL_n(F) with tau'(x) = B tau_rho(x) B^-1; solved per field component
FMat solve_B(CurveContext& ctx, const FlexAlgebra& FA, const ClassMethods& cm);

// Step 7: expand f_E(B x) over the w-basis; all coordinate cubics are
// proportional over K; returns the normalized plane cubic
TernaryCubic transform_equations(CurveContext& ctx, const FlexAlgebra& FA, const FMat& B);
// single-component variant
TernaryCubic transform_equations_component(CurveContext& ctx, const FlexAlgebra& FA, const FMat& B, unsigned j);

struct FlexResult {
  FlexAlgebra FA;
  FMat B;
  TernaryCubic cubic;
};
FlexResult run_flex(CurveContext& ctx, const ClassMethods& cm);

}  // namespace descent
