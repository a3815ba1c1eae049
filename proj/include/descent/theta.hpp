#pragma once

#include "descent/etale.hpp"
#include "descent/linalg.hpp"

namespace descent {

// Matrices acting on P^{n-1} implementing translation by each torsion point,
// normalized (odd n) by iota M iota^-1 = M^-1 and M^n = I.
struct TranslationMatrices {
  std::vector<Mat> M;  // per torsion index, n x n over L
};

// projective coordinates of a point under the |n.0| embedding (n = 3:
// Weierstrass coordinates (x : y : 1), O at (0 : 1 : 0))
std::vector<FF> embed_coords(const Tower* tw, const Point& P, unsigned deg);

TranslationMatrices translation_matrices(const Curve& E, const TorsionData& td);

// Pins the pairing orientation so that M_S M_T = e(S,T) M_T M_S; returns true
// if the stored pairing table had to be inverted.
bool calibrate_pairing(const Curve& E, TorsionData& td, const TranslationMatrices& M);

TensorElement epsilon_from_M(const Tower* tw, const TorsionData& td, const TranslationMatrices& M);
TensorElement epsilon_from_F(const Tower* tw, const Curve& E, const TorsionData& td);

// n^2-dimensional K-algebra by structure constants over K = F_p.
struct AlgebraK {
  const Tower* tw = nullptr;
  unsigned dim = 0;
  // c[i][j] = coordinate vector of (r_i * r_j)
  std::vector<std::vector<std::vector<u64>>> c;
  std::vector<u64> unit;

  std::vector<u64> mul(const std::vector<u64>& a, const std::vector<u64>& b) const;
  std::vector<FF> mul_ff(const std::vector<FF>& a, const std::vector<FF>& b) const;
  bool is_associative() const;
  bool is_commutative() const;
  std::vector<u64> minimal_polynomial(const std::vector<u64>& a) const;  // monic coefficients
  std::vector<u64> eval_poly(const std::vector<u64>& poly, const std::vector<u64>& a) const;
  std::vector<std::vector<u64>> left_ideal_basis(const std::vector<u64>& e) const;       // A*e
  std::vector<std::vector<u64>> corner_basis(const std::vector<u64>& e) const;           // e*A*e
  std::size_t center_dimension() const;
};

AlgebraK enveloping_algebra(const EtaleBasis& B, const TensorElement& rho_total);

struct SplitIsomorphism {
  unsigned n = 0;                // matrix size
  std::vector<FpMat> tau;       // image of each basis element, n x n over K
};

// tau(x) for x given by K-coordinates
FpMat apply_split_iso(const SplitIsomorphism& tau, const std::vector<u64>& x, Zp zp);
// full verification: linear + multiplicative on all basis pairs, unital, bijective
bool check_split_iso(const AlgebraK& A, const SplitIsomorphism& tau);

// tau1 : A_1 = (R, +, *_eps) -> Mat_n(K), tau1(x)_{ij} = tr(x . M_{ij})
SplitIsomorphism tau1(const EtaleBasis& B, const TranslationMatrices& M);

// multiplication-by-eta as a K-matrix on r-coordinates; an algebra isomorphism
// A_{rho2 d(eta)} -> A_{rho2}
FpMat gauge_matrix(const EtaleBasis& B, const EtaleElement& eta);
bool check_gauge_transform(const EtaleBasis& B, const TensorElement& rho1, const TensorElement& rho2,
                           const EtaleElement& eta);

// standard pair: M1 = diag(1, zeta, zeta^2), M2 = cyclic shift
Mat standard_M1(const Tower* tw, const FF& zeta);
Mat standard_M2(const Tower* tw, unsigned deg, unsigned n);
// N with N M_S N^-1 = M1 and N M_T N^-1 proportional to M2 (n = 3, over an
// extension of L when a cube root is needed)
Mat standard_theta_conjugator(const Tower* tw, const TorsionData& td, const Mat& MS, const Mat& MT);

// recover rho from the split description of the algebra (delta_T products)
TensorElement verify_inv2(const AlgebraK& A, const EtaleBasis& B);
// recover alpha(T) = delta_T^{*n} / delta_O
EtaleElement verify_inv1(const AlgebraK& A, const EtaleBasis& B);

}  // namespace descent
