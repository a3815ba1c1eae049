#pragma once

#include "descent/blackbox.hpp"
#include "descent/cubic.hpp"
#include "descent/theta.hpp"

namespace descent {

struct Pencil {
  TernaryCubic F1, F2;  // K-coefficients, from the reduced span
};

// M_T = sum_i rdual_i(T) tau(r_i); checks the projective-homomorphism and
// commutator hypotheses
TranslationMatrices matrices_from_tau(const EtaleBasis& B, const SplitIsomorphism& tau);

// determinant construction |v, Mv, M^2 v| decomposed over the r-basis
Pencil pencil_from_M(const EtaleBasis& B, const TranslationMatrices& M);

// index [Aut_K(E[3]) : Aut_K(E)] from the centralizer of the Frobenius image
unsigned nu_E3(const Curve& E, const TorsionData& td);

// all pencil members over K with Jacobian E, smooth and stabilized by M;
// the list has exactly nu_E3 entries
std::vector<TernaryCubic> select_member(const Pencil& pencil, const Curve& E, const EtaleBasis& B,
                                        const TranslationMatrices& M);

// det(M_T) as an element of R^x (power-class representative of w_1)
EtaleElement det_M_element(const EtaleBasis& B, const TranslationMatrices& M);

}  // namespace descent
