#pragma once

#include <optional>
#include <vector>

#include "descent/elliptic.hpp"
#include "descent/fplin.hpp"

namespace descent {

// Element of Rbar' = Map(E[n], L'): one value per torsion index.
struct EtaleElement {
  const Tower* tw = nullptr;
  std::vector<FF> v;   // indexed like TorsionData::pts
  bool rational = false;  // Galois equivariant (element of R)

  bool invertible() const;
  EtaleElement operator*(const EtaleElement& o) const;
  EtaleElement operator/(const EtaleElement& o) const;
  EtaleElement inv() const;
  EtaleElement pow(u64 e) const;
  bool operator==(const EtaleElement& o) const;
};

// Element of Map(E[n] x E[n], L').
struct TensorElement {
  const Tower* tw = nullptr;
  std::vector<std::vector<FF>> v;
  bool rational = false;

  bool invertible() const;
  TensorElement operator*(const TensorElement& o) const;
  TensorElement operator/(const TensorElement& o) const;
  TensorElement inv() const;
  TensorElement op() const;  // swap operands
  bool operator==(const TensorElement& o) const;
};

// K-basis of R with dual basis under the trace form; indices grouped by
// Frobenius orbits.
struct EtaleBasis {
  const TorsionData* td = nullptr;
  std::vector<std::vector<unsigned>> orbits;      // index orbits under Frobenius
  std::vector<EtaleElement> r;                    // r_1..r_{n^2}, values over L
  std::vector<EtaleElement> rdual;                // trace-dual basis
  std::vector<unsigned> orbit_rep;                // orbit representative per basis index
};

EtaleBasis build_basis(const Tower* tw, const TorsionData& td);

// Galois action sigma^j on Map-valued elements: (s a)(T) = s(a(s^-1 T)).
EtaleElement galois_act(const Tower* tw, const TorsionData& td, const EtaleElement& a, unsigned j);
TensorElement galois_act(const Tower* tw, const TorsionData& td, const TensorElement& a, unsigned j);
bool is_equivariant(const Tower* tw, const TorsionData& td, const EtaleElement& a);
bool is_equivariant(const Tower* tw, const TorsionData& td, const TensorElement& a);

EtaleElement constant_element(const Tower* tw, const TorsionData& td, const FF& c, bool rational = true);
TensorElement constant_tensor(const Tower* tw, const TorsionData& td, const FF& c, bool rational = true);
EtaleElement delta_element(const Tower* tw, const TorsionData& td, unsigned at);  // indicator
// coefficient-vector <-> map conversions for K-rational elements over the r-basis
EtaleElement from_k_coords(const EtaleBasis& B, const std::vector<u64>& coords);
std::vector<u64> to_k_coords(const EtaleBasis& B, const EtaleElement& a);

// (d alpha)(T1,T2) = alpha(T1) alpha(T2) / alpha(T1+T2)
TensorElement partial1(const Tower* tw, const TorsionData& td, const EtaleElement& g);
// (d rho)(T1,T2,T3) indexed [i][j][k]
std::vector<std::vector<std::vector<FF>>> partial2(const Tower* tw, const TorsionData& td, const TensorElement& rho);
bool partial2_trivial(const Tower* tw, const TorsionData& td, const TensorElement& rho);

EtaleElement w_map(const Tower* tw, const TorsionData& td, unsigned S);
TensorElement weil_tensor(const Tower* tw, const TorsionData& td);  // e(T1,T2)

EtaleElement trace_R2_to_R(const Tower* tw, const TorsionData& td, const TensorElement& rho);
TensorElement comult(const Tower* tw, const TorsionData& td, const EtaleElement& a);
EtaleElement fourier(const Tower* tw, const TorsionData& td, const EtaleElement& a);
// convolution product (group-algebra multiplication twisted by rho)
EtaleElement convolve(const Tower* tw, const TorsionData& td, const TensorElement& rho,
                      const EtaleElement& a, const EtaleElement& b);

bool is_in_H(const Tower* tw, const TorsionData& td, const TensorElement& rho);
bool is_in_theta_coset(const Tower* tw, const TorsionData& td, const TensorElement& rho, const TensorElement& e);

// Multiplicative cocycle for the cyclic group Gal(L'/K) of order mprime,
// generated by Frobenius, with values in Map(E[n], L')^x.
struct Cocycle {
  unsigned mprime = 1;
  std::vector<EtaleElement> c;  // c[j] = value at phi^j, j = 0..mprime-1 (c[0] = 1)
};
Cocycle cocycle_from_torsion_value(const Tower* tw, const TorsionData& td, unsigned xi_idx, unsigned mprime);
// gamma with sigma(gamma)/gamma = c_sigma (constructive Hilbert 90)
EtaleElement hilbert90(const Tower* tw, const TorsionData& td, const Cocycle& c, unsigned field_deg);

struct DescentClass {
  TensorElement rho;        // K-rational, rho(O,O) = 1, in H
  EtaleElement alpha;       // gamma^n, K-rational
  EtaleElement gamma;       // over L', d(gamma) = rho
  unsigned gamma_field = 1; // [L' : K]
  std::string provenance;
};

DescentClass trivial_class(const Tower* tw, const TorsionData& td);
DescentClass class_from_point(const Tower* tw, const Curve& E, const TorsionData& td, const Point& P);
// accepts a Frobenius-cyclic cocycle given by its generator value xi in E[n]
DescentClass class_from_cocycle(const Tower* tw, const Curve& E, const TorsionData& td, unsigned xi_idx);

// gamma over a controlled extension with d(gamma) = rho; deterministic
EtaleElement solve_partial(const Tower* tw, const TorsionData& td, const TensorElement& rho);
// alpha(T) = prod_i rho(T, iT)
EtaleElement cyclic_alpha(const Tower* tw, const TorsionData& td, const TensorElement& rho);
// power class of gamma^n in R^x/(R^x)^n
EtaleElement kappa(const Tower* tw, const TorsionData& td, const TensorElement& rho);

// n-th power class tests, componentwise over the Frobenius orbits
bool power_class_trivial(const Tower* tw, const TorsionData& td, const EtaleBasis& B, const EtaleElement& a);
bool power_class_equal(const Tower* tw, const TorsionData& td, const EtaleBasis& B, const EtaleElement& a,
                       const EtaleElement& b);
// canonical exponent labels in mu_n per orbit (chi(alpha) as a power of chi at
// a fixed orbit generator element)
std::vector<unsigned> power_class_label(const Tower* tw, const TorsionData& td, const EtaleBasis& B,
                                        const EtaleElement& a);

// does rho1/rho2 lie in d(R^x) with a K-rational solution? exact decision via
// solve_partial + character sweep
bool same_H_class(const Tower* tw, const TorsionData& td, const TensorElement& rho1, const TensorElement& rho2);

}  // namespace descent
