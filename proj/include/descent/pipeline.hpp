#pragma once

#include <memory>
#include <optional>

#include "descent/blackbox.hpp"
#include "descent/etale.hpp"
#include "descent/hesse.hpp"
#include "descent/theta.hpp"

namespace descent {

// Everything attached to one curve: calibrated torsion data, basis, base
// translation matrices, the two epsilon representatives and tau1.
class CurveContext {
public:
  CurveContext(u64 p, u64 a4, u64 a6, unsigned n, u64 seed);

  Tower tw;
  u64 seed;
  unsigned n;
  Curve E;
  TorsionData td;  // pairing calibrated against the matrix commutator
  bool pairing_flipped = false;
  EtaleBasis B;
  TranslationMatrices Mbase;
  TensorElement epsM;
  AlgebraK A1;
  SplitIsomorphism t1;

  const TensorElement& epsF();            // cached
  const EtaleElement& gauge_F_over_M();   // g in R^x with epsF = epsM * d(g)

  // representatives of E(F_p)/nE(F_p), O first
  std::vector<Point> class_representatives();

private:
  std::optional<TensorElement> epsF_;
  std::optional<EtaleElement> gaugeFM_;
};

// per-class artifacts shared by the three methods
struct ClassMethods {
  DescentClass cls;
  AlgebraK Arho;              // (R, +, *_{epsM rho})
  SplitIsomorphism tau_rho;   // black box output
};
ClassMethods make_class_methods(CurveContext& ctx, DescentClass cls);

struct HesseResult {
  TranslationMatrices M;
  Pencil pencil;
  std::vector<TernaryCubic> curves;
  unsigned nu = 0;
};
HesseResult run_hesse(CurveContext& ctx, const ClassMethods& cm);

// full verification of a Hesse run (exact checks; k = 1, 2 point counts)
struct HesseChecks {
  bool smooth = false, stabilized = false, counts_match = false, rational_point = false, det_class = false;
  bool all() const { return smooth && stabilized && counts_match && rational_point && det_class; }
};
HesseChecks check_hesse(CurveContext& ctx, const ClassMethods& cm, const HesseResult& hr);

// K-rational eta in R^x with eta(O) = 1, invertible, from the context RNG
EtaleElement random_gauge_eta(CurveContext& ctx);

}  // namespace descent
