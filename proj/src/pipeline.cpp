#include "descent/pipeline.hpp"

namespace descent {

CurveContext::CurveContext(u64 p, u64 a4, u64 a6, unsigned n_, u64 seed_)
    : tw(p, seed_), seed(seed_), n(n_), E(make_curve(&tw, tw.from_int(a4), tw.from_int(a6))) {
  if (std::gcd<u64>(p, n) != 1) throw error("CurveContext: p divides n");
  td = torsion_data(E, n);
  if (n % 2 == 1) {
    Mbase = translation_matrices(E, td);
    pairing_flipped = calibrate_pairing(E, td, Mbase);
    B = build_basis(&tw, td);
    epsM = epsilon_from_M(&tw, td, Mbase);
    A1 = enveloping_algebra(B, epsM);
    t1 = tau1(B, Mbase);
    if (!check_split_iso(A1, t1)) throw error("CurveContext: tau1 is not an isomorphism");
  } else {
    B = build_basis(&tw, td);
  }
}

const TensorElement& CurveContext::epsF() {
  if (!epsF_) epsF_ = epsilon_from_F(&tw, E, td);
  return *epsF_;
}

const EtaleElement& CurveContext::gauge_F_over_M() {
  if (!gaugeFM_) {
    TensorElement ratio = epsF() / epsM;
    EtaleElement g = solve_partial(&tw, td, ratio);
    bool found = false;
    for (unsigned s = 0; s < td.pts.size() && !found; s++) {
      EtaleElement cand = w_map(&tw, td, s) * g;
      if (is_equivariant(&tw, td, cand)) {
        // values of a rational solution lie in L
        for (auto& x : cand.v) {
          auto e = tw.extract(x, td.m);
          if (!e) throw error("gauge_F_over_M: value outside L");
          x = *e;
        }
        cand.rational = true;
        gaugeFM_ = cand;
        found = true;
      }
    }
    if (!found) throw error("gauge_F_over_M: no rational gauge (epsilons in different classes?)");
  }
  return *gaugeFM_;
}

std::vector<Point> CurveContext::class_representatives() {
  std::vector<Point> pts{Point::infinity()};
  for (u64 x = 0; x < tw.p(); x++) {
    FF xf = tw.from_int(x);
    FF r = xf * xf * xf + E.a4 * xf + E.a6;
    if (r.is_zero())
      pts.push_back(Point::affine(xf, tw.zero(1)));
    else {
      auto y = tw.nth_root(r, 2);
      if (y) {
        pts.push_back(Point::affine(xf, *y));
        pts.push_back(Point::affine(xf, -*y));
      }
    }
  }
  std::vector<Point> multiples;
  for (auto& P : pts) multiples.push_back(ec_mul(E, (long)n, P));
  auto in_nE = [&](const Point& P) {
    for (auto& Q : multiples)
      if (Q == P) return true;
    return false;
  };
  std::vector<Point> reps;
  for (auto& P : pts) {
    bool dup = false;
    for (auto& R : reps)
      if (in_nE(ec_add(E, P, ec_neg(E, R)))) { dup = true; break; }
    if (!dup) reps.push_back(P);
  }
  // O's coset first
  for (std::size_t i = 0; i < reps.size(); i++)
    if (in_nE(reps[i])) {
      std::swap(reps[0], reps[i]);
      break;
    }
  reps[0] = Point::infinity();
  return reps;
}

ClassMethods make_class_methods(CurveContext& ctx, DescentClass cls) {
  ClassMethods cm;
  cm.cls = std::move(cls);
  if (ctx.n % 2 == 1) {
    cm.Arho = enveloping_algebra(ctx.B, ctx.epsM * cm.cls.rho);
    cm.tau_rho = trivialize(cm.Arho, ctx.seed);
  }
  return cm;
}

HesseResult run_hesse(CurveContext& ctx, const ClassMethods& cm) {
  HesseResult hr;
  hr.M = matrices_from_tau(ctx.B, cm.tau_rho);
  hr.pencil = pencil_from_M(ctx.B, hr.M);
  hr.curves = select_member(hr.pencil, ctx.E, ctx.B, hr.M);
  hr.nu = nu_E3(ctx.E, ctx.td);
  return hr;
}

HesseChecks check_hesse(CurveContext& ctx, const ClassMethods& cm, const HesseResult& hr) {
  HesseChecks out;
  if (hr.curves.empty()) return out;
  out.smooth = true;
  out.stabilized = true;
  out.counts_match = true;
  out.rational_point = true;
  for (const auto& C : hr.curves) {
    if (!cubic_smooth(C)) out.smooth = false;
    for (unsigned t = 0; t < ctx.td.pts.size(); t++)
      if (!stabilized_by(C, hr.M.M[t])) out.stabilized = false;
    for (unsigned k = 1; k <= 2; k++)
      if (count_plane_points(C, k) != count_points(ctx.E, k)) out.counts_match = false;
    if (!has_rational_point(C)) out.rational_point = false;
  }
  EtaleElement detM = det_M_element(ctx.B, hr.M);
  EtaleElement kap = kappa(&ctx.tw, ctx.td, cm.cls.rho);
  out.det_class = power_class_equal(&ctx.tw, ctx.td, ctx.B, detM, kap);
  return out;
}

EtaleElement random_gauge_eta(CurveContext& ctx) {
  for (int tries = 0; tries < 256; tries++) {
    std::vector<u64> coords(ctx.B.r.size());
    for (auto& c : coords) c = ctx.tw.rng()() % ctx.tw.p();
    EtaleElement eta = from_k_coords(ctx.B, coords);
    if (!eta.invertible()) continue;
    // normalize eta(O) = 1 to preserve the rho(O,O) = 1 convention
    FF e0 = eta.v[ctx.td.origin()];
    auto e0p = ctx.tw.extract(e0, 1);
    if (!e0p) continue;
    EtaleElement scaled = eta;
    FF inv = e0p->inv();
    for (auto& x : scaled.v) x = x * inv;
    scaled.rational = true;
    return scaled;
  }
  throw error("random_gauge_eta: exhausted");
}

}  // namespace descent
