#include "doctest.h"

#include "descent/flex.hpp"

using namespace descent;

TEST_CASE("etale decomposition of the group algebra matches torsion orbits") {
  CurveContext ctx(7, 3, 1, 3, 9);
  TensorElement one = constant_tensor(&ctx.tw, ctx.td, ctx.tw.one(1));
  FlexAlgebra FA = flex_algebra(ctx, one);
  CHECK(FA.F.is_commutative());
  // for rho = 1 the flex torsor is E[3] itself: components <-> dual orbits;
  // structural check: multiset of degrees sums to 9 and the count equals the
  // number of Frobenius orbits on E[3] (the torsor orbit count for xi = 0)
  unsigned total = 0;
  for (auto& c : FA.dec.comps) total += c.deg;
  CHECK(total == 9);
  CHECK(FA.dec.comps.size() == ctx.B.orbits.size());
  // idempotents are orthogonal and sum to 1
  Zp zp = ctx.tw.zp();
  std::vector<u64> sum(9, 0);
  for (auto& c : FA.dec.comps)
    for (unsigned k = 0; k < 9; k++) sum[k] = zp.add(sum[k], c.idem[k]);
  CHECK(sum == FA.F.unit);
  for (std::size_t i = 0; i < FA.dec.comps.size(); i++)
    for (std::size_t j = 0; j < i; j++) {
      auto prod = FA.F.mul(FA.dec.comps[i].idem, FA.dec.comps[j].idem);
      CHECK(prod == std::vector<u64>(9, 0));
    }
}

TEST_CASE("component maps are inverse field isomorphisms") {
  CurveContext ctx(7, 3, 1, 3, 15);
  DescentClass cls = class_from_point(&ctx.tw, ctx.E, ctx.td, ctx.class_representatives().back());
  FlexAlgebra FA = flex_algebra(ctx, cls.rho);
  for (unsigned j = 0; j < FA.dec.comps.size(); j++) {
    unsigned d = FA.dec.comps[j].deg;
    for (int it = 0; it < 5; it++) {
      FF v = ctx.tw.random_element(d);
      auto lifted = component_lift(FA.F, FA.dec, j, v);
      CHECK(component_value(FA.F, FA.dec, j, lifted) == v);
      // multiplicativity of the projection on random algebra elements
      std::vector<u64> x(9), y(9);
      for (auto& c : x) c = ctx.tw.rng()() % 7;
      for (auto& c : y) c = ctx.tw.rng()() % 7;
      FF px = component_value(FA.F, FA.dec, j, x);
      FF py = component_value(FA.F, FA.dec, j, y);
      CHECK(component_value(FA.F, FA.dec, j, FA.F.mul(x, y)) == px * py);
    }
  }
}

TEST_CASE("flex torsor component degrees match the twisted orbit structure") {
  CurveContext ctx(7, 3, 1, 3, 21);
  auto reps = ctx.class_representatives();
  for (auto& P : reps) {
    if (P.inf) continue;
    DescentClass cls = class_from_point(&ctx.tw, ctx.E, ctx.td, P);
    FlexAlgebra FA = flex_algebra(ctx, cls.rho);
    // oracle: orbit count of T -> phi(T) + xi on E[3], using the cocycle value
    // recovered from gamma: xi = the unique S with gamma twisted-action shift;
    // recompute directly: xi_idx from phi(gamma)/gamma = w(xi)
    EtaleElement chi = galois_act(&ctx.tw, ctx.td, cls.gamma, 1) / cls.gamma;
    unsigned xi_idx = 99;
    for (unsigned s = 0; s < 9 && xi_idx == 99; s++)
      if (chi == w_map(&ctx.tw, ctx.td, s)) xi_idx = s;
    REQUIRE(xi_idx != 99);
    // twisted permutation
    std::vector<unsigned> tperm(9);
    for (unsigned i = 0; i < 9; i++) tperm[i] = ctx.td.add_tab[ctx.td.frob_perm[i]][xi_idx];
    std::vector<bool> seen(9, false);
    unsigned orbits = 0;
    std::vector<unsigned> sizes;
    for (unsigned i = 0; i < 9; i++) {
      if (seen[i]) continue;
      orbits++;
      unsigned j = i, len = 0;
      do {
        seen[j] = true;
        j = tperm[j];
        len++;
      } while (j != i);
      sizes.push_back(len);
    }
    CHECK(FA.dec.comps.size() == orbits);
    std::vector<unsigned> degs;
    for (auto& c : FA.dec.comps) degs.push_back(c.deg);
    std::sort(degs.begin(), degs.end());
    std::sort(sizes.begin(), sizes.end());
    CHECK(degs == sizes);
  }
}

TEST_CASE("tau_prime is an F-algebra homomorphism") {
  CurveContext ctx(7, 3, 1, 3, 27);
  auto reps = ctx.class_representatives();
  DescentClass cls = class_from_point(&ctx.tw, ctx.E, ctx.td, reps.back());
  ClassMethods cm = make_class_methods(ctx, std::move(cls));
  FlexAlgebra FA = flex_algebra(ctx, cm.cls.rho);
  // identity maps to the F-identity matrix
  FMat tpu = tau_prime(ctx, cm.Arho.unit);
  for (unsigned a = 0; a < 3; a++)
    for (unsigned b = 0; b < 3; b++) {
      if (a == b)
        CHECK(tpu.at(a, b) == FA.F.unit);
      else
        CHECK(tpu.at(a, b) == std::vector<u64>(9, 0));
    }
  // multiplicativity on random pairs: tau'(x *_{eps rho} y) = tau'(x) tau'(y)
  for (int it = 0; it < 20; it++) {
    std::vector<u64> x(9), y(9);
    for (auto& c : x) c = ctx.tw.rng()() % 7;
    for (auto& c : y) c = ctx.tw.rng()() % 7;
    FMat lhs = tau_prime(ctx, cm.Arho.mul(x, y));
    FMat rhs = fmat_mul(FA.F, tau_prime(ctx, x), tau_prime(ctx, y));
    CHECK(fmat_equal(lhs, rhs));
  }
}

TEST_CASE("flex method end to end, cross-checked against hesse") {
  for (auto [p, a4, a6] : {std::tuple<u64, u64, u64>{7, 3, 1}, {11, 0, 1}}) {
    CurveContext ctx(p, a4, a6, 3, 33);
    auto reps = ctx.class_representatives();
    for (auto& P : reps) {
      DescentClass cls = P.inf ? trivial_class(&ctx.tw, ctx.td) : class_from_point(&ctx.tw, ctx.E, ctx.td, P);
      ClassMethods cm = make_class_methods(ctx, std::move(cls));
      HesseResult hr = run_hesse(ctx, cm);
      FlexResult fr = run_flex(ctx, cm);
      // output is stabilized by the hesse matrices for the same class
      for (unsigned t = 0; t < 9; t++) CHECK(stabilized_by(fr.cubic, hr.M.M[t]));
      // invariants match E up to u^4/u^6 and the cubic appears in the pencil list
      CHECK(jacobian_matches(fr.cubic, ctx.E));
      bool in_list = false;
      for (auto& C : hr.curves)
        if (C.proportional_to(fr.cubic)) in_list = true;
      CHECK(in_list);
      for (unsigned k = 1; k <= 2; k++)
        CHECK(count_plane_points(fr.cubic, k) == count_points(ctx.E, k));
      // single-component run gives the same cubic up to K-scalar
      TernaryCubic c0 = transform_equations_component(ctx, fr.FA, fr.B, 0);
      CHECK(c0.proportional_to(fr.cubic));
    }
  }
}

TEST_CASE("trivial class: B-transform preserves E's cubic class") {
  CurveContext ctx(7, 3, 1, 3, 39);
  DescentClass cls = trivial_class(&ctx.tw, ctx.td);
  ClassMethods cm = make_class_methods(ctx, std::move(cls));
  FlexResult fr = run_flex(ctx, cm);
  CHECK(same_invariant_class(fr.cubic, weierstrass_cubic(ctx.E)));
}
