#include "doctest.h"

#include "descent/json_io.hpp"

using namespace descent;

TEST_CASE("job runner: trivial class with all methods reports PASS") {
  ordered_json j = {{"p", 7},    {"a4", 3},        {"a6", 1},   {"n", 3},
                    {"classes", "all-classes"},    {"method", "all"}, {"seed", 5}, {"verify", "fast"}};
  JobSpec job = job_from_json(j);
  RunOutcome r = run_job(job);
  CHECK(r.ok);
  CHECK(r.report.at("status") == "PASS");
  CHECK(r.report.at("classes").size() == 3);
  for (auto& c : r.report.at("classes")) CHECK(c.at("cross_method_agreement").get<bool>());
}

TEST_CASE("determinism: identical jobs give identical reports") {
  ordered_json j = {{"p", 11},   {"a4", 0},       {"a6", 1},       {"n", 3},
                    {"classes", {{"point", {0, 1}}}}, {"method", "hesse"}, {"seed", 9}, {"verify", "fast"}};
  RunOutcome a = run_job(job_from_json(j));
  RunOutcome b = run_job(job_from_json(j));
  CHECK(a.report.dump() == b.report.dump());
}

TEST_CASE("explicit rho table round trip") {
  // produce a class, serialize rho, feed it back as an explicit table
  CurveContext ctx(7, 3, 1, 3, 5);
  auto reps = ctx.class_representatives();
  DescentClass cls = class_from_point(&ctx.tw, ctx.E, ctx.td, reps.back());
  ordered_json rho_json = class_to_json(cls).at("rho");
  ordered_json j = {{"p", 7},  {"a4", 3},       {"a6", 1},           {"n", 3},
                    {"classes", {{"rho", rho_json}}}, {"method", "hesse"}, {"seed", 5}, {"verify", "fast"}};
  RunOutcome r = run_job(job_from_json(j));
  CHECK(r.ok);
  CHECK(r.report.at("classes").at(0).at("rho_digest") == rho_digest(cls.rho));
}

TEST_CASE("validation: composite p is rejected before any computation") {
  ordered_json j = {{"p", 15},  {"a4", 1},        {"a6", 1},        {"n", 3},
                    {"classes", "all-classes"}, {"method", "hesse"}, {"seed", 1}, {"verify", "fast"}};
  CHECK_THROWS(run_job(job_from_json(j)));
  ordered_json bad = {{"p", 7}, {"a4", 3}, {"a6", 1}, {"classes", "all-classes"}, {"method", "nope"}};
  CHECK_THROWS(job_from_json(bad));
}

TEST_CASE("serialization surfaces") {
  CurveContext ctx(7, 3, 1, 3, 5);
  CHECK(field_to_json(ctx.tw, ctx.td.m).at("k") == ctx.td.m);
  CHECK(torsion_to_json(ctx.td).at("points").size() == 9);
  CHECK(translation_matrices_to_json(ctx.Mbase).size() == 9);
  CHECK(split_iso_to_json(ctx.t1).size() == 9);
  ordered_json aj = algebra_to_json(ctx.A1);
  CHECK(aj.at("dim") == 9);
  DescentClass cls = trivial_class(&ctx.tw, ctx.td);
  ClassMethods cm = make_class_methods(ctx, std::move(cls));
  FlexResult fr = run_flex(ctx, cm);
  CHECK(fmat_to_json(fr.B).size() == 3);
  SegreResult sr = run_segre(ctx, cm);
  CHECK(quadrics_to_json(sr.zquads).size() == 27);
  CHECK(cubic_to_json(sr.cubic).size() == 10);
  Point P = random_point(ctx.E, 1);
  ordered_json pj = point_to_json(P);
  FF x = ff_from_json(&ctx.tw, 1, pj.at("x"));
  CHECK(x == P.x);
  CHECK(point_to_json(Point::infinity()) == ordered_json("infinity"));
}

TEST_CASE("a rational 2-torsion point is a valid class source") {
  // y^2 = x^3 + 1 over F_13 has (4, 0) of order two and #E = 12
  ordered_json j = {{"p", 13}, {"a4", 0},        {"a6", 1},           {"n", 3},
                    {"classes", {{"point", {4, 0}}}}, {"method", "all"}, {"seed", 6}, {"verify", "full"}};
  RunOutcome r = run_job(job_from_json(j));
  CHECK(r.ok);
}
