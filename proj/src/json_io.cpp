#include "descent/json_io.hpp"

#include <sstream>

namespace descent {

ordered_json ff_to_json(const FF& x) {
  ordered_json a = ordered_json::array();
  for (u64 v : x.coeffs()) a.push_back(v);
  return a;
}

FF ff_from_json(const Tower* tw, unsigned deg, const ordered_json& j) {
  std::vector<u64> c;
  for (auto& v : j) c.push_back(v.get<u64>());
  c.resize(deg, 0);
  return tw->make(deg, std::move(c));
}

ordered_json field_to_json(const Tower& tw, unsigned k) {
  const auto& f = tw.extend(k);
  ordered_json j;
  j["p"] = tw.p();
  j["k"] = f.k;
  j["defining_poly"] = f.defining;
  return j;
}

ordered_json point_to_json(const Point& P) {
  if (P.inf) return ordered_json("infinity");
  ordered_json j;
  j["field_degree"] = P.x.degree();
  j["x"] = ff_to_json(P.x);
  j["y"] = ff_to_json(P.y);
  return j;
}

ordered_json torsion_to_json(const TorsionData& td) {
  ordered_json j;
  j["n"] = td.n;
  j["m"] = td.m;
  ordered_json pts = ordered_json::array();
  for (auto& P : td.pts) pts.push_back(point_to_json(P));
  j["points"] = pts;
  j["frobenius_permutation"] = td.frob_perm;
  j["basis_indices"] = {td.iS, td.iT};
  j["frobenius_matrix"] = {{td.frob_mat[0][0], td.frob_mat[0][1]}, {td.frob_mat[1][0], td.frob_mat[1][1]}};
  j["zeta"] = ff_to_json(td.zeta);
  return j;
}

ordered_json class_to_json(const DescentClass& D) {
  ordered_json j;
  j["provenance"] = D.provenance;
  ordered_json rho = ordered_json::array();
  for (std::size_t i = 0; i < D.rho.v.size(); i++)
    for (std::size_t k = 0; k < D.rho.v.size(); k++) {
      ordered_json e;
      e["i"] = i;
      e["j"] = k;
      e["value"] = ff_to_json(D.rho.v[i][k]);
      rho.push_back(e);
    }
  j["rho"] = rho;
  ordered_json alpha = ordered_json::array();
  for (auto& v : D.alpha.v) alpha.push_back(ff_to_json(v));
  j["alpha"] = alpha;
  return j;
}

TensorElement rho_from_json(const Tower* tw, const TorsionData& td, const ordered_json& j) {
  TensorElement rho = constant_tensor(tw, td, tw->one(td.m), true);
  for (auto& e : j) {
    unsigned i = e.at("i").get<unsigned>(), k = e.at("j").get<unsigned>();
    if (i >= td.pts.size() || k >= td.pts.size()) throw error("rho_from_json: index out of range");
    rho.v[i][k] = ff_from_json(tw, td.m, e.at("value"));
  }
  if (!rho.invertible()) throw error("rho_from_json: table not invertible");
  if (!is_equivariant(tw, td, rho)) throw error("rho_from_json: table not Galois equivariant");
  if (!is_in_H(tw, td, rho)) throw error("rho_from_json: table not in H");
  if (!(rho.v[td.origin()][td.origin()] == tw->one(td.m)))
    throw error("rho_from_json: normalization rho(O,O) = 1 required");
  return rho;
}

ordered_json algebra_to_json(const AlgebraK& A) {
  ordered_json j;
  j["dim"] = A.dim;
  ordered_json c = ordered_json::array();
  for (unsigned i = 0; i < A.dim; i++)
    for (unsigned k = 0; k < A.dim; k++)
      for (unsigned l = 0; l < A.dim; l++)
        if (A.c[i][k][l]) c.push_back(ordered_json{{"i", i}, {"j", k}, {"k", l}, {"c", A.c[i][k][l]}});
  j["structure_constants"] = c;
  j["unit"] = A.unit;
  return j;
}

ordered_json split_iso_to_json(const SplitIsomorphism& t) {
  ordered_json arr = ordered_json::array();
  for (auto& M : t.tau) {
    ordered_json rows = ordered_json::array();
    for (unsigned a = 0; a < t.n; a++) {
      ordered_json row = ordered_json::array();
      for (unsigned b = 0; b < t.n; b++) row.push_back(M.at(a, b));
      rows.push_back(row);
    }
    arr.push_back(rows);
  }
  return arr;
}

ordered_json translation_matrices_to_json(const TranslationMatrices& M) {
  ordered_json arr = ordered_json::array();
  for (auto& Mt : M.M) {
    ordered_json rows = ordered_json::array();
    for (std::size_t a = 0; a < Mt.rows(); a++)
      for (std::size_t b = 0; b < Mt.cols(); b++) rows.push_back(ff_to_json(Mt.at(a, b)));
    arr.push_back(rows);  // row-major entry list per torsion index
  }
  return arr;
}

ordered_json fmat_to_json(const FMat& B) {
  ordered_json rows = ordered_json::array();
  for (unsigned a = 0; a < B.n; a++) {
    ordered_json row = ordered_json::array();
    for (unsigned b = 0; b < B.n; b++) row.push_back(B.at(a, b));
    rows.push_back(row);
  }
  return rows;
}

ordered_json cubic_to_json(const TernaryCubic& F) {
  ordered_json a = ordered_json::array();
  for (auto& c : F.c) a.push_back(c.const_coeff());
  return a;
}

ordered_json quadrics_to_json(const QuadricSystem& Q) {
  ordered_json arr = ordered_json::array();
  for (std::size_t q = 0; q < Q.quads.size(); q++) {
    ordered_json e;
    e["type"] = Q.type[q];
    ordered_json rows = ordered_json::array();
    for (std::size_t a = 0; a < Q.quads[q].rows(); a++) {
      ordered_json row = ordered_json::array();
      for (std::size_t b = 0; b < Q.quads[q].cols(); b++) row.push_back(Q.quads[q].at(a, b));
      rows.push_back(row);
    }
    e["matrix"] = rows;
    arr.push_back(e);
  }
  return arr;
}

std::string rho_digest(const TensorElement& rho) {
  u64 h = 0xcbf29ce484222325ULL;
  auto mix = [&](u64 v) {
    h ^= v;
    h *= 0x100000001b3ULL;
  };
  for (auto& row : rho.v)
    for (auto& x : row) {
      mix(x.degree());
      for (u64 c : x.coeffs()) mix(c + 1);
    }
  std::ostringstream os;
  os << std::hex << h;
  return os.str();
}

JobSpec job_from_json(const ordered_json& j) {
  JobSpec job;
  job.p = j.at("p").get<u64>();
  job.a4 = j.at("a4").get<u64>();
  job.a6 = j.at("a6").get<u64>();
  job.n = j.value("n", 3u);
  job.method = j.value("method", std::string("all"));
  job.verify = j.value("verify", std::string("full"));
  job.seed = j.value("seed", (u64)0);
  const auto& src = j.at("classes");
  if (src.is_string() && src.get<std::string>() == "all-classes")
    job.all_classes = true;
  else if (src.is_object() && src.contains("point"))
    job.point = {src.at("point").at(0).get<u64>(), src.at("point").at(1).get<u64>()};
  else if (src.is_object() && src.contains("rho"))
    job.explicit_rho = src.at("rho");
  else
    throw error("job: classes must be \"all-classes\", {point: [x,y]} or {rho: [...]}");
  if (job.method != "hesse" && job.method != "flex" && job.method != "segre" && job.method != "all")
    throw error("job: unknown method");
  if (job.verify != "fast" && job.verify != "full") throw error("job: unknown verification level");
  return job;
}

namespace {

ordered_json checks_to_json(const HesseChecks& c) {
  ordered_json j;
  j["smooth"] = c.smooth;
  j["stabilized"] = c.stabilized;
  j["counts_match"] = c.counts_match;
  j["rational_point"] = c.rational_point;
  j["det_class"] = c.det_class;
  return j;
}

}  // namespace

RunOutcome run_job(const JobSpec& job) {
  RunOutcome out;
  bool all_ok = true;
  CurveContext ctx(job.p, job.a4, job.a6, job.n, job.seed);
  ordered_json rep;
  rep["job"] = {{"p", job.p},       {"a4", job.a4},         {"a6", job.a6},   {"n", job.n},
                {"method", job.method}, {"verify", job.verify}, {"seed", job.seed}};
  {
    unsigned zord = 1;
    FF z = ctx.td.zeta;
    FF cur = z;
    const Tower* tw = &ctx.tw;
    while (!(cur == tw->one(cur.degree())) && zord < 2 * ctx.n) {
      cur = cur * z;
      zord++;
    }
    rep["torsion"] = {{"m", ctx.td.m},
                      {"frobenius_matrix",
                       {{ctx.td.frob_mat[0][0], ctx.td.frob_mat[0][1]}, {ctx.td.frob_mat[1][0], ctx.td.frob_mat[1][1]}}},
                      {"zeta_order", zord}};
  }

  std::vector<std::pair<std::string, DescentClass>> classes;
  if (job.all_classes) {
    auto reps = ctx.class_representatives();
    for (auto& P : reps) {
      std::string src = P.inf ? "point(O)" : "point(" + std::to_string(P.x.const_coeff()) + "," +
                                                  std::to_string(P.y.const_coeff()) + ")";
      classes.push_back({src, P.inf ? trivial_class(&ctx.tw, ctx.td)
                                    : class_from_point(&ctx.tw, ctx.E, ctx.td, P)});
    }
  } else if (job.point) {
    Point P = Point::affine(ctx.tw.from_int(job.point->first), ctx.tw.from_int(job.point->second));
    if (!on_curve(ctx.E, P)) throw error("job: point not on the curve");
    classes.push_back({"point(" + std::to_string(job.point->first) + "," + std::to_string(job.point->second) + ")",
                       class_from_point(&ctx.tw, ctx.E, ctx.td, P)});
  } else {
    TensorElement rho = rho_from_json(&ctx.tw, ctx.td, *job.explicit_rho);
    DescentClass D;
    D.rho = rho;
    D.alpha = kappa(&ctx.tw, ctx.td, rho);
    D.gamma = solve_partial(&ctx.tw, ctx.td, rho);
    D.gamma_field = D.gamma.v[0].degree();
    D.provenance = "explicit";
    classes.push_back({"explicit", std::move(D)});
  }

  ordered_json class_reports = ordered_json::array();
  for (auto& [src, cls] : classes) {
    ordered_json cj;
    cj["source"] = src;
    cj["rho_digest"] = rho_digest(cls.rho);
    ordered_json methods;
    ClassMethods cm = make_class_methods(ctx, cls);
    std::optional<HesseResult> hr;
    std::optional<FlexResult> fres;
    std::optional<SegreResult> sres;
    if (ctx.n % 2 == 1 && (job.method == "hesse" || job.method == "all" || job.method == "flex" ||
                           job.method == "segre")) {
      // the hesse matrices also verify the other two methods
      hr = run_hesse(ctx, cm);
    }
    if (ctx.n % 2 == 1 && (job.method == "hesse" || job.method == "all")) {
      ordered_json hj;
      ordered_json curves = ordered_json::array();
      for (auto& C : hr->curves) curves.push_back(cubic_to_json(C));
      hj["cubics"] = curves;
      hj["nu"] = hr->nu;
      HesseChecks hc = check_hesse(ctx, cm, *hr);
      hj["checks"] = checks_to_json(hc);
      if (!hc.all()) all_ok = false;
      methods["hesse"] = hj;
    }
    if (ctx.n % 2 == 1 && (job.method == "flex" || job.method == "all")) {
      fres = run_flex(ctx, cm);
      const FlexResult& fr = *fres;
      ordered_json fj;
      fj["cubic"] = cubic_to_json(fr.cubic);
      ordered_json comps = ordered_json::array();
      for (auto& c : fr.FA.dec.comps) comps.push_back(c.deg);
      fj["flex_algebra_component_degrees"] = comps;
      bool stab = true;
      for (unsigned t = 0; t < ctx.td.pts.size(); t++)
        if (!stabilized_by(fr.cubic, hr->M.M[t])) stab = false;
      bool inv_ok = jacobian_matches(fr.cubic, ctx.E);
      bool counts_ok = true;
      if (job.verify == "full")
        for (unsigned k = 1; k <= 2; k++)
          if (count_plane_points(fr.cubic, k) != count_points(ctx.E, k)) counts_ok = false;
      fj["checks"] = {{"stabilized", stab}, {"jacobian", inv_ok}, {"counts_match", counts_ok}};
      if (!stab || !inv_ok || !counts_ok) all_ok = false;
      methods["flex"] = fj;
    }
    if (job.method == "segre" || job.method == "all") {
      sres = run_segre(ctx, cm);
      const SegreResult& sr = *sres;
      ordered_json sj;
      sj["quadrics"] = quadrics_to_json(sr.zquads);
      bool ok = true;
      if (ctx.n % 2 == 1) {
        sj["cubic"] = cubic_to_json(sr.cubic);
        bool stab = true;
        for (unsigned t = 0; t < ctx.td.pts.size(); t++)
          if (!stabilized_by(sr.cubic, hr->M.M[t])) stab = false;
        bool inv_ok = jacobian_matches(sr.cubic, ctx.E);
        bool counts_ok = true;
        if (job.verify == "full")
          for (unsigned k = 1; k <= 2; k++)
            if (count_plane_points(sr.cubic, k) != count_points(ctx.E, k)) counts_ok = false;
        sj["checks"] = {{"stabilized", stab}, {"jacobian", inv_ok}, {"counts_match", counts_ok}};
        ok = stab && inv_ok && counts_ok;
      } else {
        sj["checks"] = {{"type1_count", sr.zquads.count(1) == ctx.n * ctx.n / 2}};
        ok = sr.zquads.count(1) == ctx.n * ctx.n / 2;
      }
      if (!ok) all_ok = false;
      methods["segre"] = sj;
    }
    // cross-method agreement when everything ran
    if (job.method == "all" && ctx.n % 2 == 1) {
      bool agree = same_invariant_class(fres->cubic, sres->cubic);
      bool in_list = false;
      for (auto& C : hr->curves)
        if (C.proportional_to(fres->cubic)) in_list = true;
      if (!in_list) agree = false;
      cj["cross_method_agreement"] = agree;
      if (!agree) all_ok = false;
    }
    cj["methods"] = methods;
    class_reports.push_back(cj);
  }
  rep["classes"] = class_reports;
  rep["status"] = all_ok ? "PASS" : "FAIL";
  out.report = rep;
  out.ok = all_ok;
  return out;
}

}  // namespace descent
