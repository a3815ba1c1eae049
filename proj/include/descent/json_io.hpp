#pragma once

#include <string>

#include "json.hpp"

#include "descent/flex.hpp"
#include "descent/pipeline.hpp"
#include "descent/segre.hpp"

namespace descent {

using ordered_json = nlohmann::ordered_json;

ordered_json ff_to_json(const FF& x);
FF ff_from_json(const Tower* tw, unsigned deg, const ordered_json& j);
ordered_json field_to_json(const Tower& tw, unsigned k);
ordered_json point_to_json(const Point& P);
ordered_json torsion_to_json(const TorsionData& td);
ordered_json class_to_json(const DescentClass& D);
// dense table of L-elements indexed by pair, plus provenance
TensorElement rho_from_json(const Tower* tw, const TorsionData& td, const ordered_json& j);
ordered_json algebra_to_json(const AlgebraK& A);
ordered_json split_iso_to_json(const SplitIsomorphism& t);
ordered_json translation_matrices_to_json(const TranslationMatrices& M);
ordered_json fmat_to_json(const FMat& B);  // entries over the r-basis
ordered_json cubic_to_json(const TernaryCubic& F);
ordered_json quadrics_to_json(const QuadricSystem& Q);
std::string rho_digest(const TensorElement& rho);

// batch driver
struct JobSpec {
  u64 p = 0;
  u64 a4 = 0, a6 = 0;
  unsigned n = 3;
  std::string method = "all";       // hesse | flex | segre | all
  std::string verify = "full";      // fast | full
  u64 seed = 0;
  // class source: exactly one of
  bool all_classes = false;
  std::optional<std::pair<u64, u64>> point;  // affine coordinates over F_p
  std::optional<ordered_json> explicit_rho;
};
JobSpec job_from_json(const ordered_json& j);

struct RunOutcome {
  ordered_json report;
  bool ok = false;
};
RunOutcome run_job(const JobSpec& job);

}  // namespace descent
