#include <fstream>
#include <iostream>

#include "CLI11.hpp"

#include "descent/json_io.hpp"

int main(int argc, char** argv) {
  CLI::App app{"explicit 3-descent over prime fields: curves, classes and genus-one models"};
  std::string job_path, out_path;
  long long seed = -1;
  std::string verify;
  app.add_option("--job", job_path, "job description (JSON)")->required();
  app.add_option("--out", out_path, "write the report here (default: stdout)");
  app.add_option("--seed", seed, "override the job seed");
  app.add_option("--verify", verify, "verification level: fast or full")
      ->check(CLI::IsMember({"fast", "full", ""}));
  CLI11_PARSE(app, argc, argv);

  try {
    std::ifstream in(job_path);
    if (!in) throw descent::error("cannot open job file: " + job_path);
    descent::ordered_json j = descent::ordered_json::parse(in);
    descent::JobSpec job = descent::job_from_json(j);
    if (seed >= 0) job.seed = (descent::u64)seed;
    if (!verify.empty()) job.verify = verify;
    descent::RunOutcome res = descent::run_job(job);
    std::string text = res.report.dump(2) + "\n";
    if (out_path.empty()) {
      std::cout << text;
    } else {
      std::ofstream out(out_path);
      out << text;
    }
    std::cerr << (res.ok ? "PASS" : "FAIL") << "\n";
    return res.ok ? 0 : 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}
