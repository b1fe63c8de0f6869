// Experiment driver: sweeps gamma x refinement x solver variant and writes
// the iteration counts as CSV or JSON. Talks to the solver library through
// the C API only.

#include <cstdio>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "svmg.h"

namespace {

struct Options {
  int coarse_n = 4;
  std::vector<int> refinements = {1, 2, 3};
  std::vector<double> gammas = {0.0, 1.0, 10.0, 100.0, 1000.0, 1e4, 1e6, 1e8};
  std::vector<std::string> variants = {"robust-robust", "robust-standard", "jacobi-robust",
                                       "jacobi-standard"};
  double rtol = 1e-8;
  int maxit = 200;
  uint64_t seed = 1;
  std::string format = "csv";
  std::string out = "results.csv";
  bool parallel = false;
  std::string dump_mesh;
};

void print_row(void*, const char* variant, int refinement, int dofs, double gamma, int iterations,
               int converged, double seconds) {
  if (converged)
    std::printf("%-16s ref=%d dofs=%-7d gamma=%-10.4g iters=%-4d (%.2fs)\n", variant, refinement,
                dofs, gamma, iterations, seconds);
  else
    std::printf("%-16s ref=%d dofs=%-7d gamma=%-10.4g iters=>%-3d (%.2fs)\n", variant, refinement,
                dofs, gamma, iterations, seconds);
  std::fflush(stdout);
}

int fail(int code, const char* what) {
  std::fprintf(stderr, "svmg: %s: %s\n", what, svmg_last_error());
  return code;
}

}  // namespace

int main(int argc, char** argv) {
  Options opt;
  CLI::App app{"Multigrid iteration study for nearly incompressible elasticity"};
  app.add_option("--coarse-n", opt.coarse_n, "Coarse grid is coarse-n x coarse-n squares")
      ->capture_default_str();
  app.add_option("--refinements", opt.refinements, "Refinement levels to run")
      ->capture_default_str();
  app.add_option("--gammas", opt.gammas, "Penalty parameters to sweep")->capture_default_str();
  app.add_option("--variants", opt.variants,
                 "Solver variants: robust-robust robust-standard jacobi-robust jacobi-standard")
      ->capture_default_str();
  app.add_option("--rtol", opt.rtol, "Relative residual tolerance")->capture_default_str();
  app.add_option("--maxit", opt.maxit, "Iteration cap")->capture_default_str();
  app.add_option("--seed", opt.seed, "Seed for eigenvalue-estimate start vectors")
      ->capture_default_str();
  app.add_option("--format", opt.format, "Output format: csv or json")
      ->check(CLI::IsMember({"csv", "json"}))
      ->capture_default_str();
  app.add_option("--out", opt.out, "Output file path")->capture_default_str();
  auto* parallel = app.add_flag("--parallel", opt.parallel, "Solve rows concurrently");
  app.add_flag("--serial", "Solve rows one at a time (default)")->excludes(parallel);
  app.add_option("--dump-mesh", opt.dump_mesh,
                 "Write hierarchy meshes as plain text files with this prefix");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return e.get_exit_code() == 0 ? 0 : 2;
  }

  svmg_config* cfg = svmg_config_create();
  if (!cfg) return fail(3, "out of memory");
  int rc = SVMG_OK;
  rc = rc ? rc : svmg_config_set_coarse_n(cfg, opt.coarse_n);
  rc = rc ? rc : svmg_config_set_refinements(cfg, opt.refinements.data(),
                                             static_cast<int>(opt.refinements.size()));
  rc = rc ? rc : svmg_config_set_gammas(cfg, opt.gammas.data(),
                                        static_cast<int>(opt.gammas.size()));
  std::vector<const char*> names;
  for (const std::string& v : opt.variants) names.push_back(v.c_str());
  rc = rc ? rc : svmg_config_set_variants(cfg, names.data(), static_cast<int>(names.size()));
  rc = rc ? rc : svmg_config_set_rtol(cfg, opt.rtol);
  rc = rc ? rc : svmg_config_set_maxit(cfg, opt.maxit);
  rc = rc ? rc : svmg_config_set_seed(cfg, opt.seed);
  rc = rc ? rc : svmg_config_set_parallel(cfg, opt.parallel ? 1 : 0);
  rc = rc ? rc : svmg_config_set_row_callback(cfg, print_row, nullptr);
  if (rc != SVMG_OK) {
    svmg_config_destroy(cfg);
    return fail(2, "invalid configuration");
  }

  if (!opt.dump_mesh.empty()) {
    int max_ref = 0;
    for (int r : opt.refinements) max_ref = r > max_ref ? r : max_ref;
    rc = svmg_mesh_dump(opt.coarse_n, max_ref, opt.dump_mesh.c_str());
    if (rc != SVMG_OK) {
      svmg_config_destroy(cfg);
      return fail(rc == SVMG_ERR_INVALID_ARG ? 2 : 3, "mesh dump failed");
    }
  }

  svmg_results* results = nullptr;
  rc = svmg_run(cfg, &results);
  if (rc != SVMG_OK) {
    svmg_config_destroy(cfg);
    return fail(rc == SVMG_ERR_INVALID_ARG ? 2 : 3, "run failed");
  }

  rc = svmg_results_write(results, opt.format.c_str(), opt.out.c_str());
  if (rc != SVMG_OK) {
    svmg_results_destroy(results);
    svmg_config_destroy(cfg);
    return fail(rc == SVMG_ERR_INVALID_ARG ? 2 : 3, "writing results failed");
  }
  std::printf("wrote %d rows to %s\n", svmg_results_count(results), opt.out.c_str());

  svmg_results_destroy(results);
  svmg_config_destroy(cfg);
  return 0;
}
