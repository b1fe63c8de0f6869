#include "svmg.h"

#include <fstream>
#include <memory>
#include <string>

#include "experiment.hpp"

namespace {

thread_local std::string g_last_error;

int fail(int code, const std::string& message) {
  g_last_error = message;
  return code;
}

/// Exceptions never cross the C boundary.
template <typename Fn>
int guarded(Fn&& fn) {
  try {
    return fn();
  } catch (const std::invalid_argument& e) {
    return fail(SVMG_ERR_INVALID_ARG, e.what());
  } catch (const std::out_of_range& e) {
    return fail(SVMG_ERR_INVALID_ARG, e.what());
  } catch (const std::exception& e) {
    return fail(SVMG_ERR_NUMERICAL, e.what());
  }
}

}  // namespace

struct svmg_config {
  svmg::ExperimentConfig cfg;
  svmg_row_callback callback = nullptr;
  void* callback_user = nullptr;
};

struct svmg_results {
  std::vector<svmg::ResultRow> rows;
  int maxit = 200;
};

namespace {
const svmg::ResultRow* row_at(const svmg_results* res, int i) {
  if (!res || i < 0 || i >= static_cast<int>(res->rows.size())) return nullptr;
  return &res->rows[i];
}
}  // namespace

extern "C" {

const char* svmg_strerror(int code) {
  switch (code) {
    case SVMG_OK: return "ok";
    case SVMG_ERR_INVALID_ARG: return "invalid argument";
    case SVMG_ERR_NUMERICAL: return "numerical failure";
    case SVMG_ERR_IO: return "i/o failure";
    default: return "unknown error";
  }
}

const char* svmg_last_error(void) { return g_last_error.c_str(); }

svmg_config* svmg_config_create(void) { return new (std::nothrow) svmg_config; }

void svmg_config_destroy(svmg_config* cfg) { delete cfg; }

int svmg_config_set_coarse_n(svmg_config* cfg, int coarse_n) {
  if (!cfg || coarse_n < 1) return fail(SVMG_ERR_INVALID_ARG, "coarse_n must be >= 1");
  cfg->cfg.coarse_n = coarse_n;
  return SVMG_OK;
}

int svmg_config_set_refinements(svmg_config* cfg, const int* refinements, int count) {
  if (!cfg || !refinements || count < 1)
    return fail(SVMG_ERR_INVALID_ARG, "refinement list must be non-empty");
  for (int i = 0; i < count; ++i)
    if (refinements[i] < 1) return fail(SVMG_ERR_INVALID_ARG, "refinements must be >= 1");
  cfg->cfg.refinements.assign(refinements, refinements + count);
  return SVMG_OK;
}

int svmg_config_set_gammas(svmg_config* cfg, const double* gammas, int count) {
  if (!cfg || !gammas || count < 1)
    return fail(SVMG_ERR_INVALID_ARG, "gamma list must be non-empty");
  for (int i = 0; i < count; ++i)
    if (!(gammas[i] >= 0.0)) return fail(SVMG_ERR_INVALID_ARG, "gammas must be >= 0");
  cfg->cfg.gammas.assign(gammas, gammas + count);
  return SVMG_OK;
}

int svmg_config_set_variants(svmg_config* cfg, const char* const* names, int count) {
  if (!cfg || !names || count < 1)
    return fail(SVMG_ERR_INVALID_ARG, "variant list must be non-empty");
  return guarded([&]() -> int {
    std::vector<svmg::Variant> variants;
    for (int i = 0; i < count; ++i) variants.push_back(svmg::parse_variant(names[i]));
    cfg->cfg.variants = std::move(variants);
    return SVMG_OK;
  });
}

int svmg_config_set_rtol(svmg_config* cfg, double rtol) {
  if (!cfg || !(rtol > 0.0)) return fail(SVMG_ERR_INVALID_ARG, "rtol must be > 0");
  cfg->cfg.rtol = rtol;
  return SVMG_OK;
}

int svmg_config_set_maxit(svmg_config* cfg, int maxit) {
  if (!cfg || maxit < 1) return fail(SVMG_ERR_INVALID_ARG, "maxit must be >= 1");
  cfg->cfg.maxit = maxit;
  return SVMG_OK;
}

int svmg_config_set_seed(svmg_config* cfg, uint64_t seed) {
  if (!cfg) return fail(SVMG_ERR_INVALID_ARG, "null config");
  cfg->cfg.seed = seed;
  return SVMG_OK;
}

int svmg_config_set_parallel(svmg_config* cfg, int enabled) {
  if (!cfg) return fail(SVMG_ERR_INVALID_ARG, "null config");
  cfg->cfg.parallel = enabled != 0;
  return SVMG_OK;
}

int svmg_config_set_row_callback(svmg_config* cfg, svmg_row_callback cb, void* user) {
  if (!cfg) return fail(SVMG_ERR_INVALID_ARG, "null config");
  cfg->callback = cb;
  cfg->callback_user = user;
  return SVMG_OK;
}

int svmg_run(const svmg_config* cfg, svmg_results** out) {
  if (!cfg || !out) return fail(SVMG_ERR_INVALID_ARG, "null argument");
  *out = nullptr;
  return guarded([&]() -> int {
    cfg->cfg.validate();
    svmg::RowCallback on_row;
    if (cfg->callback) {
      on_row = [cfg](const svmg::ResultRow& row) {
        cfg->callback(cfg->callback_user, row.variant.c_str(), row.refinement, row.dofs, row.gamma,
                      row.iterations, row.converged ? 1 : 0, row.seconds);
      };
    }
    auto res = std::make_unique<svmg_results>();
    res->maxit = cfg->cfg.maxit;
    res->rows = svmg::run_experiment(cfg->cfg, on_row);
    *out = res.release();
    return SVMG_OK;
  });
}

void svmg_results_destroy(svmg_results* res) { delete res; }

int svmg_results_count(const svmg_results* res) {
  return res ? static_cast<int>(res->rows.size()) : 0;
}

int svmg_results_maxit(const svmg_results* res) { return res ? res->maxit : 0; }

const char* svmg_result_variant(const svmg_results* res, int i) {
  const auto* row = row_at(res, i);
  return row ? row->variant.c_str() : nullptr;
}

int svmg_result_refinement(const svmg_results* res, int i) {
  const auto* row = row_at(res, i);
  return row ? row->refinement : -1;
}

int svmg_result_dofs(const svmg_results* res, int i) {
  const auto* row = row_at(res, i);
  return row ? row->dofs : -1;
}

double svmg_result_gamma(const svmg_results* res, int i) {
  const auto* row = row_at(res, i);
  return row ? row->gamma : -1.0;
}

int svmg_result_iterations(const svmg_results* res, int i) {
  const auto* row = row_at(res, i);
  return row ? row->iterations : -1;
}

int svmg_result_converged(const svmg_results* res, int i) {
  const auto* row = row_at(res, i);
  return row ? (row->converged ? 1 : 0) : -1;
}

double svmg_result_seconds(const svmg_results* res, int i) {
  const auto* row = row_at(res, i);
  return row ? row->seconds : -1.0;
}

int svmg_results_write(const svmg_results* res, const char* format, const char* path) {
  if (!res || !format || !path) return fail(SVMG_ERR_INVALID_ARG, "null argument");
  return guarded([&]() -> int {
    try {
      svmg::emit_rows(res->rows, res->maxit, format, path);
    } catch (const std::runtime_error& e) {
      return fail(SVMG_ERR_IO, e.what());
    }
    return SVMG_OK;
  });
}

int svmg_solve(int coarse_n, int refinement, double gamma, const char* variant, double rtol,
               int maxit, uint64_t seed, int* iterations_out, int* converged_out, int* dofs_out) {
  if (!variant) return fail(SVMG_ERR_INVALID_ARG, "null variant");
  if (coarse_n < 1 || refinement < 1 || !(gamma >= 0.0) || !(rtol > 0.0) || maxit < 1)
    return fail(SVMG_ERR_INVALID_ARG, "invalid solve parameters");
  return guarded([&]() -> int {
    const svmg::Variant v = svmg::parse_variant(variant);
    auto setup = svmg::build_problem(coarse_n, refinement);
    const svmg::ResultRow row = svmg::solve_row(*setup, v, gamma, rtol, maxit, seed);
    if (iterations_out) *iterations_out = row.iterations;
    if (converged_out) *converged_out = row.converged ? 1 : 0;
    if (dofs_out) *dofs_out = row.dofs;
    return SVMG_OK;
  });
}

int svmg_mesh_dump(int coarse_n, int refinements, const char* prefix) {
  if (!prefix || coarse_n < 1 || refinements < 0)
    return fail(SVMG_ERR_INVALID_ARG, "invalid mesh dump parameters");
  return guarded([&]() -> int {
    const svmg::MeshHierarchy hier = svmg::build_hierarchy(coarse_n, refinements + 1);
    for (int l = 0; l < hier.levels(); ++l) {
      for (const bool split : {false, true}) {
        const std::string path = std::string(prefix) + ".L" + std::to_string(l) +
                                 (split ? ".split.txt" : ".macro.txt");
        std::ofstream os(path);
        if (!os) return fail(SVMG_ERR_IO, "cannot write '" + path + "'");
        svmg::dump_mesh(split ? hier.split[l].mesh : hier.macro[l], os);
        if (!os) return fail(SVMG_ERR_IO, "write failed for '" + path + "'");
      }
    }
    return SVMG_OK;
  });
}

}  // extern "C"
