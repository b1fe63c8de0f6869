/*
 * svmg.h - C interface to the Scott-Vogelius multigrid solver library.
 *
 * All functions return an svmg error code unless stated otherwise. Objects
 * are opaque handles owned by the caller and released with the matching
 * _destroy function. After a failure, svmg_last_error() returns a
 * human-readable message for the calling thread.
 */

#ifndef SVMG_H
#define SVMG_H

#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

enum {
  SVMG_OK = 0,
  SVMG_ERR_INVALID_ARG = 1,
  SVMG_ERR_NUMERICAL = 2,
  SVMG_ERR_IO = 3
};

const char* svmg_strerror(int code);
const char* svmg_last_error(void);

/* ---- experiment configuration ---- */

typedef struct svmg_config svmg_config;

/* Defaults: coarse_n=4, refinements {1,2,3}, gammas {0,1,10,1e2,1e3,1e4,
 * 1e6,1e8}, all four variants, rtol=1e-8, maxit=200, seed=1, serial. */
svmg_config* svmg_config_create(void);
void svmg_config_destroy(svmg_config* cfg);

int svmg_config_set_coarse_n(svmg_config* cfg, int coarse_n);
int svmg_config_set_refinements(svmg_config* cfg, const int* refinements, int count);
int svmg_config_set_gammas(svmg_config* cfg, const double* gammas, int count);
/* Variant names: "robust-robust", "robust-standard", "jacobi-robust",
 * "jacobi-standard". */
int svmg_config_set_variants(svmg_config* cfg, const char* const* names, int count);
int svmg_config_set_rtol(svmg_config* cfg, double rtol);
int svmg_config_set_maxit(svmg_config* cfg, int maxit);
int svmg_config_set_seed(svmg_config* cfg, uint64_t seed);
int svmg_config_set_parallel(svmg_config* cfg, int enabled);

/* Invoked after each finished row. In parallel mode calls are serialized
 * but arrive in completion order. */
typedef void (*svmg_row_callback)(void* user, const char* variant, int refinement, int dofs,
                                  double gamma, int iterations, int converged, double seconds);
int svmg_config_set_row_callback(svmg_config* cfg, svmg_row_callback cb, void* user);

/* ---- running and results ---- */

typedef struct svmg_results svmg_results;

/* Runs the full (variant x refinement x gamma) grid. Rows that hit the
 * iteration cap are results, not errors. */
int svmg_run(const svmg_config* cfg, svmg_results** out);
void svmg_results_destroy(svmg_results* res);

int svmg_results_count(const svmg_results* res);
int svmg_results_maxit(const svmg_results* res);
/* Row accessors; index must be in [0, count). The variant string stays
 * valid while the results object lives. */
const char* svmg_result_variant(const svmg_results* res, int i);
int svmg_result_refinement(const svmg_results* res, int i);
int svmg_result_dofs(const svmg_results* res, int i);
double svmg_result_gamma(const svmg_results* res, int i);
int svmg_result_iterations(const svmg_results* res, int i);
int svmg_result_converged(const svmg_results* res, int i);
double svmg_result_seconds(const svmg_results* res, int i);

/* format is "csv" or "json". Byte-deterministic for identical rows. */
int svmg_results_write(const svmg_results* res, const char* format, const char* path);

/* ---- one-off utilities ---- */

/* Solve a single configuration; any output pointer may be NULL. */
int svmg_solve(int coarse_n, int refinement, double gamma, const char* variant, double rtol,
               int maxit, uint64_t seed, int* iterations_out, int* converged_out, int* dofs_out);

/* Writes <prefix>.L<level>.macro.txt and .split.txt for every level of the
 * hierarchy with the given number of refinements. */
int svmg_mesh_dump(int coarse_n, int refinements, const char* prefix);

#ifdef __cplusplus
} /* extern "C" */
#endif

#endif /* SVMG_H */
