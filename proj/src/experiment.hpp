/// @file experiment.hpp
/// @brief Batch driver for the gamma x refinement x variant iteration
/// study, with CSV/JSON output.

#pragma once

#include <functional>
#include <iosfwd>
#include <string>

#include "multigrid.hpp"

namespace svmg {

struct Variant {
  RelaxKind relax;
  TransferKind transfer;
};

/// Names: robust-robust, robust-standard, jacobi-robust, jacobi-standard.
const char* variant_name(const Variant& v);
Variant parse_variant(const std::string& name);

struct ExperimentConfig {
  int coarse_n = 4;
  std::vector<int> refinements = {1, 2, 3};
  std::vector<double> gammas = {0.0, 1.0, 10.0, 100.0, 1000.0, 1e4, 1e6, 1e8};
  std::vector<Variant> variants = {{RelaxKind::MacroStarASM, TransferKind::Robust},
                                   {RelaxKind::MacroStarASM, TransferKind::Standard},
                                   {RelaxKind::Jacobi, TransferKind::Robust},
                                   {RelaxKind::Jacobi, TransferKind::Standard}};
  double rtol = 1e-8;
  int maxit = 200;
  uint64_t seed = 1;
  bool parallel = false;

  void validate() const;  // throws std::invalid_argument
};

struct ResultRow {
  std::string variant;
  int refinement = 0;
  int dofs = 0;
  double gamma = 0.0;
  int iterations = 0;  // = maxit when not converged
  bool converged = false;
  double seconds = 0.0;

  bool operator==(const ResultRow&) const = default;
};

/// Solve one cell of the study on a prebuilt setup. seconds covers the
/// gamma-specific solver construction plus the PCG solve.
ResultRow solve_row(const ProblemSetup& setup, const Variant& variant, double gamma, double rtol,
                    int maxit, uint64_t seed);

using RowCallback = std::function<void(const ResultRow&)>;

/// Full Cartesian grid in (variant, refinement, gamma) order. A and C are
/// assembled once per refinement and shared by every variant and gamma.
/// In parallel mode rows are solved concurrently but reported in the same
/// deterministic order.
std::vector<ResultRow> run_experiment(const ExperimentConfig& config,
                                      const RowCallback& on_row = nullptr);

/// Shortest decimal form of x that parses back to exactly x.
std::string format_double(double x);

/// maxit is needed to render non-converged rows as ">maxit".
void emit_csv(const std::vector<ResultRow>& rows, int maxit, std::ostream& os);
void emit_json(const std::vector<ResultRow>& rows, int maxit, std::ostream& os);
void emit_rows(const std::vector<ResultRow>& rows, int maxit, const std::string& format,
               const std::string& path);

}  // namespace svmg
