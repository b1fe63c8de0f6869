/// @file krylov.hpp
/// @brief Preconditioned conjugate gradients with Euclidean-residual
/// stopping and a solve report.

#pragma once

#include <functional>
#include <stdexcept>
#include <string>

#include "linalg.hpp"

namespace svmg {

/// <z,r> <= 0 inside PCG. For a correct solver configuration this means a
/// broken smoother; the non-robust study variants also trigger it at high
/// gamma, where the W-cycle genuinely loses definiteness.
struct IndefinitePreconditioner : std::runtime_error {
  int iteration;
  explicit IndefinitePreconditioner(int iter)
      : std::runtime_error("pcg: indefinite preconditioner at iteration " + std::to_string(iter)),
        iteration(iter) {}
};

struct SolveReport {
  int iterations = 0;
  bool converged = false;
  std::vector<double> residual_history;  // Euclidean norms, length iterations+1
  double final_rel_residual = 0.0;
  double seconds = 0.0;
};

using LinearOperator = std::function<void(const Vector&, Vector&)>;

/// Stops when ||r_k|| <= rtol*||r_0|| or after maxit iterations. An
/// indefinite preconditioner (<z,r> <= 0) aborts: that signals a broken
/// smoother, not a convergence failure.
SolveReport pcg(const LinearOperator& apply_A, const LinearOperator& apply_M, const Vector& b,
                Vector& x, double rtol = 1e-8, int maxit = 200);

}  // namespace svmg
