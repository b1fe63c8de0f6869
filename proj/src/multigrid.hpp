/// @file multigrid.hpp
/// @brief W-cycle hierarchy: per-level rediscretized operators, Chebyshev
/// smoothing over ASM or Jacobi relaxation, (robust) transfer, and a
/// coarse direct solve. Applied as a symmetric preconditioner.

#pragma once

#include <cstdint>
#include <memory>
#include <optional>

#include "assembly.hpp"
#include "relaxation.hpp"
#include "transfer.hpp"

namespace svmg {

enum class RelaxKind { MacroStarASM, Jacobi };
enum class TransferKind { Standard, Robust };

struct MGOptions {
  int pre_smooth = 2;
  int post_smooth = 2;
  int cycle_mu = 2;  // 2 = W-cycle, 1 = V-cycle
  int eig_iters = 10;
  double interval_lo = 0.1;  // Chebyshev interval [lo*est, hi*est]
  double interval_hi = 1.1;
  std::optional<std::pair<double, double>> fixed_interval;  // overrides the estimate
  uint64_t seed = 1;
};

/// Everything that depends only on (coarse_n, refinement): meshes, spaces,
/// operators without gamma, the standard prolongations, patch and
/// interior-dof index sets, and the traction load. Shared across the
/// gamma sweep and across solver variants.
struct ProblemSetup {
  int coarse_n = 0;
  int refinement = 0;  // levels() = refinement + 1
  MeshHierarchy meshes;
  std::vector<FunctionSpace> spaces;                    // per level
  std::vector<OperatorSet> ops;                         // per level
  std::vector<SparseMatrix> standard_P;                 // per level >= 1, bc applied
  std::vector<std::vector<std::vector<int>>> patch_sets;     // per level >= 1
  std::vector<std::vector<std::vector<int>>> interior_sets;  // per level >= 1
  Vector traction;  // finest-level load, Dirichlet entries zeroed

  int levels() const { return refinement + 1; }
  const FunctionSpace& fine_space() const { return spaces.back(); }

  ProblemSetup() = default;
  ProblemSetup(const ProblemSetup&) = delete;
  ProblemSetup& operator=(const ProblemSetup&) = delete;
};

std::unique_ptr<ProblemSetup> build_problem(int coarse_n, int refinement);

/// Gamma- and variant-specific solver state over a ProblemSetup.
class MGSolver {
 public:
  MGSolver(const ProblemSetup& setup, RelaxKind relax, TransferKind transfer, double gamma,
           const MGOptions& opts);

  /// z = W-cycle preconditioner applied to r (zero initial guess).
  void precondition(const Vector& r, Vector& z) const;

  /// y = A_fine * x (finest-level operator, boundary conditions applied).
  void apply_fine(const Vector& x, Vector& y) const;

  const SparseMatrix& fine_matrix() const { return a_bc_.back(); }
  const SparseMatrix& prolongation(int fine_level) const { return p_[fine_level]; }
  double chebyshev_lo(int level) const { return cheb_[level].first; }
  double chebyshev_hi(int level) const { return cheb_[level].second; }

 private:
  void cycle(int level, const Vector& b, Vector& x) const;

  const ProblemSetup& setup_;
  MGOptions opts_;
  std::vector<SparseMatrix> a_bc_;              // per level
  std::vector<Smoother> smoothers_;             // per level, unused at level 0
  std::vector<std::pair<double, double>> cheb_; // per level
  std::vector<SparseMatrix> p_;                 // per level >= 1
  DenseFactorization coarse_factor_;
};

}  // namespace svmg
