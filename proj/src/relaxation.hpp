/// @file relaxation.hpp
/// @brief Additive Schwarz relaxation over macro-star patches with exact
/// dense solves, the Jacobi baseline, and Chebyshev acceleration with a
/// power-iteration eigenvalue estimate.

#pragma once

#include <cstdint>

#include "assembly.hpp"
#include "linalg.hpp"
#include "mesh.hpp"
#include "space.hpp"

namespace svmg {

/// Free vector DOFs whose basis support lies inside the closure of one
/// macro star, with the factorized local operator.
struct Patch {
  int vertex = -1;            // owning macro vertex
  std::vector<int> dofs;      // sorted free vector dofs
  DenseFactorization factor;  // of A_gamma[dofs, dofs]
};

/// DOF index sets per macro vertex (no factorization); patches with no
/// free DOFs are dropped.
std::vector<std::vector<int>> macro_star_dof_sets(const FunctionSpace& space,
                                                  const SplitMesh& split, const TriMesh& macro);

/// Extract and factorize the local blocks of A_bc for the given dof sets.
std::vector<Patch> build_patches(const std::vector<std::vector<int>>& dof_sets,
                                 const std::vector<int>& owner_vertices,
                                 const SparseMatrix& A_bc);

/// Convenience wrapper: dof sets + factorization in one call.
std::vector<Patch> build_patches(const FunctionSpace& space, const SplitMesh& split,
                                 const TriMesh& macro, const SparseMatrix& A_bc);

/// z = sum_i E_i A_i^{-1} E_i^T r
void asm_apply(const std::vector<Patch>& patches, const Vector& r, Vector& z);

/// z_i = r_i / diag_i
void jacobi_apply(const Vector& inv_diag, const Vector& r, Vector& z);

/// Symmetric preconditioner application, z = M^{-1} r.
struct Smoother {
  enum class Kind { MacroStarASM, Jacobi };
  Kind kind = Kind::Jacobi;
  std::vector<Patch> patches;
  Vector inv_diag;

  void apply(const Vector& r, Vector& z) const;
};

Smoother make_asm_smoother(std::vector<Patch> patches);
Smoother make_jacobi_smoother(const SparseMatrix& A_bc);

/// Rayleigh-quotient estimate of lambda_max(M^{-1}A) from `iters` power
/// iterations, started from a seeded pseudorandom vector with Dirichlet
/// entries zeroed.
double estimate_lambda_max(const SparseMatrix& A, const Smoother& smoother, int iters,
                           uint64_t seed, const std::vector<uint8_t>* is_dirichlet = nullptr);

/// Chebyshev iteration of degree `steps` on the preconditioned system,
/// in place on x. Fixed point when A x = b.
void chebyshev_smooth(const SparseMatrix& A, const Smoother& smoother, Vector& x, const Vector& b,
                      int steps, double lambda_lo, double lambda_hi);

}  // namespace svmg
