/// @file assembly.hpp
/// @brief Assembly of A (symmetric-gradient stiffness) and C (div-div),
/// the traction load vector, and symmetric Dirichlet elimination.

#pragma once

#include "linalg.hpp"
#include "space.hpp"

namespace svmg {

/// A and C share one sparsity pattern, so A + gamma*C is an entrywise
/// affine combination and the gamma sweep reuses both matrices.
struct OperatorSet {
  SparseMatrix A;  // (eps(u), eps(v)), no boundary conditions
  SparseMatrix C;  // (div u, div v), no boundary conditions
  const FunctionSpace* space = nullptr;

  /// A + gamma*C; with_bc applies symmetric elimination (Dirichlet rows and
  /// columns zeroed, unit diagonal).
  SparseMatrix combined(double gamma, bool with_bc = true) const;

  /// C with Dirichlet rows and columns zeroed (no unit diagonal).
  SparseMatrix div_div_bc() const;
};

OperatorSet assemble_operators(const FunctionSpace& space);

/// Load vector of a constant traction (0, -magnitude) on the x=1 boundary.
Vector assemble_traction(const FunctionSpace& space, double magnitude);

/// Zero the Dirichlet entries of a right-hand side.
void apply_dirichlet_rhs(const FunctionSpace& space, Vector& b);

}  // namespace svmg
