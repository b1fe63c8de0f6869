/// @file transfer.hpp
/// @brief Prolongation between consecutive (non-nested) levels: nodal
/// interpolation, and its divergence-correcting variant built from
/// decoupled local solves on coarse macro cells.

#pragma once

#include "assembly.hpp"
#include "linalg.hpp"
#include "mesh.hpp"
#include "space.hpp"

namespace svmg {

/// Interpolation matrix from the level fine_level-1 space to the
/// fine_level space. Each fine node is evaluated in the coarse split cell
/// that contains it geometrically. With apply_bc, fine Dirichlet rows and
/// coarse Dirichlet columns are dropped.
SparseMatrix build_standard_prolongation(const FunctionSpace& coarse, const FunctionSpace& fine,
                                         const MeshHierarchy& hier, int fine_level,
                                         bool apply_bc = true);

/// Free fine DOFs whose basis support lies strictly inside coarse macro
/// cell K (sorted).
std::vector<int> interior_dofs_of_macro_cell(const FunctionSpace& fine, const MeshHierarchy& hier,
                                             int fine_level, int coarse_macro_cell);

/// All interior dof sets of a level pair, indexed by coarse macro cell.
std::vector<std::vector<int>> interior_dof_sets(const FunctionSpace& fine,
                                                const MeshHierarchy& hier, int fine_level);

/// P_tilde = P - sum_K E_K (A+gamma C)[S_K,S_K]^{-1} gamma C[S_K,:] P.
/// At gamma=0 this is P itself. fine_Agamma_bc is A+gamma*C and fine_C_bc
/// is the div-div matrix, both with boundary conditions applied on the
/// fine level.
SparseMatrix build_robust_prolongation(const SparseMatrix& P,
                                       const std::vector<std::vector<int>>& interior_sets,
                                       const SparseMatrix& fine_Agamma_bc,
                                       const SparseMatrix& fine_C_bc, double gamma);

}  // namespace svmg
