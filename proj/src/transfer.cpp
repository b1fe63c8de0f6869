#include "transfer.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace svmg {

namespace {

constexpr double kBarycentricTol = 1e-10;

std::array<double, 3> barycentric(const TriMesh& m, int cell, double x, double y) {
  const auto& a = m.vertices[m.cells[cell][0]];
  const auto& b = m.vertices[m.cells[cell][1]];
  const auto& c = m.vertices[m.cells[cell][2]];
  const double det = (b[0] - a[0]) * (c[1] - a[1]) - (c[0] - a[0]) * (b[1] - a[1]);
  const double l1 = ((x - a[0]) * (c[1] - a[1]) - (c[0] - a[0]) * (y - a[1])) / det;
  const double l2 = ((b[0] - a[0]) * (y - a[1]) - (x - a[0]) * (b[1] - a[1])) / det;
  return {1.0 - l1 - l2, l1, l2};
}

}  // namespace

SparseMatrix build_standard_prolongation(const FunctionSpace& coarse, const FunctionSpace& fine,
                                         const MeshHierarchy& hier, int fine_level,
                                         bool apply_bc) {
  const SplitMesh& fine_split = *fine.mesh;
  const SplitMesh& coarse_split = *coarse.mesh;
  const std::vector<int>& parent = hier.parent_cell[fine_level];

  std::vector<Triplet> triplets;
  triplets.reserve(static_cast<size_t>(fine.scalar_dofs) * 12);
  for (int node = 0; node < fine.scalar_dofs; ++node) {
    const double x = fine.node_xy[node][0];
    const double y = fine.node_xy[node][1];
    const int fine_macro = fine_split.macro_cell_of_cell[fine.node_rep_cell[node]];
    const int coarse_macro = parent[fine_macro];

    // candidates are the three split children of the parent macro cell;
    // the one with the largest minimum barycentric coordinate wins
    int best_cell = -1;
    double best_min = -1e30;
    std::array<double, 3> best_l{};
    for (int k = 0; k < 3; ++k) {
      const int cand = 3 * coarse_macro + k;
      const auto l = barycentric(coarse_split.mesh, cand, x, y);
      const double lmin = std::min({l[0], l[1], l[2]});
      if (lmin > best_min) {
        best_min = lmin;
        best_cell = cand;
        best_l = l;
      }
    }
    if (best_min < -kBarycentricTol)
      throw std::runtime_error("prolongation: point location failed for node at (" +
                               std::to_string(x) + ", " + std::to_string(y) + ")");

    const auto phi = p2_values(best_l[1], best_l[2]);
    for (int k = 0; k < 6; ++k) {
      if (phi[k] == 0.0) continue;
      const int cnode = coarse.cell_nodes[best_cell][k];
      for (int comp = 0; comp < 2; ++comp) {
        const int row = fine.vdof(node, comp);
        const int col = coarse.vdof(cnode, comp);
        if (apply_bc && (fine.is_dirichlet[row] || coarse.is_dirichlet[col])) continue;
        triplets.push_back({row, col, phi[k]});
      }
    }
  }
  return assemble_csr(std::move(triplets), fine.vector_dofs, coarse.vector_dofs);
}

std::vector<int> interior_dofs_of_macro_cell(const FunctionSpace& fine, const MeshHierarchy& hier,
                                             int fine_level, int coarse_macro_cell) {
  const SplitMesh& fine_split = *fine.mesh;
  const std::vector<int>& parent = hier.parent_cell[fine_level];

  // fine macro cells inside K: children in the refinement
  std::vector<int> nodes;
  for (int fm = 0; fm < static_cast<int>(parent.size()); ++fm) {
    if (parent[fm] != coarse_macro_cell) continue;
    for (int k = 0; k < 3; ++k)
      for (int n : fine.cell_nodes[3 * fm + k]) nodes.push_back(n);
  }
  std::sort(nodes.begin(), nodes.end());
  nodes.erase(std::unique(nodes.begin(), nodes.end()), nodes.end());

  std::vector<int> dofs;
  for (int n : nodes) {
    // strictly interior: the basis function must vanish on the whole cell
    // boundary, so nodes on the domain boundary are out even when all of
    // their cells lie in K
    if (fine.node_on_boundary[n]) continue;
    bool inside = true;
    for (int c : fine.node_cells(n)) {
      if (parent[fine_split.macro_cell_of_cell[c]] != coarse_macro_cell) {
        inside = false;
        break;
      }
    }
    if (!inside) continue;
    for (int comp = 0; comp < 2; ++comp) {
      const int d = fine.vdof(n, comp);
      if (!fine.is_dirichlet[d]) dofs.push_back(d);
    }
  }
  std::sort(dofs.begin(), dofs.end());
  return dofs;
}

std::vector<std::vector<int>> interior_dof_sets(const FunctionSpace& fine,
                                                const MeshHierarchy& hier, int fine_level) {
  const std::vector<int>& parent = hier.parent_cell[fine_level];
  const int n_coarse_cells = 1 + *std::max_element(parent.begin(), parent.end());
  std::vector<std::vector<int>> sets(n_coarse_cells);
  for (int kc = 0; kc < n_coarse_cells; ++kc)
    sets[kc] = interior_dofs_of_macro_cell(fine, hier, fine_level, kc);
  return sets;
}

SparseMatrix build_robust_prolongation(const SparseMatrix& P,
                                       const std::vector<std::vector<int>>& interior_sets,
                                       const SparseMatrix& fine_Agamma_bc,
                                       const SparseMatrix& fine_C_bc, double gamma) {
  if (gamma == 0.0) return P;  // zero right-hand side, no correction

  std::vector<Triplet> triplets;
  triplets.reserve(P.nnz() * 2);
  for (int i = 0; i < P.nrows; ++i)
    for (int k = P.row_ptr[i]; k < P.row_ptr[i + 1]; ++k)
      triplets.push_back({i, P.col_idx[k], P.values[k]});

  // scatter workspace over coarse columns
  std::vector<double> acc(P.ncols, 0.0);
  std::vector<int> touched;

  for (size_t kc = 0; kc < interior_sets.size(); ++kc) {
    const std::vector<int>& dofs = interior_sets[kc];
    if (dofs.empty()) continue;
    const int n = static_cast<int>(dofs.size());

    DenseMatrix block(n);
    {
      std::vector<int> local(fine_Agamma_bc.nrows, -1);
      for (int i = 0; i < n; ++i) local[dofs[i]] = i;
      for (int i = 0; i < n; ++i) {
        const int row = dofs[i];
        for (int k = fine_Agamma_bc.row_ptr[row]; k < fine_Agamma_bc.row_ptr[row + 1]; ++k) {
          const int lj = local[fine_Agamma_bc.col_idx[k]];
          if (lj >= 0) block(i, lj) = fine_Agamma_bc.values[k];
        }
      }
    }
    DenseFactorization factor =
        dense_factorize(std::move(block), "prolongation block, coarse cell " + std::to_string(kc));

    // G = gamma * C[S_K,:] * P, assembled sparsely column by column
    touched.clear();
    std::vector<std::vector<std::pair<int, double>>> g_rows(n);
    for (int i = 0; i < n; ++i) {
      const int row = dofs[i];
      for (int k = fine_C_bc.row_ptr[row]; k < fine_C_bc.row_ptr[row + 1]; ++k) {
        const double cv = fine_C_bc.values[k];
        if (cv == 0.0) continue;
        const int j = fine_C_bc.col_idx[k];
        for (int pk = P.row_ptr[j]; pk < P.row_ptr[j + 1]; ++pk) {
          const int col = P.col_idx[pk];
          if (acc[col] == 0.0 && std::find(touched.begin(), touched.end(), col) == touched.end())
            touched.push_back(col);
          acc[col] += cv * P.values[pk];
        }
      }
      std::sort(touched.begin(), touched.end());
      for (int col : touched) {
        if (acc[col] != 0.0) g_rows[i].push_back({col, gamma * acc[col]});
        acc[col] = 0.0;
      }
      touched.clear();
    }

    // columns of the correction block: solve L_K X = G column-wise
    std::vector<int> cols;
    for (const auto& row : g_rows)
      for (const auto& [col, v] : row) cols.push_back(col);
    std::sort(cols.begin(), cols.end());
    cols.erase(std::unique(cols.begin(), cols.end()), cols.end());
    std::vector<int> col_pos(P.ncols, -1);
    for (size_t c = 0; c < cols.size(); ++c) col_pos[cols[c]] = static_cast<int>(c);

    const int nc = static_cast<int>(cols.size());
    std::vector<double> rhs(static_cast<size_t>(n) * nc, 0.0);
    for (int i = 0; i < n; ++i)
      for (const auto& [col, v] : g_rows[i]) rhs[static_cast<size_t>(col_pos[col]) * n + i] = v;

    Vector work(n);
    for (int c = 0; c < nc; ++c) {
      double* column = rhs.data() + static_cast<size_t>(c) * n;
      factor.solve_inplace(column, work.data());
      for (int i = 0; i < n; ++i)
        if (column[i] != 0.0) triplets.push_back({dofs[i], cols[c], -column[i]});
    }
  }
  return assemble_csr(std::move(triplets), P.nrows, P.ncols);
}

}  // namespace svmg
