#include "assembly.hpp"

#include <cmath>
#include <stdexcept>

namespace svmg {

namespace {

struct CellGeometry {
  double jac[2][2];     // columns are edge vectors
  double inv_t[2][2];   // J^{-T}
  double det;
};

CellGeometry cell_geometry(const TriMesh& m, int c) {
  const auto& a = m.vertices[m.cells[c][0]];
  const auto& b = m.vertices[m.cells[c][1]];
  const auto& d = m.vertices[m.cells[c][2]];
  CellGeometry g;
  g.jac[0][0] = b[0] - a[0];
  g.jac[1][0] = b[1] - a[1];
  g.jac[0][1] = d[0] - a[0];
  g.jac[1][1] = d[1] - a[1];
  g.det = g.jac[0][0] * g.jac[1][1] - g.jac[0][1] * g.jac[1][0];
  if (std::abs(g.det) < 2e-14)
    throw std::runtime_error("assembly: degenerate cell " + std::to_string(c));
  g.inv_t[0][0] = g.jac[1][1] / g.det;
  g.inv_t[0][1] = -g.jac[1][0] / g.det;
  g.inv_t[1][0] = -g.jac[0][1] / g.det;
  g.inv_t[1][1] = g.jac[0][0] / g.det;
  return g;
}

}  // namespace

OperatorSet assemble_operators(const FunctionSpace& space) {
  const TriMesh& m = space.mesh->mesh;
  const QuadratureRule& quad = cell_quadrature_deg4();
  const int nq = static_cast<int>(quad.points.size());

  // reference gradients per quadrature point
  std::vector<std::array<std::array<double, 2>, 6>> ref_grads(nq);
  for (int q = 0; q < nq; ++q) ref_grads[q] = p2_gradients(quad.points[q][0], quad.points[q][1]);

  std::vector<Triplet> ta, tc;
  ta.reserve(144 * m.cells.size());
  tc.reserve(144 * m.cells.size());

  for (int c = 0; c < m.cell_count(); ++c) {
    const CellGeometry g = cell_geometry(m, c);
    double ea[12][12] = {};
    double ec[12][12] = {};
    for (int q = 0; q < nq; ++q) {
      const double w = quad.weights[q] * g.det;  // det = 2*area, weights sum to 1/2
      double gx[6], gy[6];
      for (int k = 0; k < 6; ++k) {
        gx[k] = g.inv_t[0][0] * ref_grads[q][k][0] + g.inv_t[0][1] * ref_grads[q][k][1];
        gy[k] = g.inv_t[1][0] * ref_grads[q][k][0] + g.inv_t[1][1] * ref_grads[q][k][1];
      }
      for (int j = 0; j < 6; ++j) {
        for (int k = 0; k < 6; ++k) {
          // eps(phi e_0) : eps(phi e_0) etc. for the two components
          ea[2 * j][2 * k] += w * (gx[j] * gx[k] + 0.5 * gy[j] * gy[k]);
          ea[2 * j][2 * k + 1] += w * 0.5 * gy[j] * gx[k];
          ea[2 * j + 1][2 * k] += w * 0.5 * gx[j] * gy[k];
          ea[2 * j + 1][2 * k + 1] += w * (gy[j] * gy[k] + 0.5 * gx[j] * gx[k]);
          ec[2 * j][2 * k] += w * gx[j] * gx[k];
          ec[2 * j][2 * k + 1] += w * gx[j] * gy[k];
          ec[2 * j + 1][2 * k] += w * gy[j] * gx[k];
          ec[2 * j + 1][2 * k + 1] += w * gy[j] * gy[k];
        }
      }
    }
    for (int j = 0; j < 12; ++j) {
      const int row = space.vdof(space.cell_nodes[c][j / 2], j % 2);
      for (int k = 0; k < 12; ++k) {
        const int col = space.vdof(space.cell_nodes[c][k / 2], k % 2);
        ta.push_back({row, col, ea[j][k]});
        tc.push_back({row, col, ec[j][k]});
      }
    }
  }

  OperatorSet ops;
  ops.space = &space;
  ops.A = assemble_csr(std::move(ta), space.vector_dofs, space.vector_dofs);
  ops.C = assemble_csr(std::move(tc), space.vector_dofs, space.vector_dofs);
  return ops;
}

SparseMatrix OperatorSet::combined(double gamma, bool with_bc) const {
  SparseMatrix M = A;
  if (gamma != 0.0) {
    // A and C are assembled from identical triplet structures
    for (int k = 0; k < M.nnz(); ++k) M.values[k] += gamma * C.values[k];
  }
  if (!with_bc) return M;
  const auto& dir = space->is_dirichlet;
  for (int i = 0; i < M.nrows; ++i) {
    for (int k = M.row_ptr[i]; k < M.row_ptr[i + 1]; ++k) {
      const int j = M.col_idx[k];
      if (dir[i] || dir[j]) M.values[k] = (i == j) ? 1.0 : 0.0;
    }
  }
  return M;
}

SparseMatrix OperatorSet::div_div_bc() const {
  SparseMatrix M = C;
  const auto& dir = space->is_dirichlet;
  for (int i = 0; i < M.nrows; ++i)
    for (int k = M.row_ptr[i]; k < M.row_ptr[i + 1]; ++k)
      if (dir[i] || dir[M.col_idx[k]]) M.values[k] = 0.0;
  return M;
}

Vector assemble_traction(const FunctionSpace& space, double magnitude) {
  const TriMesh& m = space.mesh->mesh;
  const EdgeQuadratureRule& quad = edge_quadrature_deg4();
  Vector b(space.vector_dofs, 0.0);
  bool found = false;
  for (int e = 0; e < m.edge_count(); ++e) {
    if (m.edge_tags[e] != BoundaryTag::NeumannX1) continue;
    found = true;
    const auto& p = m.vertices[m.edges[e][0]];
    const auto& q = m.vertices[m.edges[e][1]];
    const double len = std::hypot(q[0] - p[0], q[1] - p[1]);
    const int nodes[3] = {m.edges[e][0], m.edges[e][1], m.vertex_count() + e};
    for (size_t k = 0; k < quad.points.size(); ++k) {
      const double t = quad.points[k];
      // quadratic trace basis on the edge: endpoints and midpoint
      const double phi[3] = {(1.0 - t) * (1.0 - 2.0 * t), t * (2.0 * t - 1.0), 4.0 * t * (1.0 - t)};
      for (int j = 0; j < 3; ++j)
        b[space.vdof(nodes[j], 1)] += quad.weights[k] * len * phi[j] * (-magnitude);
    }
  }
  if (!found) throw std::runtime_error("assemble_traction: mesh has no x=1 Neumann edges");
  return b;
}

void apply_dirichlet_rhs(const FunctionSpace& space, Vector& b) {
  for (int d : space.dirichlet_dofs) b[d] = 0.0;
}

}  // namespace svmg
