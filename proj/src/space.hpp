/// @file space.hpp
/// @brief Continuous [P2]^2 vector Lagrange space on a split mesh:
/// reference basis, DOF numbering, quadrature and point evaluation.

#pragma once

#include <array>
#include <functional>

#include "linalg.hpp"
#include "mesh.hpp"

namespace svmg {

/// Quadratic Lagrange basis on the reference triangle (0,0),(1,0),(0,1),
/// node order (v0, v1, v2, m01, m12, m20).
std::array<double, 6> p2_values(double x, double y);
std::array<std::array<double, 2>, 6> p2_gradients(double x, double y);

struct QuadratureRule {
  std::vector<std::array<double, 2>> points;  // reference coordinates
  std::vector<double> weights;                // sum to 1/2
};

/// Exact for polynomials of total degree 4 on the reference triangle.
const QuadratureRule& cell_quadrature_deg4();

struct EdgeQuadratureRule {
  std::vector<double> points;   // parameters in [0,1]
  std::vector<double> weights;  // sum to 1
};

/// Gauss rule on [0,1], exact for degree 4 (and 5).
const EdgeQuadratureRule& edge_quadrature_deg4();

/// Scalar nodes are split-mesh vertices (mesh order) followed by edge
/// midpoints (mesh edge order); vector dof = 2*node + component.
struct FunctionSpace {
  const SplitMesh* mesh = nullptr;
  int scalar_dofs = 0;
  int vector_dofs = 0;
  std::vector<std::array<int, 6>> cell_nodes;      // scalar node ids per cell
  std::vector<std::array<double, 2>> node_xy;      // scalar node coordinates
  std::vector<int> node_rep_cell;                  // lowest cell containing the node
  std::vector<uint8_t> node_on_boundary;           // per scalar node
  std::vector<uint8_t> is_dirichlet;               // per vector dof
  std::vector<int> dirichlet_dofs;                 // sorted
  std::vector<int> free_dofs;                      // sorted complement

  int vdof(int node, int comp) const { return 2 * node + comp; }

  /// Cells incident to scalar node n.
  std::vector<int> node_cells(int n) const;
};

FunctionSpace build_space(const SplitMesh& m);

/// Value of the coefficient field at a reference point of one cell.
std::array<double, 2> evaluate(const FunctionSpace& s, const Vector& coeffs, int cell,
                               double xref, double yref);

/// Nodal interpolant of an analytic vector field.
Vector interpolate(const FunctionSpace& s,
                   const std::function<std::array<double, 2>(double, double)>& f);

}  // namespace svmg
