#include "space.hpp"

#include <cmath>
#include <stdexcept>

namespace svmg {

std::array<double, 6> p2_values(double x, double y) {
  const double l0 = 1.0 - x - y, l1 = x, l2 = y;
  return {l0 * (2.0 * l0 - 1.0), l1 * (2.0 * l1 - 1.0), l2 * (2.0 * l2 - 1.0),
          4.0 * l0 * l1,         4.0 * l1 * l2,         4.0 * l2 * l0};
}

std::array<std::array<double, 2>, 6> p2_gradients(double x, double y) {
  const double l0 = 1.0 - x - y;
  return {{{1.0 - 4.0 * l0, 1.0 - 4.0 * l0},
           {4.0 * x - 1.0, 0.0},
           {0.0, 4.0 * y - 1.0},
           {4.0 * (l0 - x), -4.0 * x},
           {4.0 * y, 4.0 * x},
           {-4.0 * y, 4.0 * (l0 - y)}}};
}

const QuadratureRule& cell_quadrature_deg4() {
  // Dunavant degree-4 rule, two orbits of three points
  static const QuadratureRule rule = [] {
    QuadratureRule q;
    const double a1 = 0.445948490915965, w1 = 0.223381589678011;
    const double a2 = 0.091576213509771, w2 = 0.109951743655322;
    for (auto [a, w] : {std::pair{a1, w1}, std::pair{a2, w2}}) {
      // barycentric orbits (1-2a, a, a); reference point (l1, l2)
      q.points.push_back({a, a});
      q.points.push_back({1.0 - 2.0 * a, a});
      q.points.push_back({a, 1.0 - 2.0 * a});
      for (int k = 0; k < 3; ++k) q.weights.push_back(0.5 * w);
    }
    return q;
  }();
  return rule;
}

const EdgeQuadratureRule& edge_quadrature_deg4() {
  static const EdgeQuadratureRule rule = [] {
    EdgeQuadratureRule q;
    const double r = std::sqrt(0.6);
    q.points = {0.5 * (1.0 - r), 0.5, 0.5 * (1.0 + r)};
    q.weights = {5.0 / 18.0, 8.0 / 18.0, 5.0 / 18.0};
    return q;
  }();
  return rule;
}

FunctionSpace build_space(const SplitMesh& sm) {
  const TriMesh& m = sm.mesh;
  FunctionSpace s;
  s.mesh = &sm;
  const int nv = m.vertex_count();
  const int ne = m.edge_count();
  s.scalar_dofs = nv + ne;
  s.vector_dofs = 2 * s.scalar_dofs;

  s.cell_nodes.resize(m.cell_count());
  for (int c = 0; c < m.cell_count(); ++c) {
    const auto& cell = m.cells[c];
    const auto& ce = m.cell_edges[c];
    s.cell_nodes[c] = {cell[0], cell[1], cell[2], nv + ce[0], nv + ce[1], nv + ce[2]};
  }

  s.node_xy.resize(s.scalar_dofs);
  for (int v = 0; v < nv; ++v) s.node_xy[v] = m.vertices[v];
  for (int e = 0; e < ne; ++e) {
    const auto& p = m.vertices[m.edges[e][0]];
    const auto& q = m.vertices[m.edges[e][1]];
    s.node_xy[nv + e] = {0.5 * (p[0] + q[0]), 0.5 * (p[1] + q[1])};
  }

  s.node_rep_cell.assign(s.scalar_dofs, -1);
  for (int c = m.cell_count() - 1; c >= 0; --c)
    for (int k = 0; k < 6; ++k) s.node_rep_cell[s.cell_nodes[c][k]] = c;

  s.node_on_boundary.assign(s.scalar_dofs, 0);
  for (int e = 0; e < ne; ++e) {
    if (m.edge_cells[e][1] >= 0) continue;
    s.node_on_boundary[m.edges[e][0]] = 1;
    s.node_on_boundary[m.edges[e][1]] = 1;
    s.node_on_boundary[nv + e] = 1;
  }

  s.is_dirichlet.assign(s.vector_dofs, 0);
  for (int e = 0; e < ne; ++e) {
    if (m.edge_tags[e] != BoundaryTag::DirichletX0) continue;
    for (int node : {m.edges[e][0], m.edges[e][1], nv + e})
      for (int comp = 0; comp < 2; ++comp) s.is_dirichlet[s.vdof(node, comp)] = 1;
  }
  for (int d = 0; d < s.vector_dofs; ++d)
    (s.is_dirichlet[d] ? s.dirichlet_dofs : s.free_dofs).push_back(d);
  return s;
}

std::vector<int> FunctionSpace::node_cells(int n) const {
  const TriMesh& m = mesh->mesh;
  if (n < m.vertex_count()) return m.vertex_cells[n];
  const auto& ec = m.edge_cells[n - m.vertex_count()];
  std::vector<int> out;
  for (int c : ec)
    if (c >= 0) out.push_back(c);
  return out;
}

std::array<double, 2> evaluate(const FunctionSpace& s, const Vector& coeffs, int cell,
                               double xref, double yref) {
  if (coeffs.size() != static_cast<size_t>(s.vector_dofs))
    throw std::invalid_argument("evaluate: coefficient vector has " +
                                std::to_string(coeffs.size()) + " entries, space has " +
                                std::to_string(s.vector_dofs));
  const auto phi = p2_values(xref, yref);
  std::array<double, 2> out = {0.0, 0.0};
  for (int k = 0; k < 6; ++k) {
    const int node = s.cell_nodes[cell][k];
    out[0] += coeffs[s.vdof(node, 0)] * phi[k];
    out[1] += coeffs[s.vdof(node, 1)] * phi[k];
  }
  return out;
}

Vector interpolate(const FunctionSpace& s,
                   const std::function<std::array<double, 2>(double, double)>& f) {
  Vector u(s.vector_dofs, 0.0);
  for (int n = 0; n < s.scalar_dofs; ++n) {
    const auto v = f(s.node_xy[n][0], s.node_xy[n][1]);
    u[s.vdof(n, 0)] = v[0];
    u[s.vdof(n, 1)] = v[1];
  }
  return u;
}

}  // namespace svmg
