#include "mesh.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <ostream>
#include <stdexcept>

namespace svmg {

namespace {

constexpr double kBoundaryTol = 1e-12;

/// Derive edges, cell->edge maps, boundary tags and adjacency. Edges whose
/// larger endpoint id is >= alfeld_vertex_start sort after all others; pass
/// INT_MAX-like sentinel for plain lexicographic numbering.
void finalize(TriMesh& m, int alfeld_vertex_start) {
  const int nv = m.vertex_count();
  for (int c = 0; c < m.cell_count(); ++c) {
    if (m.cell_area(c) <= 0.0)
      throw std::runtime_error("mesh: cell " + std::to_string(c) + " is not counterclockwise");
  }

  std::vector<std::array<int, 2>> pairs;
  pairs.reserve(3 * m.cells.size());
  for (const auto& cell : m.cells) {
    for (int k = 0; k < 3; ++k) {
      int a = cell[k], b = cell[(k + 1) % 3];
      if (a > b) std::swap(a, b);
      pairs.push_back({a, b});
    }
  }
  auto edge_key = [alfeld_vertex_start](const std::array<int, 2>& e) {
    return std::tuple<int, int, int>(e[1] >= alfeld_vertex_start ? 1 : 0, e[0], e[1]);
  };
  std::sort(pairs.begin(), pairs.end(),
            [&](const auto& a, const auto& b) { return edge_key(a) < edge_key(b); });
  pairs.erase(std::unique(pairs.begin(), pairs.end()), pairs.end());
  m.edges = std::move(pairs);

  std::map<std::array<int, 2>, int> edge_id;
  for (int e = 0; e < m.edge_count(); ++e) edge_id[m.edges[e]] = e;

  m.cell_edges.resize(m.cells.size());
  m.edge_cells.assign(m.edges.size(), {-1, -1});
  m.vertex_cells.assign(nv, {});
  for (int c = 0; c < m.cell_count(); ++c) {
    const auto& cell = m.cells[c];
    for (int k = 0; k < 3; ++k) {
      int a = cell[k], b = cell[(k + 1) % 3];
      if (a > b) std::swap(a, b);
      const int e = edge_id.at({a, b});
      m.cell_edges[c][k] = e;
      if (m.edge_cells[e][0] < 0)
        m.edge_cells[e][0] = c;
      else
        m.edge_cells[e][1] = c;
      m.vertex_cells[cell[k]].push_back(c);
    }
  }
  for (auto& vc : m.vertex_cells) {
    std::sort(vc.begin(), vc.end());
    vc.erase(std::unique(vc.begin(), vc.end()), vc.end());
  }

  m.edge_tags.assign(m.edges.size(), BoundaryTag::Interior);
  for (int e = 0; e < m.edge_count(); ++e) {
    if (m.edge_cells[e][1] >= 0) continue;  // interior edge
    const auto& p = m.vertices[m.edges[e][0]];
    const auto& q = m.vertices[m.edges[e][1]];
    if (std::abs(p[0]) < kBoundaryTol && std::abs(q[0]) < kBoundaryTol)
      m.edge_tags[e] = BoundaryTag::DirichletX0;
    else if (std::abs(p[0] - 1.0) < kBoundaryTol && std::abs(q[0] - 1.0) < kBoundaryTol)
      m.edge_tags[e] = BoundaryTag::NeumannX1;
    else
      m.edge_tags[e] = BoundaryTag::NeumannOther;
  }
}

}  // namespace

double TriMesh::cell_area(int c) const {
  const auto& a = vertices[cells[c][0]];
  const auto& b = vertices[cells[c][1]];
  const auto& d = vertices[cells[c][2]];
  return 0.5 * ((b[0] - a[0]) * (d[1] - a[1]) - (b[1] - a[1]) * (d[0] - a[0]));
}

std::array<double, 2> TriMesh::cell_barycenter(int c) const {
  const auto& a = vertices[cells[c][0]];
  const auto& b = vertices[cells[c][1]];
  const auto& d = vertices[cells[c][2]];
  return {(a[0] + b[0] + d[0]) / 3.0, (a[1] + b[1] + d[1]) / 3.0};
}

TriMesh structured_unit_square(int n) {
  if (n < 1) throw std::invalid_argument("structured_unit_square: n must be >= 1, got " + std::to_string(n));
  TriMesh m;
  m.vertices.reserve(static_cast<size_t>(n + 1) * (n + 1));
  for (int j = 0; j <= n; ++j)
    for (int i = 0; i <= n; ++i)
      m.vertices.push_back({static_cast<double>(i) / n, static_cast<double>(j) / n});

  auto vid = [n](int i, int j) { return j * (n + 1) + i; };
  m.cells.reserve(static_cast<size_t>(2) * n * n);
  for (int j = 0; j < n; ++j) {
    for (int i = 0; i < n; ++i) {
      const int v00 = vid(i, j), v10 = vid(i + 1, j);
      const int v01 = vid(i, j + 1), v11 = vid(i + 1, j + 1);
      m.cells.push_back({v00, v10, v11});
      m.cells.push_back({v00, v11, v01});
    }
  }
  finalize(m, m.vertex_count());
  return m;
}

RefinedMesh uniform_refine(const TriMesh& coarse) {
  RefinedMesh r;
  TriMesh& f = r.mesh;
  const int cv = coarse.vertex_count();
  const int ce = coarse.edge_count();

  f.vertices = coarse.vertices;
  f.vertices.resize(cv + ce);
  for (int e = 0; e < ce; ++e) {
    const auto& p = coarse.vertices[coarse.edges[e][0]];
    const auto& q = coarse.vertices[coarse.edges[e][1]];
    f.vertices[cv + e] = {0.5 * (p[0] + q[0]), 0.5 * (p[1] + q[1])};
  }
  r.origin_vertex.assign(cv + ce, -1);
  r.origin_edge.assign(cv + ce, -1);
  for (int v = 0; v < cv; ++v) r.origin_vertex[v] = v;
  for (int e = 0; e < ce; ++e) r.origin_edge[cv + e] = e;

  f.cells.reserve(4 * coarse.cells.size());
  r.parent_cell.reserve(4 * coarse.cells.size());
  for (int c = 0; c < coarse.cell_count(); ++c) {
    const auto [a, b, d] = coarse.cells[c];
    const int mab = cv + coarse.cell_edges[c][0];
    const int mbd = cv + coarse.cell_edges[c][1];
    const int mda = cv + coarse.cell_edges[c][2];
    f.cells.push_back({a, mab, mda});
    f.cells.push_back({mab, b, mbd});
    f.cells.push_back({mda, mbd, d});
    f.cells.push_back({mab, mbd, mda});
    for (int k = 0; k < 4; ++k) r.parent_cell.push_back(c);
  }
  finalize(f, f.vertex_count());
  return r;
}

SplitMesh alfeld_split(const TriMesh& macro) {
  SplitMesh s;
  TriMesh& m = s.mesh;
  const int mv = macro.vertex_count();
  const int mt = macro.cell_count();
  s.macro_vertex_count = mv;
  s.macro_edge_count = macro.edge_count();

  m.vertices = macro.vertices;
  m.vertices.resize(mv + mt);
  for (int c = 0; c < mt; ++c) m.vertices[mv + c] = macro.cell_barycenter(c);

  m.cells.reserve(3 * static_cast<size_t>(mt));
  s.macro_cell_of_cell.reserve(3 * static_cast<size_t>(mt));
  for (int c = 0; c < mt; ++c) {
    const auto [a, b, d] = macro.cells[c];
    const int g = mv + c;
    m.cells.push_back({a, b, g});
    m.cells.push_back({b, d, g});
    m.cells.push_back({d, a, g});
    for (int k = 0; k < 3; ++k) s.macro_cell_of_cell.push_back(c);
  }
  // macro edges keep their ids, Alfeld edges are appended
  finalize(m, mv);
  return s;
}

MeshHierarchy build_hierarchy(int coarse_n, int levels) {
  if (levels < 1) throw std::invalid_argument("build_hierarchy: levels must be >= 1");
  MeshHierarchy h;
  h.macro.push_back(structured_unit_square(coarse_n));
  h.parent_cell.emplace_back();
  h.origin_vertex.emplace_back();
  h.origin_edge.emplace_back();
  for (int l = 1; l < levels; ++l) {
    RefinedMesh r = uniform_refine(h.macro.back());
    h.macro.push_back(std::move(r.mesh));
    h.parent_cell.push_back(std::move(r.parent_cell));
    h.origin_vertex.push_back(std::move(r.origin_vertex));
    h.origin_edge.push_back(std::move(r.origin_edge));
  }
  h.split.reserve(h.macro.size());
  for (const TriMesh& m : h.macro) h.split.push_back(alfeld_split(m));
  return h;
}

std::vector<int> macro_star(const TriMesh& m, int v) {
  if (v < 0 || v >= m.vertex_count())
    throw std::out_of_range("macro_star: vertex " + std::to_string(v));
  return m.vertex_cells[v];
}

void dump_mesh(const TriMesh& m, std::ostream& os) {
  os << m.vertex_count() << ' ' << m.cell_count() << '\n';
  for (const auto& v : m.vertices) os << v[0] << ' ' << v[1] << '\n';
  for (const auto& c : m.cells) os << c[0] << ' ' << c[1] << ' ' << c[2] << '\n';
}

}  // namespace svmg
