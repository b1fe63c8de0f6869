/// @file mesh.hpp
/// @brief Structured triangulations of the unit square, uniform (red)
/// refinement, Alfeld splits, and the macro/split entity maps used by the
/// smoother and the transfer operators.

#pragma once

#include <array>
#include <cstdint>
#include <iosfwd>
#include <vector>

namespace svmg {

enum class BoundaryTag : uint8_t { Interior, DirichletX0, NeumannX1, NeumannOther };

/// Simplicial 2D mesh. Edges are derived from the cells; identity is the
/// sorted vertex pair and numbering is lexicographic (see alfeld_split for
/// the one exception to the ordering).
struct TriMesh {
  std::vector<std::array<double, 2>> vertices;
  std::vector<std::array<int, 3>> cells;       // counterclockwise
  std::vector<std::array<int, 2>> edges;       // sorted vertex pairs
  std::vector<std::array<int, 3>> cell_edges;  // edges (v0,v1),(v1,v2),(v2,v0)
  std::vector<BoundaryTag> edge_tags;

  // adjacency, derived
  std::vector<std::vector<int>> vertex_cells;      // sorted cell ids per vertex
  std::vector<std::array<int, 2>> edge_cells;      // incident cells, -1 if none

  int vertex_count() const { return static_cast<int>(vertices.size()); }
  int edge_count() const { return static_cast<int>(edges.size()); }
  int cell_count() const { return static_cast<int>(cells.size()); }

  double cell_area(int c) const;
  std::array<double, 2> cell_barycenter(int c) const;
};

/// Alfeld split of a macro mesh. Vertex ids 0..macro_V-1 are the macro
/// vertices, barycenters follow in macro cell order. Edge ids 0..macro_E-1
/// are the inherited macro edges (macro numbering), Alfeld edges follow.
struct SplitMesh {
  TriMesh mesh;
  std::vector<int> macro_cell_of_cell;  // split cell -> macro cell
  int macro_vertex_count = 0;
  int macro_edge_count = 0;
};

/// One uniform refinement step with the maps back to the parent mesh.
struct RefinedMesh {
  TriMesh mesh;
  std::vector<int> parent_cell;    // fine cell -> coarse cell
  std::vector<int> origin_vertex;  // fine vertex -> coarse vertex, or -1
  std::vector<int> origin_edge;    // fine vertex -> coarse edge (midpoint), or -1
};

struct MeshHierarchy {
  std::vector<TriMesh> macro;       // per level, level 0 coarsest
  std::vector<SplitMesh> split;     // Alfeld split of each macro mesh
  // maps for level l >= 1, relating macro level l to macro level l-1
  std::vector<std::vector<int>> parent_cell;
  std::vector<std::vector<int>> origin_vertex;
  std::vector<std::vector<int>> origin_edge;

  int levels() const { return static_cast<int>(macro.size()); }
};

/// n x n grid of squares, each cut along the lower-left to upper-right
/// diagonal. Boundary tags: x=0 Dirichlet, x=1 traction Neumann, the rest
/// zero Neumann.
TriMesh structured_unit_square(int n);

RefinedMesh uniform_refine(const TriMesh& m);

SplitMesh alfeld_split(const TriMesh& macro);

MeshHierarchy build_hierarchy(int coarse_n, int levels);

/// Macro cells incident to vertex v, sorted.
std::vector<int> macro_star(const TriMesh& m, int v);

/// Plain-text dump: counts line, then one vertex per line, then one cell
/// per line.
void dump_mesh(const TriMesh& m, std::ostream& os);

}  // namespace svmg
