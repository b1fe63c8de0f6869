#include "relaxation.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "rng.hpp"

namespace svmg {

std::vector<std::vector<int>> macro_star_dof_sets(const FunctionSpace& space,
                                                  const SplitMesh& split, const TriMesh& macro) {
  // split cells belonging to each macro cell are contiguous: 3c, 3c+1, 3c+2
  std::vector<std::vector<int>> sets(macro.vertex_count());
  std::vector<uint8_t> in_star(split.mesh.cell_count(), 0);
  for (int v = 0; v < macro.vertex_count(); ++v) {
    const std::vector<int>& star = macro.vertex_cells[v];
    for (int mc : star)
      for (int k = 0; k < 3; ++k) in_star[3 * mc + k] = 1;

    // collect candidate nodes from the star's split cells, then keep the
    // ones whose every incident split cell lies in the star
    std::vector<int> nodes;
    for (int mc : star)
      for (int k = 0; k < 3; ++k)
        for (int n : space.cell_nodes[3 * mc + k]) nodes.push_back(n);
    std::sort(nodes.begin(), nodes.end());
    nodes.erase(std::unique(nodes.begin(), nodes.end()), nodes.end());

    std::vector<int>& dofs = sets[v];
    for (int n : nodes) {
      bool inside = true;
      for (int c : space.node_cells(n))
        if (!in_star[c]) {
          inside = false;
          break;
        }
      if (!inside) continue;
      for (int comp = 0; comp < 2; ++comp) {
        const int d = space.vdof(n, comp);
        if (!space.is_dirichlet[d]) dofs.push_back(d);
      }
    }
    std::sort(dofs.begin(), dofs.end());

    for (int mc : star)
      for (int k = 0; k < 3; ++k) in_star[3 * mc + k] = 0;
  }
  return sets;
}

std::vector<Patch> build_patches(const std::vector<std::vector<int>>& dof_sets,
                                 const std::vector<int>& owner_vertices,
                                 const SparseMatrix& A_bc) {
  std::vector<Patch> patches;
  std::vector<int> local_of(A_bc.nrows, -1);
  for (size_t p = 0; p < dof_sets.size(); ++p) {
    const std::vector<int>& dofs = dof_sets[p];
    if (dofs.empty()) continue;
    const int n = static_cast<int>(dofs.size());
    for (int i = 0; i < n; ++i) local_of[dofs[i]] = i;
    DenseMatrix block(n);
    for (int i = 0; i < n; ++i) {
      const int row = dofs[i];
      for (int k = A_bc.row_ptr[row]; k < A_bc.row_ptr[row + 1]; ++k) {
        const int lj = local_of[A_bc.col_idx[k]];
        if (lj >= 0) block(i, lj) = A_bc.values[k];
      }
    }
    for (int d : dofs) local_of[d] = -1;
    Patch patch;
    patch.vertex = owner_vertices.empty() ? static_cast<int>(p) : owner_vertices[p];
    patch.dofs = dofs;
    patch.factor = dense_factorize(std::move(block), "patch at vertex " + std::to_string(patch.vertex));
    patches.push_back(std::move(patch));
  }
  if (patches.empty()) throw std::runtime_error("build_patches: no patch has free dofs");
  return patches;
}

std::vector<Patch> build_patches(const FunctionSpace& space, const SplitMesh& split,
                                 const TriMesh& macro, const SparseMatrix& A_bc) {
  const auto sets = macro_star_dof_sets(space, split, macro);
  std::vector<int> owners(sets.size());
  for (size_t v = 0; v < sets.size(); ++v) owners[v] = static_cast<int>(v);
  return build_patches(sets, owners, A_bc);
}

void asm_apply(const std::vector<Patch>& patches, const Vector& r, Vector& z) {
  z.assign(r.size(), 0.0);
  Vector local, work;
  for (const Patch& p : patches) {
    const int n = static_cast<int>(p.dofs.size());
    local.resize(n);
    work.resize(n);
    for (int i = 0; i < n; ++i) local[i] = r[p.dofs[i]];
    p.factor.solve_inplace(local.data(), work.data());
    for (int i = 0; i < n; ++i) z[p.dofs[i]] += local[i];
  }
}

void jacobi_apply(const Vector& inv_diag, const Vector& r, Vector& z) {
  z.resize(r.size());
  for (size_t i = 0; i < r.size(); ++i) z[i] = r[i] * inv_diag[i];
}

void Smoother::apply(const Vector& r, Vector& z) const {
  if (kind == Kind::MacroStarASM)
    asm_apply(patches, r, z);
  else
    jacobi_apply(inv_diag, r, z);
}

Smoother make_asm_smoother(std::vector<Patch> patches) {
  Smoother s;
  s.kind = Smoother::Kind::MacroStarASM;
  s.patches = std::move(patches);
  return s;
}

Smoother make_jacobi_smoother(const SparseMatrix& A_bc) {
  Smoother s;
  s.kind = Smoother::Kind::Jacobi;
  s.inv_diag.assign(A_bc.nrows, 0.0);
  for (int i = 0; i < A_bc.nrows; ++i) {
    const double d = A_bc.coeff(i, i);
    if (d == 0.0) throw std::runtime_error("jacobi: zero diagonal at dof " + std::to_string(i));
    s.inv_diag[i] = 1.0 / d;
  }
  return s;
}

double estimate_lambda_max(const SparseMatrix& A, const Smoother& smoother, int iters,
                           uint64_t seed, const std::vector<uint8_t>* is_dirichlet) {
  const int n = A.nrows;
  Lcg64 rng(seed);
  Vector x(n);
  for (int i = 0; i < n; ++i) x[i] = rng.next_symmetric();
  if (is_dirichlet)
    for (int i = 0; i < n; ++i)
      if ((*is_dirichlet)[i]) x[i] = 0.0;
  const double nx = norm2(x);
  if (nx == 0.0) throw std::runtime_error("estimate_lambda_max: zero start vector");
  for (double& v : x) v /= nx;

  // power iteration on M^{-1}A with the Rayleigh quotient taken in the
  // M inner product: lambda = <A y, y> / <M y, y>, and M y = A x
  Vector ax = A.apply(x), y, ay;
  double lambda = 0.0;
  for (int k = 0; k < iters; ++k) {
    smoother.apply(ax, y);
    ay = A.apply(y);
    const double my = dot(ax, y);
    if (my <= 0.0)
      throw std::runtime_error("estimate_lambda_max: smoother not positive definite");
    lambda = dot(ay, y) / my;
    const double ny = norm2(y);
    for (size_t i = 0; i < y.size(); ++i) {
      x[i] = y[i] / ny;
      ax[i] = ay[i] / ny;
    }
  }
  return lambda;
}

void chebyshev_smooth(const SparseMatrix& A, const Smoother& smoother, Vector& x, const Vector& b,
                      int steps, double lambda_lo, double lambda_hi) {
  if (!(lambda_hi >= lambda_lo) || lambda_lo <= 0.0)
    throw std::invalid_argument("chebyshev: invalid interval [" + std::to_string(lambda_lo) +
                                ", " + std::to_string(lambda_hi) + "]");
  const double theta = 0.5 * (lambda_hi + lambda_lo);
  const double delta = 0.5 * (lambda_hi - lambda_lo);

  Vector r(x.size()), z(x.size()), d(x.size()), tmp(x.size());
  A.apply(x, tmp);
  for (size_t i = 0; i < r.size(); ++i) r[i] = b[i] - tmp[i];

  if (delta <= 0.0) {
    // degenerate interval: preconditioned Richardson with weight 1/theta
    for (int k = 0; k < steps; ++k) {
      smoother.apply(r, z);
      for (size_t i = 0; i < x.size(); ++i) x[i] += z[i] / theta;
      if (k + 1 < steps) {
        A.apply(x, tmp);
        for (size_t i = 0; i < r.size(); ++i) r[i] = b[i] - tmp[i];
      }
    }
    return;
  }

  const double sigma = theta / delta;
  double rho_old = 1.0 / sigma;
  smoother.apply(r, z);
  for (size_t i = 0; i < d.size(); ++i) d[i] = z[i] / theta;

  for (int k = 0; k < steps; ++k) {
    for (size_t i = 0; i < x.size(); ++i) x[i] += d[i];
    if (k + 1 == steps) break;
    A.apply(d, tmp);
    for (size_t i = 0; i < r.size(); ++i) r[i] -= tmp[i];
    smoother.apply(r, z);
    const double rho = 1.0 / (2.0 * sigma - rho_old);
    for (size_t i = 0; i < d.size(); ++i)
      d[i] = rho * rho_old * d[i] + (2.0 * rho / delta) * z[i];
    rho_old = rho;
  }
}

}  // namespace svmg
