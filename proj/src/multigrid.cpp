#include "multigrid.hpp"

#include <stdexcept>

namespace svmg {

std::unique_ptr<ProblemSetup> build_problem(int coarse_n, int refinement) {
  if (refinement < 0) throw std::invalid_argument("build_problem: refinement must be >= 0");
  auto setup = std::make_unique<ProblemSetup>();
  setup->coarse_n = coarse_n;
  setup->refinement = refinement;
  const int levels = refinement + 1;
  setup->meshes = build_hierarchy(coarse_n, levels);

  setup->spaces.reserve(levels);
  for (int l = 0; l < levels; ++l) setup->spaces.push_back(build_space(setup->meshes.split[l]));
  setup->ops.reserve(levels);
  for (int l = 0; l < levels; ++l) setup->ops.push_back(assemble_operators(setup->spaces[l]));

  for (int l = 1; l < levels; ++l) {
    setup->standard_P.push_back(build_standard_prolongation(setup->spaces[l - 1],
                                                            setup->spaces[l], setup->meshes, l));
    setup->patch_sets.push_back(
        macro_star_dof_sets(setup->spaces[l], setup->meshes.split[l], setup->meshes.macro[l]));
    setup->interior_sets.push_back(interior_dof_sets(setup->spaces[l], setup->meshes, l));
  }
  // levels == 1: smoothing happens on level 0 in a plain direct solve setup;
  // patch sets for level 0 are only needed by tests and built on demand

  setup->traction = assemble_traction(setup->fine_space(), 0.5);
  apply_dirichlet_rhs(setup->fine_space(), setup->traction);
  return setup;
}

MGSolver::MGSolver(const ProblemSetup& setup, RelaxKind relax, TransferKind transfer, double gamma,
                   const MGOptions& opts)
    : setup_(setup), opts_(opts) {
  const int levels = setup.levels();
  if (levels < 2) throw std::invalid_argument("MGSolver: needs at least 2 levels");

  a_bc_.reserve(levels);
  for (int l = 0; l < levels; ++l) a_bc_.push_back(setup.ops[l].combined(gamma));

  p_.resize(levels);
  for (int l = 1; l < levels; ++l) {
    if (transfer == TransferKind::Standard) {
      p_[l] = setup.standard_P[l - 1];
    } else {
      p_[l] = build_robust_prolongation(setup.standard_P[l - 1], setup.interior_sets[l - 1],
                                        a_bc_[l], setup.ops[l].div_div_bc(), gamma);
    }
  }

  smoothers_.resize(levels);
  cheb_.assign(levels, {0.0, 0.0});
  for (int l = 1; l < levels; ++l) {
    if (relax == RelaxKind::MacroStarASM) {
      std::vector<int> owners(setup.patch_sets[l - 1].size());
      for (size_t v = 0; v < owners.size(); ++v) owners[v] = static_cast<int>(v);
      smoothers_[l] = make_asm_smoother(build_patches(setup.patch_sets[l - 1], owners, a_bc_[l]));
    } else {
      smoothers_[l] = make_jacobi_smoother(a_bc_[l]);
    }
    if (opts.fixed_interval) {
      cheb_[l] = *opts.fixed_interval;
    } else {
      const double est =
          estimate_lambda_max(a_bc_[l], smoothers_[l], opts.eig_iters,
                              opts.seed + 1000003ULL * static_cast<uint64_t>(l),
                              &setup.spaces[l].is_dirichlet);
      cheb_[l] = {opts.interval_lo * est, opts.interval_hi * est};
    }
  }

  const SparseMatrix& ac = a_bc_[0];
  DenseMatrix coarse(ac.nrows);
  for (int i = 0; i < ac.nrows; ++i)
    for (int k = ac.row_ptr[i]; k < ac.row_ptr[i + 1]; ++k) coarse(i, ac.col_idx[k]) = ac.values[k];
  coarse_factor_ = dense_factorize(std::move(coarse), "coarse level");
}

void MGSolver::apply_fine(const Vector& x, Vector& y) const { a_bc_.back().apply(x, y); }

void MGSolver::cycle(int level, const Vector& b, Vector& x) const {
  if (level == 0) {
    x = coarse_factor_.solve(b);
    return;
  }
  const SparseMatrix& A = a_bc_[level];
  const Smoother& S = smoothers_[level];
  chebyshev_smooth(A, S, x, b, opts_.pre_smooth, cheb_[level].first, cheb_[level].second);

  Vector r = A.apply(x);
  for (size_t i = 0; i < r.size(); ++i) r[i] = b[i] - r[i];
  Vector rc = p_[level].apply_transpose(r);
  Vector xc(rc.size(), 0.0);
  for (int i = 0; i < opts_.cycle_mu; ++i) cycle(level - 1, rc, xc);
  Vector corr = p_[level].apply(xc);
  for (size_t i = 0; i < x.size(); ++i) x[i] += corr[i];

  chebyshev_smooth(A, S, x, b, opts_.post_smooth, cheb_[level].first, cheb_[level].second);
}

void MGSolver::precondition(const Vector& r, Vector& z) const {
  z.assign(r.size(), 0.0);
  cycle(setup_.levels() - 1, r, z);
}

}  // namespace svmg
