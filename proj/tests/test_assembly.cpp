#include <cmath>

#include "assembly.hpp"
#include "doctest.h"
#include "krylov.hpp"
#include "oracles.hpp"

using namespace svmg;

namespace {

struct Fixture {
  SplitMesh sm;
  FunctionSpace space;
  OperatorSet ops;

  explicit Fixture(int n) : sm(alfeld_split(structured_unit_square(n))) {
    space = build_space(sm);
    ops = assemble_operators(space);
  }
};

double inf_norm(const Vector& v) {
  double m = 0.0;
  for (double x : v) m = std::max(m, std::abs(x));
  return m;
}

}  // namespace

TEST_CASE("rigid motions are annihilated by A before boundary conditions") {
  Fixture f(4);
  const double scale = oracle::max_abs(f.ops.A);

  const Vector tx = interpolate(f.space, [](double, double) { return std::array{1.0, 0.0}; });
  const Vector ty = interpolate(f.space, [](double, double) { return std::array{0.0, 1.0}; });
  const Vector rot = interpolate(f.space, [](double x, double y) { return std::array{-y, x}; });

  CHECK(inf_norm(f.ops.A.apply(tx)) < 1e-12 * scale);
  CHECK(inf_norm(f.ops.A.apply(ty)) < 1e-12 * scale);
  CHECK(inf_norm(f.ops.C.apply(tx)) < 1e-12 * scale);
  CHECK(inf_norm(f.ops.A.apply(rot)) < 1e-11 * scale);
}

TEST_CASE("div-div energy of u=(x,0) equals the domain area") {
  Fixture f(4);
  const Vector u = interpolate(f.space, [](double x, double) { return std::array{x, 0.0}; });
  CHECK(dot(u, f.ops.C.apply(u)) == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("assembled matrices are symmetric") {
  Fixture f(4);
  CHECK(oracle::max_asymmetry(f.ops.A) < 1e-12 * oracle::max_abs(f.ops.A));
  CHECK(oracle::max_asymmetry(f.ops.C) < 1e-12 * oracle::max_abs(f.ops.C));
  const SparseMatrix m = f.ops.combined(1e4);
  CHECK(oracle::max_asymmetry(m) < 1e-13 * oracle::max_abs(m));
}

TEST_CASE("combined(gamma) is entrywise affine in gamma") {
  Fixture f(2);
  const SparseMatrix m1 = f.ops.combined(3.0, false);
  const SparseMatrix m2 = f.ops.combined(7.5, false);
  REQUIRE(m1.col_idx == m2.col_idx);
  REQUIRE(m1.row_ptr == f.ops.C.row_ptr);
  for (int k = 0; k < m1.nnz(); ++k)
    CHECK(m2.values[k] - m1.values[k] == doctest::Approx(4.5 * f.ops.C.values[k]).epsilon(1e-15));
}

TEST_CASE("div-div matrix is positive semidefinite") {
  Fixture f(2);
  for (uint64_t seed : {1, 2, 3, 4, 5}) {
    const Vector x = oracle::random_vector(f.space.vector_dofs, seed);
    CHECK(dot(x, f.ops.C.apply(x)) >= -1e-13);
  }
}

TEST_CASE("traction vector: totals, components, support") {
  Fixture f(4);
  const Vector b = assemble_traction(f.space, 0.5);
  double sum_x2 = 0.0;
  for (int n = 0; n < f.space.scalar_dofs; ++n) {
    CHECK(b[f.space.vdof(n, 0)] == 0.0);
    sum_x2 += b[f.space.vdof(n, 1)];
    if (std::abs(f.space.node_xy[n][0] - 1.0) > 1e-12) CHECK(b[f.space.vdof(n, 1)] == 0.0);
  }
  CHECK(sum_x2 == doctest::Approx(-0.5).epsilon(1e-14));
}

TEST_CASE("dirichlet elimination keeps the matrix symmetric with unit diagonal") {
  Fixture f(4);
  const SparseMatrix m = f.ops.combined(100.0);
  CHECK(oracle::max_asymmetry(m) < 1e-13 * oracle::max_abs(m));
  for (int d : f.space.dirichlet_dofs) {
    CHECK(m.coeff(d, d) == 1.0);
    for (int k = m.row_ptr[d]; k < m.row_ptr[d + 1]; ++k)
      if (m.col_idx[k] != d) CHECK(m.values[k] == 0.0);
  }
}

TEST_CASE("zero traction gives the zero solution") {
  Fixture f(2);
  const SparseMatrix m = f.ops.combined(0.0);
  const auto dense = oracle::dense_from_csr(m);
  const Vector x = oracle::lu_solve(dense, Vector(f.space.vector_dofs, 0.0));
  CHECK(inf_norm(x) == 0.0);
}

TEST_CASE("combined operator stays positive definite at gamma = 1e8") {
  Fixture f(4);  // refinement-0 mesh of the experiment
  const SparseMatrix m = f.ops.combined(1e8);
  const double lambda_min = oracle::inverse_power_smallest(oracle::dense_from_csr(m), 50, 123);
  CHECK(lambda_min > 0.0);
}

TEST_CASE("one-level Galerkin consistency with a direct preconditioner") {
  Fixture f(2);
  const SparseMatrix m = f.ops.combined(10.0);
  const Vector xstar = oracle::random_free_vector(f.space, 5150);
  const Vector b = m.apply(xstar);

  DenseMatrix dm(m.nrows);
  for (int i = 0; i < m.nrows; ++i)
    for (int k = m.row_ptr[i]; k < m.row_ptr[i + 1]; ++k) dm(i, m.col_idx[k]) = m.values[k];
  const DenseFactorization direct = dense_factorize(std::move(dm));

  Vector x;
  const SolveReport report = pcg([&](const Vector& v, Vector& y) { m.apply(v, y); },
                                 [&](const Vector& r, Vector& z) { z = direct.solve(r); }, b, x,
                                 1e-10, 50);
  CHECK(report.iterations == 1);
  CHECK(report.converged);
  double err = 0.0;
  for (size_t i = 0; i < x.size(); ++i) err = std::max(err, std::abs(x[i] - xstar[i]));
  CHECK(err < 1e-8 * inf_norm(xstar));
}

TEST_CASE("degenerate cells are rejected") {
  // zero-area cells never get past mesh construction
  TriMesh flat;
  flat.vertices = {{0, 0}, {1, 0}, {2, 0}};
  flat.cells = {{0, 1, 2}};
  CHECK_THROWS(alfeld_split(flat));

  // a sliver with area below the assembly tolerance is caught there
  TriMesh sliver;
  sliver.vertices = {{0, 0}, {1, 0}, {0.5, 3e-15}};
  sliver.cells = {{0, 1, 2}};
  const SplitMesh sm = alfeld_split(sliver);
  const FunctionSpace space = build_space(sm);
  CHECK_THROWS_AS(assemble_operators(space), std::runtime_error);
}
