#include "doctest.h"
#include "oracles.hpp"

using namespace svmg;

TEST_CASE("oracle lu_solve on a hand-checked system") {
  // [[2,1],[1,3]] x = (1,1)  =>  x = (2/5, 1/5)
  std::vector<std::vector<double>> a = {{2, 1}, {1, 3}};
  const Vector x = oracle::lu_solve(a, {1, 1});
  CHECK(x[0] == doctest::Approx(0.4).epsilon(1e-14));
  CHECK(x[1] == doctest::Approx(0.2).epsilon(1e-14));
}

TEST_CASE("oracle lu_inverse reproduces identity") {
  std::vector<std::vector<double>> a = {{4, 1, 0}, {1, 3, 1}, {0, 1, 5}};
  const auto inv = oracle::lu_inverse(a);
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) {
      double s = 0.0;
      for (int k = 0; k < 3; ++k) s += a[i][k] * inv[k][j];
      CHECK(s == doctest::Approx(i == j ? 1.0 : 0.0).epsilon(1e-12));
    }
}

TEST_CASE("oracle power iteration finds the dominant eigenvalue") {
  // diag(1, 2, 5)
  auto op = [](const Vector& x) { return Vector{x[0], 2.0 * x[1], 5.0 * x[2]}; };
  CHECK(oracle::power_iteration(op, 3, 100, 7) == doctest::Approx(5.0).epsilon(1e-10));
}

TEST_CASE("oracle inverse power iteration finds the smallest eigenvalue") {
  std::vector<std::vector<double>> a = {{3, 0, 0}, {0, 7, 0}, {0, 0, 0.5}};
  CHECK(oracle::inverse_power_smallest(a, 60, 11) == doctest::Approx(0.5).epsilon(1e-10));
}

TEST_CASE("oracle divergence integral matches a linear field") {
  // u = (x, 0) has div = 1, so the integral over any macro cell is its area
  const MeshHierarchy hier = build_hierarchy(2, 2);
  const FunctionSpace coarse = build_space(hier.split[0]);
  const FunctionSpace fine = build_space(hier.split[1]);
  const Vector uc = interpolate(coarse, [](double x, double) { return std::array{x, 0.0}; });
  const Vector uf = interpolate(fine, [](double x, double) { return std::array{x, 0.0}; });
  for (int kc = 0; kc < hier.macro[0].cell_count(); ++kc) {
    const double area = hier.macro[0].cell_area(kc);
    CHECK(oracle::divergence_integral_coarse(coarse, kc, uc) ==
          doctest::Approx(area).epsilon(1e-13));
    CHECK(oracle::divergence_integral_fine(fine, hier, 1, kc, uf) ==
          doctest::Approx(area).epsilon(1e-13));
  }
  // and the L2 norm of div over the whole square is 1
  CHECK(oracle::divergence_norm2(fine, uf) == doctest::Approx(1.0).epsilon(1e-13));
}

TEST_CASE("oracle mean-free divergence norm vanishes for constant divergence") {
  const MeshHierarchy hier = build_hierarchy(2, 2);
  const FunctionSpace fine = build_space(hier.split[1]);
  const Vector uf = interpolate(fine, [](double x, double) { return std::array{x, 0.0}; });
  CHECK(oracle::mean_free_divergence_norm2(fine, hier, 1, uf) ==
        doctest::Approx(0.0).epsilon(1e-13));
  // a genuinely varying divergence gives a positive value
  const Vector w = interpolate(fine, [](double x, double y) { return std::array{x * x, x * y}; });
  CHECK(oracle::mean_free_divergence_norm2(fine, hier, 1, w) > 1e-6);
}
