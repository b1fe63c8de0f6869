// Acceptance gate: evaluates every criterion of the study at its stated
// tolerance, prints one pass/fail line per criterion, and writes a JSON
// report. Exit code is the number of failed criteria.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "experiment.hpp"
#include "json.hpp"
#include "krylov.hpp"
#include "oracles.hpp"
#include "rng.hpp"

using namespace svmg;

namespace {

struct Criterion {
  int id;
  std::string name;
  bool pass;
  std::string detail;
};

std::vector<Criterion> g_criteria;

void record(int id, const std::string& name, bool pass, const std::string& detail) {
  g_criteria.push_back({id, name, pass, detail});
  std::printf("[%s] criterion %d: %s  --  %s\n", pass ? "PASS" : "FAIL", id, name.c_str(),
              detail.c_str());
  std::fflush(stdout);
}

using RowKey = std::tuple<std::string, int, double>;  // variant, refinement, gamma

const ResultRow& find_row(const std::map<RowKey, ResultRow>& rows, const std::string& variant,
                          int refinement, double gamma) {
  return rows.at({variant, refinement, gamma});
}

// ---- criterion 1: exact dof counts ----
void check_dof_counts() {
  const int expected[3] = {1602, 6274, 24834};
  bool pass = true;
  std::ostringstream detail;
  for (int r = 1; r <= 3; ++r) {
    const SplitMesh sm = alfeld_split(structured_unit_square(4 << r));
    const int dofs = build_space(sm).vector_dofs;
    pass = pass && dofs == expected[r - 1];
    detail << "refinement " << r << ": " << dofs << " (expected " << expected[r - 1] << ") ";
  }
  record(1, "dof counts are exactly 1602 / 6274 / 24834", pass, detail.str());
}

// ---- criteria 2-5, 7: the full default grid ----
void check_iteration_study(const std::map<RowKey, ResultRow>& rows,
                           const std::vector<double>& gammas, double grid_seconds) {
  {  // 2: parameter robustness of robust-robust
    bool pass = true;
    std::ostringstream detail;
    for (int r = 1; r <= 3; ++r) {
      int lo = 1 << 20, hi = 0;
      for (double g : gammas) {
        const ResultRow& row = find_row(rows, "robust-robust", r, g);
        pass = pass && row.converged && row.iterations <= 25;
        lo = std::min(lo, row.iterations);
        hi = std::max(hi, row.iterations);
      }
      pass = pass && hi <= 3 * lo;
      detail << "refinement " << r << ": iters in [" << lo << ", " << hi << "] ";
    }
    record(2, "robust-robust converges within 25 iterations for all gamma, spread <= 3x", pass,
           detail.str());
  }
  {  // 3: transfer necessity
    const ResultRow& fails = find_row(rows, "robust-standard", 2, 1e4);
    const ResultRow& degrades = find_row(rows, "robust-standard", 2, 100.0);
    const bool pass = !fails.converged && degrades.converged && degrades.iterations <= 40;
    std::ostringstream detail;
    detail << "gamma=1e4: " << (fails.converged ? "converged" : ">200") << ", gamma=1e2: "
           << degrades.iterations << " iterations";
    record(3, "standard transfer fails at gamma=1e4 (refinement 2), degrades at 1e2", pass,
           detail.str());
  }
  {  // 4: relaxation necessity
    bool pass = true;
    std::ostringstream detail;
    for (int r = 1; r <= 3; ++r)
      pass = pass && !find_row(rows, "jacobi-standard", r, 100.0).converged;
    detail << "jacobi-standard gamma=1e2: all >200; gamma=0 iters:";
    for (const char* variant : {"jacobi-standard", "jacobi-robust"}) {
      int lo = 1 << 20, hi = 0;
      for (int r = 1; r <= 3; ++r) {
        const ResultRow& row = find_row(rows, variant, r, 0.0);
        pass = pass && row.converged && row.iterations <= 40;
        lo = std::min(lo, row.iterations);
        hi = std::max(hi, row.iterations);
      }
      pass = pass && hi - lo <= 3;
      detail << " " << variant << " [" << lo << ", " << hi << "]";
    }
    record(4, "jacobi relaxation fails at gamma=1e2, stays mesh independent at gamma=0", pass,
           detail.str());
  }
  {  // 5: relaxation robustness isolation
    bool pass = true;
    std::ostringstream detail;
    for (int r = 1; r <= 3; ++r) {
      const ResultRow& jac = find_row(rows, "jacobi-robust", r, 1000.0);
      const ResultRow& rob = find_row(rows, "robust-robust", r, 1000.0);
      pass = pass && !jac.converged && rob.converged && rob.iterations <= 25;
      detail << "refinement " << r << ": jacobi-robust " << (jac.converged ? "converged" : ">200")
             << ", robust-robust " << rob.iterations << "; ";
    }
    record(5, "jacobi-robust exceeds 200 iterations at gamma=1e3 while robust-robust stays <= 25",
           pass, detail.str());
  }
  {  // 7: runtime budget
    double single = 0.0;
    for (double g : gammas)
      single = std::max(single, find_row(rows, "robust-robust", 3, g).seconds);
    const bool pass = grid_seconds < 1800.0 && single < 60.0;
    std::ostringstream detail;
    detail << "full grid " << grid_seconds << "s (< 1800s), slowest refinement-3 robust-robust row "
           << single << "s (< 60s)";
    record(7, "runtime budget", pass, detail.str());
  }
}

// ---- criterion 6: property suite ----
struct PropertyTally {
  bool pass = true;
  std::ostringstream detail;

  void check(const char* what, bool ok) {
    pass = pass && ok;
    detail << what << (ok ? " ok; " : " FAILED; ");
  }
};

void check_property_suite() {
  PropertyTally t;

  // shared refinement-1 problem
  auto setup = build_problem(4, 1);
  const FunctionSpace& fine = setup->fine_space();
  const FunctionSpace& coarse = setup->spaces[0];

  {  // smoother symmetry, 1e-10
    const SparseMatrix a = setup->ops[1].combined(1e4);
    const Smoother s = make_asm_smoother(
        build_patches(setup->patch_sets[0],
                      [&] {
                        std::vector<int> owners(setup->patch_sets[0].size());
                        for (size_t v = 0; v < owners.size(); ++v) owners[v] = (int)v;
                        return owners;
                      }(),
                      a));
    const Smoother j = make_jacobi_smoother(a);
    bool ok = true;
    for (int trial = 0; trial < 20; ++trial) {
      const Vector x = oracle::random_free_vector(fine, 100 + trial);
      const Vector y = oracle::random_free_vector(fine, 200 + trial);
      for (const Smoother* s_ptr : {&s, &j}) {
        Vector sx, sy;
        s_ptr->apply(x, sx);
        s_ptr->apply(y, sy);
        const double lhs = dot(sx, y), rhs = dot(x, sy);
        ok = ok && std::abs(lhs - rhs) <= 1e-10 * std::max(std::abs(lhs), std::abs(rhs));
      }
    }
    t.check("smoother symmetry 1e-10", ok);
  }

  {  // W-cycle preconditioner symmetry, 1e-9
    MGOptions opts;
    const MGSolver solver(*setup, RelaxKind::MacroStarASM, TransferKind::Robust, 1e3, opts);
    bool ok = true;
    for (int trial = 0; trial < 10; ++trial) {
      const Vector x = oracle::random_free_vector(fine, 300 + trial);
      const Vector y = oracle::random_free_vector(fine, 400 + trial);
      Vector bx, by;
      solver.precondition(x, bx);
      solver.precondition(y, by);
      const double lhs = dot(bx, y), rhs = dot(x, by);
      ok = ok && std::abs(lhs - rhs) <= 1e-9 * std::max(std::abs(lhs), std::abs(rhs));
    }
    t.check("w-cycle symmetry 1e-9", ok);
  }

  {  // matrix symmetry 1e-12 relative
    const bool ok =
        oracle::max_asymmetry(setup->ops[1].A) <= 1e-12 * oracle::max_abs(setup->ops[1].A) &&
        oracle::max_asymmetry(setup->ops[1].C) <= 1e-12 * oracle::max_abs(setup->ops[1].C);
    t.check("A/C symmetry 1e-12", ok);
  }

  {  // rigid motion annihilation 1e-11
    const double scale = oracle::max_abs(setup->ops[1].A);
    bool ok = true;
    for (const auto& field :
         std::vector<std::function<std::array<double, 2>(double, double)>>{
             [](double, double) { return std::array{1.0, 0.0}; },
             [](double, double) { return std::array{0.0, 1.0}; },
             [](double x, double y) { return std::array{-y, x}; }}) {
      const Vector u = interpolate(fine, field);
      const Vector au = setup->ops[1].A.apply(u);
      for (double v : au) ok = ok && std::abs(v) <= 1e-11 * scale;
    }
    t.check("rigid motions 1e-11", ok);
  }

  {  // partition of unity 1e-14
    bool ok = true;
    Lcg64 rng(5);
    for (int trial = 0; trial < 20; ++trial) {
      double x = rng.next_double(), y = rng.next_double();
      if (x + y > 1.0) {
        x = 1.0 - x;
        y = 1.0 - y;
      }
      const auto phi = p2_values(x, y);
      double s = 0.0;
      for (double v : phi) s += v;
      ok = ok && std::abs(s - 1.0) <= 1e-14;
    }
    t.check("partition of unity 1e-14", ok);
  }

  {  // prolongation reproduces quadratics, 1e-12
    const SparseMatrix praw = build_standard_prolongation(coarse, fine, setup->meshes, 1, false);
    bool ok = true;
    for (const auto& field :
         std::vector<std::function<std::array<double, 2>(double, double)>>{
             [](double x, double y) { return std::array{x * x, x * y}; },
             [](double x, double y) { return std::array{y * y, x + y}; }}) {
      const Vector pu = praw.apply(interpolate(coarse, field));
      const Vector direct = interpolate(fine, field);
      for (size_t i = 0; i < pu.size(); ++i) ok = ok && std::abs(pu[i] - direct[i]) <= 1e-12;
    }
    t.check("prolongation quadratic reproduction 1e-12", ok);
  }

  {  // flux preservation 1e-10 at gamma in {0, 1, 1e4, 1e8}
    const SparseMatrix& p = setup->standard_P[0];
    const SparseMatrix c_bc = setup->ops[1].div_div_bc();
    bool ok = true;
    for (double gamma : {0.0, 1.0, 1e4, 1e8}) {
      const SparseMatrix pt = build_robust_prolongation(p, setup->interior_sets[0],
                                                        setup->ops[1].combined(gamma), c_bc, gamma);
      for (uint64_t trial = 0; trial < 10; ++trial) {
        const Vector uc = oracle::random_free_vector(coarse, 900 + trial);
        const Vector ptu = pt.apply(uc);
        for (int kc = 0; kc < setup->meshes.macro[0].cell_count(); ++kc) {
          const double want = oracle::divergence_integral_coarse(coarse, kc, uc);
          const double got = oracle::divergence_integral_fine(fine, setup->meshes, 1, kc, ptu);
          ok = ok && std::abs(got - want) <= 1e-10 * std::max(std::abs(want), 1e-3);
        }
      }
    }
    t.check("macro-cell flux preservation 1e-10", ok);
  }

  {  // robust prolongation at gamma=0 equals the standard one, 1e-14
    const SparseMatrix& p = setup->standard_P[0];
    const SparseMatrix pt = build_robust_prolongation(
        p, setup->interior_sets[0], setup->ops[1].combined(0.0), setup->ops[1].div_div_bc(), 0.0);
    bool ok = pt.row_ptr == p.row_ptr && pt.col_idx == p.col_idx;
    if (ok)
      for (int k = 0; k < p.nnz(); ++k) ok = ok && std::abs(pt.values[k] - p.values[k]) <= 1e-14;
    t.check("robust(0) == standard 1e-14", ok);
  }

  {  // variational optimality at gamma=1e4
    const SparseMatrix& p = setup->standard_P[0];
    const SparseMatrix pt = build_robust_prolongation(
        p, setup->interior_sets[0], setup->ops[1].combined(1e4), setup->ops[1].div_div_bc(), 1e4);
    bool ok = true;
    for (uint64_t trial = 0; trial < 10; ++trial) {
      const Vector uc = oracle::random_free_vector(coarse, 7000 + trial);
      const double std_norm =
          oracle::mean_free_divergence_norm2(fine, setup->meshes, 1, p.apply(uc));
      const double rob_norm =
          oracle::mean_free_divergence_norm2(fine, setup->meshes, 1, pt.apply(uc));
      ok = ok && rob_norm <= std_norm * (1.0 + 1e-12);
    }
    t.check("variational optimality", ok);
  }

  {  // interior dof count 38 on every coarse macro cell
    bool ok = true;
    for (const auto& dofs : setup->interior_sets[0]) ok = ok && dofs.size() == 38;
    t.check("interior dof count 38", ok);
  }

  {  // interior patch size 62 and max overlap 3 on refinement 1
    const auto& sets = setup->patch_sets[0];
    const int n = 8;  // fine macro mesh is 8x8
    const int center = (n / 2) * (n + 1) + n / 2;
    bool ok = sets[center].size() == 62;
    std::vector<int> count(fine.vector_dofs, 0);
    for (const auto& dofs : sets)
      for (int d : dofs) ++count[d];
    int overlap = 0;
    for (int d : fine.free_dofs) overlap = std::max(overlap, count[d]);
    ok = ok && overlap == 3;
    t.check("patch size 62 / overlap 3", ok);
  }

  record(6, "property suite", t.pass, t.detail.str());
}

}  // namespace

int main(int argc, char** argv) {
  const std::string report_path = argc > 1 ? argv[1] : "acceptance_report.json";

  check_dof_counts();

  // one full default-grid run powers criteria 2-5 and 7
  ExperimentConfig cfg;
  std::printf("running the full default grid (%zu rows)...\n",
              cfg.variants.size() * cfg.refinements.size() * cfg.gammas.size());
  std::fflush(stdout);
  const auto t0 = std::chrono::steady_clock::now();
  const std::vector<ResultRow> rows = run_experiment(cfg);
  const double grid_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();

  std::map<RowKey, ResultRow> by_key;
  for (const ResultRow& row : rows) by_key[{row.variant, row.refinement, row.gamma}] = row;
  check_iteration_study(by_key, cfg.gammas, grid_seconds);

  check_property_suite();

  std::sort(g_criteria.begin(), g_criteria.end(),
            [](const Criterion& a, const Criterion& b) { return a.id < b.id; });
  int failures = 0;
  nlohmann::json report = nlohmann::json::array();
  for (const Criterion& c : g_criteria) {
    if (!c.pass) ++failures;
    report.push_back({{"criterion", c.id}, {"name", c.name}, {"pass", c.pass}, {"detail", c.detail}});
  }
  std::ofstream os(report_path);
  os << report.dump(2) << '\n';

  std::printf("%d/%zu criteria passed\n", static_cast<int>(g_criteria.size()) - failures,
              g_criteria.size());
  return failures;
}
