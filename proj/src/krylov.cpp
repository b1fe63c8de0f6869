#include "krylov.hpp"

#include <chrono>
#include <stdexcept>

namespace svmg {

SolveReport pcg(const LinearOperator& apply_A, const LinearOperator& apply_M, const Vector& b,
                Vector& x, double rtol, int maxit) {
  const auto t0 = std::chrono::steady_clock::now();
  SolveReport report;
  const size_t n = b.size();
  if (x.size() != n) x.assign(n, 0.0);

  Vector r(n), z(n), p(n), ap(n);
  apply_A(x, ap);
  for (size_t i = 0; i < n; ++i) r[i] = b[i] - ap[i];

  const double r0 = norm2(r);
  report.residual_history.push_back(r0);
  if (r0 == 0.0) {
    report.converged = true;
    report.final_rel_residual = 0.0;
    report.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return report;
  }
  const double target = rtol * r0;

  apply_M(r, z);
  double rz = dot(r, z);
  if (rz <= 0.0) throw IndefinitePreconditioner(0);
  p = z;

  double rnorm = r0;
  while (report.iterations < maxit && rnorm > target) {
    apply_A(p, ap);
    const double pap = dot(p, ap);
    if (pap <= 0.0)
      throw std::runtime_error("pcg: operator not positive definite at iteration " +
                               std::to_string(report.iterations));
    const double alpha = rz / pap;
    for (size_t i = 0; i < n; ++i) {
      x[i] += alpha * p[i];
      r[i] -= alpha * ap[i];
    }
    ++report.iterations;
    rnorm = norm2(r);
    report.residual_history.push_back(rnorm);
    if (rnorm <= target) break;

    apply_M(r, z);
    const double rz_new = dot(r, z);
    if (rz_new <= 0.0) throw IndefinitePreconditioner(report.iterations);
    const double beta = rz_new / rz;
    rz = rz_new;
    for (size_t i = 0; i < n; ++i) p[i] = z[i] + beta * p[i];
  }

  report.converged = rnorm <= target;
  report.final_rel_residual = rnorm / r0;
  report.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return report;
}

}  // namespace svmg
