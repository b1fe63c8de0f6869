#include "experiment.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <map>
#include <mutex>
#include <ostream>
#include <stdexcept>
#include <thread>

#include "json.hpp"
#include "krylov.hpp"

namespace svmg {

const char* variant_name(const Variant& v) {
  if (v.relax == RelaxKind::MacroStarASM)
    return v.transfer == TransferKind::Robust ? "robust-robust" : "robust-standard";
  return v.transfer == TransferKind::Robust ? "jacobi-robust" : "jacobi-standard";
}

Variant parse_variant(const std::string& name) {
  if (name == "robust-robust") return {RelaxKind::MacroStarASM, TransferKind::Robust};
  if (name == "robust-standard") return {RelaxKind::MacroStarASM, TransferKind::Standard};
  if (name == "jacobi-robust") return {RelaxKind::Jacobi, TransferKind::Robust};
  if (name == "jacobi-standard") return {RelaxKind::Jacobi, TransferKind::Standard};
  throw std::invalid_argument("unknown variant '" + name + "'");
}

void ExperimentConfig::validate() const {
  if (coarse_n < 1) throw std::invalid_argument("coarse_n must be >= 1");
  if (refinements.empty()) throw std::invalid_argument("refinement list is empty");
  for (int r : refinements)
    if (r < 1) throw std::invalid_argument("refinements must be >= 1");
  if (gammas.empty()) throw std::invalid_argument("gamma list is empty");
  for (double g : gammas)
    if (!(g >= 0.0)) throw std::invalid_argument("gammas must be >= 0");
  if (variants.empty()) throw std::invalid_argument("variant list is empty");
  if (!(rtol > 0.0)) throw std::invalid_argument("rtol must be > 0");
  if (maxit < 1) throw std::invalid_argument("maxit must be >= 1");
}

ResultRow solve_row(const ProblemSetup& setup, const Variant& variant, double gamma, double rtol,
                    int maxit, uint64_t seed) {
  const auto t0 = std::chrono::steady_clock::now();
  MGOptions opts;
  opts.seed = seed;
  MGSolver solver(setup, variant.relax, variant.transfer, gamma, opts);

  Vector x(setup.fine_space().vector_dofs, 0.0);
  ResultRow row;
  try {
    SolveReport report = pcg([&](const Vector& v, Vector& y) { solver.apply_fine(v, y); },
                             [&](const Vector& r, Vector& z) { solver.precondition(r, z); },
                             setup.traction, x, rtol, maxit);
    row.iterations = report.iterations;
    row.converged = report.converged;
  } catch (const IndefinitePreconditioner&) {
    // the non-robust variants genuinely lose definiteness at high gamma;
    // for the study that is a failure to converge, not an error
    row.iterations = maxit;
    row.converged = false;
  }
  row.variant = variant_name(variant);
  row.refinement = setup.refinement;
  row.dofs = setup.fine_space().vector_dofs;
  row.gamma = gamma;
  row.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return row;
}

std::vector<ResultRow> run_experiment(const ExperimentConfig& config, const RowCallback& on_row) {
  config.validate();

  std::map<int, std::unique_ptr<ProblemSetup>> setups;
  for (int r : config.refinements)
    if (!setups.count(r)) setups[r] = build_problem(config.coarse_n, r);

  struct Task {
    const Variant* variant;
    int refinement;
    double gamma;
  };
  std::vector<Task> tasks;
  for (const Variant& v : config.variants)
    for (int r : config.refinements)
      for (double g : config.gammas) tasks.push_back({&v, r, g});

  std::vector<ResultRow> rows(tasks.size());
  if (!config.parallel) {
    for (size_t t = 0; t < tasks.size(); ++t) {
      rows[t] = solve_row(*setups.at(tasks[t].refinement), *tasks[t].variant, tasks[t].gamma,
                          config.rtol, config.maxit, config.seed);
      if (on_row) on_row(rows[t]);
    }
    return rows;
  }

  std::mutex mutex;
  size_t next = 0;
  auto worker = [&] {
    for (;;) {
      size_t t;
      {
        std::lock_guard<std::mutex> lock(mutex);
        if (next == tasks.size()) return;
        t = next++;
      }
      ResultRow row = solve_row(*setups.at(tasks[t].refinement), *tasks[t].variant, tasks[t].gamma,
                                config.rtol, config.maxit, config.seed);
      {
        std::lock_guard<std::mutex> lock(mutex);
        rows[t] = std::move(row);
        if (on_row) on_row(rows[t]);
      }
    }
  };
  const unsigned n_threads =
      std::min<unsigned>(std::max(1u, std::thread::hardware_concurrency()), tasks.size());
  std::vector<std::thread> pool;
  for (unsigned i = 0; i < n_threads; ++i) pool.emplace_back(worker);
  for (auto& th : pool) th.join();
  return rows;
}

std::string format_double(double x) {
  char buf[40];
  if (x == static_cast<int64_t>(x) && std::abs(x) < 1e15) {
    std::snprintf(buf, sizeof(buf), "%lld", static_cast<long long>(x));
    return buf;
  }
  for (int prec = 1; prec <= 17; ++prec) {
    std::snprintf(buf, sizeof(buf), "%.*g", prec, x);
    if (std::strtod(buf, nullptr) == x) break;
  }
  return buf;
}

namespace {

std::string iterations_field(const ResultRow& row, int maxit) {
  if (!row.converged && row.iterations >= maxit) return ">" + std::to_string(maxit);
  return std::to_string(row.iterations);
}

}  // namespace

void emit_csv(const std::vector<ResultRow>& rows, int maxit, std::ostream& os) {
  os << "variant,refinement,dofs,gamma,iterations,converged,seconds\n";
  for (const ResultRow& row : rows) {
    os << row.variant << ',' << row.refinement << ',' << row.dofs << ',' << format_double(row.gamma)
       << ',' << iterations_field(row, maxit) << ',' << (row.converged ? "true" : "false") << ','
       << format_double(row.seconds) << '\n';
  }
}

void emit_json(const std::vector<ResultRow>& rows, int maxit, std::ostream& os) {
  nlohmann::json out = nlohmann::json::array();
  for (const ResultRow& row : rows) {
    nlohmann::json j;
    j["variant"] = row.variant;
    j["refinement"] = row.refinement;
    j["dofs"] = row.dofs;
    j["gamma"] = row.gamma;
    if (!row.converged && row.iterations >= maxit)
      j["iterations"] = ">" + std::to_string(maxit);
    else
      j["iterations"] = row.iterations;
    j["converged"] = row.converged;
    j["seconds"] = row.seconds;
    out.push_back(std::move(j));
  }
  os << out.dump(2) << '\n';
}

void emit_rows(const std::vector<ResultRow>& rows, int maxit, const std::string& format,
               const std::string& path) {
  if (format != "csv" && format != "json")
    throw std::invalid_argument("unknown output format '" + format + "'");
  std::ofstream os(path);
  if (!os) throw std::runtime_error("cannot write output file '" + path + "'");
  if (format == "csv")
    emit_csv(rows, maxit, os);
  else
    emit_json(rows, maxit, os);
  os.flush();
  if (!os) throw std::runtime_error("write failed for '" + path + "'");
}

}  // namespace svmg
