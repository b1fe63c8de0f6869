#include "linalg.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace svmg {

double dot(const Vector& x, const Vector& y) {
  if (x.size() != y.size())
    throw std::invalid_argument("dot: length mismatch " + std::to_string(x.size()) + " vs " +
                                std::to_string(y.size()));
  double s = 0.0;
  for (size_t i = 0; i < x.size(); ++i) s += x[i] * y[i];
  return s;
}

double norm2(const Vector& x) { return std::sqrt(dot(x, x)); }

void axpy(double a, const Vector& x, Vector& y) {
  if (x.size() != y.size())
    throw std::invalid_argument("axpy: length mismatch " + std::to_string(x.size()) + " vs " +
                                std::to_string(y.size()));
  for (size_t i = 0; i < x.size(); ++i) y[i] += a * x[i];
}

void SparseMatrix::apply(const Vector& x, Vector& y) const {
  if (static_cast<int>(x.size()) != ncols)
    throw std::invalid_argument("spmv: matrix has " + std::to_string(ncols) + " cols, vector has " +
                                std::to_string(x.size()) + " entries");
  y.assign(nrows, 0.0);
  for (int i = 0; i < nrows; ++i) {
    double s = 0.0;
    for (int k = row_ptr[i]; k < row_ptr[i + 1]; ++k) s += values[k] * x[col_idx[k]];
    y[i] = s;
  }
}

Vector SparseMatrix::apply(const Vector& x) const {
  Vector y;
  apply(x, y);
  return y;
}

void SparseMatrix::apply_transpose(const Vector& x, Vector& y) const {
  if (static_cast<int>(x.size()) != nrows)
    throw std::invalid_argument("spmv_transpose: matrix has " + std::to_string(nrows) +
                                " rows, vector has " + std::to_string(x.size()) + " entries");
  y.assign(ncols, 0.0);
  for (int i = 0; i < nrows; ++i) {
    const double xi = x[i];
    if (xi == 0.0) continue;
    for (int k = row_ptr[i]; k < row_ptr[i + 1]; ++k) y[col_idx[k]] += values[k] * xi;
  }
}

Vector SparseMatrix::apply_transpose(const Vector& x) const {
  Vector y;
  apply_transpose(x, y);
  return y;
}

double SparseMatrix::coeff(int i, int j) const {
  const int lo = row_ptr[i], hi = row_ptr[i + 1];
  auto it = std::lower_bound(col_idx.begin() + lo, col_idx.begin() + hi, j);
  if (it != col_idx.begin() + hi && *it == j) return values[it - col_idx.begin()];
  return 0.0;
}

SparseMatrix assemble_csr(std::vector<Triplet> triplets, int nrows, int ncols) {
  for (const Triplet& t : triplets) {
    if (t.row < 0 || t.row >= nrows || t.col < 0 || t.col >= ncols)
      throw std::out_of_range("assemble_csr: index (" + std::to_string(t.row) + "," +
                              std::to_string(t.col) + ") outside " + std::to_string(nrows) + "x" +
                              std::to_string(ncols));
  }
  // Sorting by (row, col, value) fixes the summation order of duplicates,
  // so permuted triplet lists produce bit-identical matrices.
  std::sort(triplets.begin(), triplets.end(), [](const Triplet& a, const Triplet& b) {
    if (a.row != b.row) return a.row < b.row;
    if (a.col != b.col) return a.col < b.col;
    return a.value < b.value;
  });

  SparseMatrix m;
  m.nrows = nrows;
  m.ncols = ncols;
  m.row_ptr.assign(nrows + 1, 0);
  m.col_idx.reserve(triplets.size());
  m.values.reserve(triplets.size());

  size_t i = 0;
  for (int row = 0; row < nrows; ++row) {
    while (i < triplets.size() && triplets[i].row == row) {
      const int col = triplets[i].col;
      double v = 0.0;
      while (i < triplets.size() && triplets[i].row == row && triplets[i].col == col) {
        v += triplets[i].value;
        ++i;
      }
      m.col_idx.push_back(col);
      m.values.push_back(v);
    }
    m.row_ptr[row + 1] = static_cast<int>(m.values.size());
  }
  return m;
}

Vector DenseMatrix::apply(const Vector& x) const {
  Vector y(n, 0.0);
  for (int i = 0; i < n; ++i) {
    double s = 0.0;
    for (int j = 0; j < n; ++j) s += (*this)(i, j) * x[j];
    y[i] = s;
  }
  return y;
}

DenseFactorization dense_factorize(DenseMatrix A, const std::string& label) {
  const int n = A.n;
  DenseFactorization f;
  f.n = n;
  f.perm.resize(n);
  for (int i = 0; i < n; ++i) f.perm[i] = i;

  double amax = 0.0;
  for (double v : A.a) amax = std::max(amax, std::abs(v));
  const double pivot_tol = 1e-14 * amax;

  for (int k = 0; k < n; ++k) {
    // symmetric pivoting: bring the largest remaining diagonal entry to (k,k)
    int p = k;
    for (int j = k + 1; j < n; ++j)
      if (std::abs(A(j, j)) > std::abs(A(p, p))) p = j;
    if (p != k) {
      for (int j = 0; j < n; ++j) std::swap(A(k, j), A(p, j));
      for (int i = 0; i < n; ++i) std::swap(A(i, k), A(i, p));
      std::swap(f.perm[k], f.perm[p]);
    }
    const double d = A(k, k);
    if (std::abs(d) <= pivot_tol)
      throw std::runtime_error("dense_factorize: singular block" +
                               (label.empty() ? std::string() : " [" + label + "]") +
                               ", pivot " + std::to_string(d) + " at step " + std::to_string(k));
    // store L in column k, keep the working array fully symmetric so that
    // later pivot swaps of whole rows/columns stay coherent
    for (int i = k + 1; i < n; ++i) {
      A(i, k) /= d;
      A(k, i) = A(i, k);
    }
    for (int i = k + 1; i < n; ++i) {
      const double lik_d = A(i, k) * d;
      for (int j = k + 1; j <= i; ++j) {
        A(i, j) -= lik_d * A(j, k);
        A(j, i) = A(i, j);
      }
    }
  }
  f.ld = std::move(A.a);
  return f;
}

void DenseFactorization::solve_inplace(double* b, double* work) const {
  // A = P^T L D L^T P
  for (int i = 0; i < n; ++i) work[i] = b[perm[i]];
  for (int i = 0; i < n; ++i) {
    double s = work[i];
    for (int j = 0; j < i; ++j) s -= ld[static_cast<size_t>(i) * n + j] * work[j];
    work[i] = s;
  }
  for (int i = 0; i < n; ++i) work[i] /= ld[static_cast<size_t>(i) * n + i];
  for (int i = n - 1; i >= 0; --i) {
    double s = work[i];
    for (int j = i + 1; j < n; ++j) s -= ld[static_cast<size_t>(j) * n + i] * work[j];
    work[i] = s;
  }
  for (int i = 0; i < n; ++i) b[perm[i]] = work[i];
}

Vector DenseFactorization::solve(const Vector& b) const {
  if (static_cast<int>(b.size()) != n)
    throw std::invalid_argument("dense solve: size mismatch " + std::to_string(b.size()) + " vs " +
                                std::to_string(n));
  Vector x = b;
  Vector work(n);
  solve_inplace(x.data(), work.data());
  return x;
}

}  // namespace svmg
