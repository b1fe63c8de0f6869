/// @file linalg.hpp
/// @brief Minimal dense/sparse linear algebra: CSR matrices, triplet
/// assembly, and a pivoted LDL^T factorization for small dense blocks.

#pragma once

#include <string>
#include <vector>

namespace svmg {

using Vector = std::vector<double>;

double dot(const Vector& x, const Vector& y);
double norm2(const Vector& x);
/// y += a*x
void axpy(double a, const Vector& x, Vector& y);

struct Triplet {
  int row;
  int col;
  double value;
};

/// Compressed sparse row matrix. Column indices are strictly increasing
/// within each row and carry no duplicates.
struct SparseMatrix {
  int nrows = 0;
  int ncols = 0;
  std::vector<int> row_ptr;  // size nrows+1
  std::vector<int> col_idx;
  std::vector<double> values;

  int nnz() const { return static_cast<int>(values.size()); }

  /// y = A*x
  void apply(const Vector& x, Vector& y) const;
  Vector apply(const Vector& x) const;

  /// y = A^T*x
  void apply_transpose(const Vector& x, Vector& y) const;
  Vector apply_transpose(const Vector& x) const;

  /// Value at (i,j), zero if not stored.
  double coeff(int i, int j) const;
};

/// Build CSR from triplets; duplicate entries are summed. The result is
/// bit-identical for any permutation of the input list.
SparseMatrix assemble_csr(std::vector<Triplet> triplets, int nrows, int ncols);

/// Square dense matrix, row-major.
struct DenseMatrix {
  int n = 0;
  std::vector<double> a;

  DenseMatrix() = default;
  explicit DenseMatrix(int size) : n(size), a(static_cast<size_t>(size) * size, 0.0) {}

  double& operator()(int i, int j) { return a[static_cast<size_t>(i) * n + j]; }
  double operator()(int i, int j) const { return a[static_cast<size_t>(i) * n + j]; }

  Vector apply(const Vector& x) const;
};

/// LDL^T with symmetric diagonal pivoting. Factorizes symmetric matrices;
/// a pivot below 1e-14 * max|A| aborts with the block label in the message.
struct DenseFactorization {
  int n = 0;
  std::vector<double> ld;   // unit lower triangle of L, D on the diagonal
  std::vector<int> perm;    // row/col permutation applied during pivoting

  Vector solve(const Vector& b) const;
  void solve_inplace(double* b, double* work) const;
};

DenseFactorization dense_factorize(DenseMatrix A, const std::string& label = "");

}  // namespace svmg
