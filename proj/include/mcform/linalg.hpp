#ifndef MCFORM_LINALG_HPP
#define MCFORM_LINALG_HPP

#include <map>
#include <optional>
#include <utility>
#include <vector>

#include "mcform/scalar.hpp"

namespace mcform {

/// Dense exact matrix over the working field.  Small: used for structure
/// constants, minimal polynomials and linear coordinate changes, never for
/// the big Koszul systems.
class DenseMatrix {
 public:
  DenseMatrix(int rows, int cols) : rows_(rows), cols_(cols), data_(rows * cols) {}
  static DenseMatrix identity(int n);

  int rows() const { return rows_; }
  int cols() const { return cols_; }
  Scalar& at(int r, int c) { return data_[r * cols_ + c]; }
  const Scalar& at(int r, int c) const { return data_[r * cols_ + c]; }

  DenseMatrix operator*(const DenseMatrix& o) const;
  DenseMatrix operator+(const DenseMatrix& o) const;
  DenseMatrix operator-(const DenseMatrix& o) const;
  DenseMatrix scaled(const Scalar& c) const;
  std::vector<Scalar> apply(const std::vector<Scalar>& v) const;
  DenseMatrix pow(int e) const;
  DenseMatrix transposed() const;

  bool operator==(const DenseMatrix& o) const {
    return rows_ == o.rows_ && cols_ == o.cols_ && data_ == o.data_;
  }

  /// In-place reduced row echelon form with deterministic pivoting (first
  /// nonzero row in column order).  Returns the rank; pivot columns out.
  int rref(std::vector<int>* pivot_cols = nullptr);
  int rank() const;
  /// Basis of the right kernel, free variables set one at a time.
  std::vector<std::vector<Scalar>> kernel_basis() const;
  std::optional<DenseMatrix> inverse() const;
  /// One solution of Ax = b with free variables zero, or nullopt.
  std::optional<std::vector<Scalar>> solve(const std::vector<Scalar>& b) const;

 private:
  int rows_, cols_;
  std::vector<Scalar> data_;
};

/// Sparse vector: strictly increasing row indices.
using SparseVec = std::vector<std::pair<int, Scalar>>;

SparseVec sparse_axpy(const SparseVec& x, const Scalar& a, const SparseVec& y);

/// Incremental exact Gaussian elimination over sparse vectors.  Rows are
/// kept fully reduced against each other with unit leading coefficients and
/// the leading index is the smallest, so results are independent of
/// insertion batching.  This is the engine behind every rank and
/// solvability computation on the Koszul complexes.
class SparseEliminator {
 public:
  /// Reduces v against the current basis; if a nonzero remainder survives it
  /// joins the basis.  Returns true when the rank grew.
  bool insert(SparseVec v);
  /// Reduction without insertion.
  SparseVec reduce(SparseVec v) const;
  int rank() const { return static_cast<int>(rows_.size()); }
  const std::map<int, SparseVec>& rows() const { return rows_; }

 private:
  std::map<int, SparseVec> rows_;  // leading index -> unit-leading row
};

/// Exact sparse linear system solver: equations are inserted one at a time
/// as (coefficients over unknown indices, right-hand side).  Maintains an
/// RREF over the augmented rows.  Deterministic: pivot on the smallest
/// unknown index.
class SparseSolver {
 public:
  explicit SparseSolver(int num_unknowns) : num_unknowns_(num_unknowns) {}

  /// Returns false when the equation is inconsistent with those before it.
  bool add_equation(SparseVec lhs, const Scalar& rhs);
  bool consistent() const { return consistent_; }
  /// Particular solution with all free unknowns zero (dense, size n).
  std::vector<Scalar> solution() const;
  /// Basis of the homogeneous kernel.
  std::vector<std::vector<Scalar>> kernel_basis() const;
  int rank() const { return static_cast<int>(rows_.size()); }
  int num_unknowns() const { return num_unknowns_; }

 private:
  int num_unknowns_;
  bool consistent_ = true;
  // leading unknown -> (row, rhs); rows mutually reduced, unit leading
  std::map<int, std::pair<SparseVec, Scalar>> rows_;
};

}  // namespace mcform

#endif
