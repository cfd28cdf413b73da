#include "mcform/linalg.hpp"

#include <algorithm>

namespace mcform {

DenseMatrix DenseMatrix::identity(int n) {
  DenseMatrix m(n, n);
  for (int i = 0; i < n; ++i) m.at(i, i) = Scalar::one();
  return m;
}

DenseMatrix DenseMatrix::operator*(const DenseMatrix& o) const {
  if (cols_ != o.rows_) fail(Errc::invalid_argument, "matrix shape mismatch");
  DenseMatrix r(rows_, o.cols_);
  for (int i = 0; i < rows_; ++i)
    for (int k = 0; k < cols_; ++k) {
      const Scalar& a = at(i, k);
      if (a.is_zero()) continue;
      for (int j = 0; j < o.cols_; ++j) {
        const Scalar& b = o.at(k, j);
        if (!b.is_zero()) r.at(i, j) += a * b;
      }
    }
  return r;
}

DenseMatrix DenseMatrix::operator+(const DenseMatrix& o) const {
  DenseMatrix r(*this);
  for (size_t i = 0; i < data_.size(); ++i) r.data_[i] += o.data_[i];
  return r;
}

DenseMatrix DenseMatrix::operator-(const DenseMatrix& o) const {
  DenseMatrix r(*this);
  for (size_t i = 0; i < data_.size(); ++i) r.data_[i] -= o.data_[i];
  return r;
}

DenseMatrix DenseMatrix::scaled(const Scalar& c) const {
  DenseMatrix r(*this);
  for (auto& v : r.data_) v *= c;
  return r;
}

std::vector<Scalar> DenseMatrix::apply(const std::vector<Scalar>& v) const {
  std::vector<Scalar> r(rows_);
  for (int i = 0; i < rows_; ++i)
    for (int j = 0; j < cols_; ++j)
      if (!at(i, j).is_zero() && !v[j].is_zero()) r[i] += at(i, j) * v[j];
  return r;
}

DenseMatrix DenseMatrix::pow(int e) const {
  DenseMatrix acc = identity(rows_);
  DenseMatrix base = *this;
  while (e > 0) {
    if (e & 1) acc = acc * base;
    base = base * base;
    e >>= 1;
  }
  return acc;
}

DenseMatrix DenseMatrix::transposed() const {
  DenseMatrix r(cols_, rows_);
  for (int i = 0; i < rows_; ++i)
    for (int j = 0; j < cols_; ++j) r.at(j, i) = at(i, j);
  return r;
}

int DenseMatrix::rref(std::vector<int>* pivot_cols) {
  int rank = 0;
  for (int col = 0; col < cols_ && rank < rows_; ++col) {
    int pivot = -1;
    for (int r = rank; r < rows_; ++r)
      if (!at(r, col).is_zero()) { pivot = r; break; }
    if (pivot < 0) continue;
    if (pivot != rank)
      for (int j = 0; j < cols_; ++j) std::swap(at(pivot, j), at(rank, j));
    Scalar inv = at(rank, col).inverse();
    for (int j = col; j < cols_; ++j) at(rank, j) *= inv;
    for (int r = 0; r < rows_; ++r) {
      if (r == rank || at(r, col).is_zero()) continue;
      Scalar f = at(r, col);
      for (int j = col; j < cols_; ++j) at(r, j) -= f * at(rank, j);
    }
    if (pivot_cols) pivot_cols->push_back(col);
    ++rank;
  }
  return rank;
}

int DenseMatrix::rank() const {
  DenseMatrix copy(*this);
  return copy.rref();
}

std::vector<std::vector<Scalar>> DenseMatrix::kernel_basis() const {
  DenseMatrix red(*this);
  std::vector<int> pivots;
  red.rref(&pivots);
  std::vector<bool> is_pivot(cols_, false);
  for (int c : pivots) is_pivot[c] = true;
  std::vector<std::vector<Scalar>> basis;
  for (int free = 0; free < cols_; ++free) {
    if (is_pivot[free]) continue;
    std::vector<Scalar> v(cols_);
    v[free] = Scalar::one();
    for (size_t r = 0; r < pivots.size(); ++r) v[pivots[r]] = -red.at(static_cast<int>(r), free);
    basis.push_back(std::move(v));
  }
  return basis;
}

std::optional<DenseMatrix> DenseMatrix::inverse() const {
  if (rows_ != cols_) return std::nullopt;
  DenseMatrix aug(rows_, 2 * cols_);
  for (int i = 0; i < rows_; ++i) {
    for (int j = 0; j < cols_; ++j) aug.at(i, j) = at(i, j);
    aug.at(i, cols_ + i) = Scalar::one();
  }
  std::vector<int> pivots;
  aug.rref(&pivots);
  int left = 0;
  for (int c : pivots)
    if (c < cols_) ++left;
  if (left != cols_) return std::nullopt;
  DenseMatrix inv(rows_, cols_);
  for (int i = 0; i < rows_; ++i)
    for (int j = 0; j < cols_; ++j) inv.at(i, j) = aug.at(i, cols_ + j);
  return inv;
}

std::optional<std::vector<Scalar>> DenseMatrix::solve(const std::vector<Scalar>& b) const {
  DenseMatrix aug(rows_, cols_ + 1);
  for (int i = 0; i < rows_; ++i) {
    for (int j = 0; j < cols_; ++j) aug.at(i, j) = at(i, j);
    aug.at(i, cols_) = b[i];
  }
  std::vector<int> pivots;
  int rank = aug.rref(&pivots);
  if (!pivots.empty() && pivots.back() == cols_) return std::nullopt;  // 0 = 1 row
  std::vector<Scalar> x(cols_);
  for (int r = 0; r < rank; ++r) x[pivots[r]] = aug.at(r, cols_);
  return x;
}

SparseVec sparse_axpy(const SparseVec& x, const Scalar& a, const SparseVec& y) {
  SparseVec r;
  r.reserve(x.size() + y.size());
  size_t i = 0, j = 0;
  while (i < x.size() && j < y.size()) {
    if (x[i].first < y[j].first) {
      r.push_back(x[i++]);
    } else if (x[i].first > y[j].first) {
      r.emplace_back(y[j].first, a * y[j].second);
      ++j;
    } else {
      Scalar v = x[i].second + a * y[j].second;
      if (!v.is_zero()) r.emplace_back(x[i].first, std::move(v));
      ++i; ++j;
    }
  }
  for (; i < x.size(); ++i) r.push_back(x[i]);
  for (; j < y.size(); ++j) r.emplace_back(y[j].first, a * y[j].second);
  return r;
}

SparseVec SparseEliminator::reduce(SparseVec v) const {
  size_t scan = 0;
  while (scan < v.size()) {
    auto it = rows_.find(v[scan].first);
    if (it == rows_.end()) { ++scan; continue; }
    v = sparse_axpy(v, -v[scan].second, it->second);
    // leading part below scan is untouched; continue from the same offset
  }
  return v;
}

bool SparseEliminator::insert(SparseVec v) {
  v = reduce(std::move(v));
  if (v.empty()) return false;
  Scalar inv = v.front().second.inverse();
  for (auto& [i, c] : v) c *= inv;
  int lead = v.front().first;
  // back-substitute into existing rows so the basis stays fully reduced
  for (auto& [plead, row] : rows_) {
    if (plead == lead) continue;
    auto pos = std::lower_bound(row.begin(), row.end(), lead,
                                [](const auto& p, int k) { return p.first < k; });
    if (pos != row.end() && pos->first == lead) row = sparse_axpy(row, -pos->second, v);
  }
  rows_.emplace(lead, std::move(v));
  return true;
}

bool SparseSolver::add_equation(SparseVec lhs, const Scalar& rhs) {
  Scalar b = rhs;
  size_t scan = 0;
  while (scan < lhs.size()) {
    auto it = rows_.find(lhs[scan].first);
    if (it == rows_.end()) { ++scan; continue; }
    Scalar f = lhs[scan].second;
    lhs = sparse_axpy(lhs, -f, it->second.first);
    b -= f * it->second.second;
  }
  if (lhs.empty()) {
    if (!b.is_zero()) consistent_ = false;
    return consistent_;
  }
  Scalar inv = lhs.front().second.inverse();
  for (auto& [i, c] : lhs) c *= inv;
  b *= inv;
  int lead = lhs.front().first;
  for (auto& [plead, rowrhs] : rows_) {
    auto& [row, rb] = rowrhs;
    auto pos = std::lower_bound(row.begin(), row.end(), lead,
                                [](const auto& p, int k) { return p.first < k; });
    if (pos != row.end() && pos->first == lead) {
      Scalar f = pos->second;
      row = sparse_axpy(row, -f, lhs);
      rb -= f * b;
    }
  }
  rows_.emplace(lead, std::make_pair(std::move(lhs), std::move(b)));
  return true;
}

std::vector<Scalar> SparseSolver::solution() const {
  std::vector<Scalar> x(num_unknowns_);
  if (!consistent_) return x;
  // rows are fully reduced: each row reads x_lead + sum(free terms) = rhs,
  // so with free unknowns zero, x_lead = rhs.
  for (const auto& [lead, rowrhs] : rows_) x[lead] = rowrhs.second;
  return x;
}

std::vector<std::vector<Scalar>> SparseSolver::kernel_basis() const {
  std::vector<std::vector<Scalar>> basis;
  std::vector<bool> is_pivot(num_unknowns_, false);
  for (const auto& [lead, _] : rows_) is_pivot[lead] = true;
  for (int free = 0; free < num_unknowns_; ++free) {
    if (is_pivot[free]) continue;
    std::vector<Scalar> v(num_unknowns_);
    v[free] = Scalar::one();
    for (const auto& [lead, rowrhs] : rows_) {
      const auto& row = rowrhs.first;
      auto pos = std::lower_bound(row.begin(), row.end(), free,
                                  [](const auto& p, int k) { return p.first < k; });
      if (pos != row.end() && pos->first == free) v[lead] = -pos->second;
    }
    basis.push_back(std::move(v));
  }
  return basis;
}

}  // namespace mcform
