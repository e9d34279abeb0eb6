#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <vector>

#include "bibasis/rational.hpp"

namespace bibasis {

// Dense matrix over Q. Row-major. Everything here is exact; pivoting is
// deterministic (first nonzero in column order) so results are reproducible.
class MatQ {
 public:
  MatQ() : rows_(0), cols_(0) {}
  MatQ(std::size_t rows, std::size_t cols)
      : rows_(rows), cols_(cols), data_(rows * cols, Rat(0)) {}

  static MatQ identity(std::size_t n) {
    MatQ m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
    return m;
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  Rat& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const Rat& operator()(std::size_t i, std::size_t j) const {
    return data_[i * cols_ + j];
  }

  bool operator==(const MatQ& o) const {
    return rows_ == o.rows_ && cols_ == o.cols_ && data_ == o.data_;
  }

  MatQ operator*(const MatQ& o) const {
    if (cols_ != o.rows_) throw std::invalid_argument("MatQ: shape mismatch");
    MatQ r(rows_, o.cols_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t k = 0; k < cols_; ++k) {
        const Rat& a = (*this)(i, k);
        if (a == 0) continue;
        for (std::size_t j = 0; j < o.cols_; ++j) {
          const Rat& b = o(k, j);
          if (b != 0) r(i, j) += a * b;
        }
      }
    return r;
  }

  MatQ operator+(const MatQ& o) const {
    if (rows_ != o.rows_ || cols_ != o.cols_)
      throw std::invalid_argument("MatQ: shape mismatch");
    MatQ r = *this;
    for (std::size_t i = 0; i < data_.size(); ++i) r.data_[i] += o.data_[i];
    return r;
  }

  MatQ operator-(const MatQ& o) const {
    if (rows_ != o.rows_ || cols_ != o.cols_)
      throw std::invalid_argument("MatQ: shape mismatch");
    MatQ r = *this;
    for (std::size_t i = 0; i < data_.size(); ++i) r.data_[i] -= o.data_[i];
    return r;
  }

  MatQ scaled(const Rat& c) const {
    MatQ r = *this;
    for (auto& x : r.data_) x *= c;
    return r;
  }

  MatQ transpose() const {
    MatQ r(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) r(j, i) = (*this)(i, j);
    return r;
  }

  std::vector<Rat> apply(const std::vector<Rat>& v) const {
    if (v.size() != cols_) throw std::invalid_argument("MatQ: shape mismatch");
    std::vector<Rat> r(rows_, Rat(0));
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j)
        if ((*this)(i, j) != 0) r[i] += (*this)(i, j) * v[j];
    return r;
  }

  bool is_zero() const {
    for (const auto& x : data_)
      if (x != 0) return false;
    return true;
  }

  // In-place reduced row echelon form; returns pivot column indices.
  std::vector<std::size_t> rref() {
    std::vector<std::size_t> pivots;
    std::size_t row = 0;
    for (std::size_t col = 0; col < cols_ && row < rows_; ++col) {
      std::size_t sel = row;
      while (sel < rows_ && (*this)(sel, col) == 0) ++sel;
      if (sel == rows_) continue;
      if (sel != row)
        for (std::size_t j = 0; j < cols_; ++j)
          std::swap((*this)(sel, j), (*this)(row, j));
      Rat inv = Rat(1) / (*this)(row, col);
      for (std::size_t j = col; j < cols_; ++j) (*this)(row, j) *= inv;
      for (std::size_t i = 0; i < rows_; ++i) {
        if (i == row) continue;
        const Rat f = (*this)(i, col);
        if (f == 0) continue;
        for (std::size_t j = col; j < cols_; ++j)
          (*this)(i, j) -= f * (*this)(row, j);
      }
      pivots.push_back(col);
      ++row;
    }
    return pivots;
  }

  std::size_t rank() const {
    MatQ tmp = *this;
    return tmp.rref().size();
  }

  // Basis of the right kernel, one column vector per free variable,
  // in increasing free-column order.
  std::vector<std::vector<Rat>> kernel_basis() const {
    MatQ tmp = *this;
    auto pivots = tmp.rref();
    std::vector<bool> is_pivot(cols_, false);
    for (auto p : pivots) is_pivot[p] = true;
    std::vector<std::vector<Rat>> basis;
    for (std::size_t free = 0; free < cols_; ++free) {
      if (is_pivot[free]) continue;
      std::vector<Rat> v(cols_, Rat(0));
      v[free] = 1;
      for (std::size_t r = 0; r < pivots.size(); ++r)
        v[pivots[r]] = -tmp(r, free);
      basis.push_back(std::move(v));
    }
    return basis;
  }

  // Solve A x = b; nullopt if inconsistent. Free variables are set to zero.
  std::optional<std::vector<Rat>> solve(const std::vector<Rat>& b) const {
    if (b.size() != rows_) throw std::invalid_argument("MatQ: shape mismatch");
    MatQ aug(rows_, cols_ + 1);
    for (std::size_t i = 0; i < rows_; ++i) {
      for (std::size_t j = 0; j < cols_; ++j) aug(i, j) = (*this)(i, j);
      aug(i, cols_) = b[i];
    }
    auto pivots = aug.rref();
    if (!pivots.empty() && pivots.back() == cols_) return std::nullopt;
    std::vector<Rat> x(cols_, Rat(0));
    for (std::size_t r = 0; r < pivots.size(); ++r) x[pivots[r]] = aug(r, cols_);
    return x;
  }

  std::optional<MatQ> inverse() const {
    if (rows_ != cols_) return std::nullopt;
    MatQ aug(rows_, 2 * cols_);
    for (std::size_t i = 0; i < rows_; ++i) {
      for (std::size_t j = 0; j < cols_; ++j) aug(i, j) = (*this)(i, j);
      aug(i, cols_ + i) = 1;
    }
    auto pivots = aug.rref();
    if (pivots.size() != rows_ || pivots.back() != rows_ - 1) return std::nullopt;
    MatQ inv(rows_, cols_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) inv(i, j) = aug(i, cols_ + j);
    return inv;
  }

 private:
  std::size_t rows_, cols_;
  std::vector<Rat> data_;
};

// Rank of the span of a set of row vectors.
inline std::size_t span_rank(const std::vector<std::vector<Rat>>& vecs) {
  if (vecs.empty()) return 0;
  MatQ m(vecs.size(), vecs[0].size());
  for (std::size_t i = 0; i < vecs.size(); ++i)
    for (std::size_t j = 0; j < vecs[i].size(); ++j) m(i, j) = vecs[i][j];
  return m.rank();
}

}  // namespace bibasis
