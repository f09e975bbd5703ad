#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "cohom/error.hpp"

namespace cohom {

/// Dense row-major matrix over an exact field T.
///
/// T must provide field arithmetic and exact comparison with zero
/// (mpq_class, or any user-defined finite field type).
template <class T>
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols, T(0)) {}

  static Matrix identity(std::size_t n) {
    Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = T(1);
    return m;
  }

  static Matrix from_rows(const std::vector<std::vector<T>>& rows, std::size_t cols) {
    Matrix m(rows.size(), cols);
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (rows[i].size() != cols) throw Error(ErrorKind::MalformedInput, "ragged matrix rows");
      for (std::size_t j = 0; j < cols; ++j) m(i, j) = rows[i][j];
    }
    return m;
  }

  static Matrix from_columns(const std::vector<std::vector<T>>& columns, std::size_t rows) {
    Matrix m(rows, columns.size());
    for (std::size_t j = 0; j < columns.size(); ++j) {
      if (columns[j].size() != rows) throw Error(ErrorKind::MalformedInput, "ragged matrix columns");
      for (std::size_t i = 0; i < rows; ++i) m(i, j) = columns[j][i];
    }
    return m;
  }

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }

  T& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const T& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  std::span<const T> row(std::size_t i) const { return {data_.data() + i * cols_, cols_}; }

  std::vector<T> column(std::size_t j) const {
    std::vector<T> c(rows_);
    for (std::size_t i = 0; i < rows_; ++i) c[i] = (*this)(i, j);
    return c;
  }

  bool is_zero() const {
    for (const auto& x : data_)
      if (x != 0) return false;
    return true;
  }

  Matrix transpose() const {
    Matrix t(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
    return t;
  }

  /// Copies `block` into this matrix with its top-left corner at (r0, c0).
  void set_block(std::size_t r0, std::size_t c0, const Matrix& block) {
    for (std::size_t i = 0; i < block.rows(); ++i)
      for (std::size_t j = 0; j < block.cols(); ++j) (*this)(r0 + i, c0 + j) = block(i, j);
  }

  Matrix block(std::size_t r0, std::size_t c0, std::size_t nr, std::size_t nc) const {
    Matrix b(nr, nc);
    for (std::size_t i = 0; i < nr; ++i)
      for (std::size_t j = 0; j < nc; ++j) b(i, j) = (*this)(r0 + i, c0 + j);
    return b;
  }

  Matrix select_columns(std::span<const std::size_t> idx) const {
    Matrix s(rows_, idx.size());
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < idx.size(); ++j) s(i, j) = (*this)(i, idx[j]);
    return s;
  }

  Matrix select_rows(std::span<const std::size_t> idx) const {
    Matrix s(idx.size(), cols_);
    for (std::size_t i = 0; i < idx.size(); ++i)
      for (std::size_t j = 0; j < cols_; ++j) s(i, j) = (*this)(idx[i], j);
    return s;
  }

  friend Matrix operator*(const Matrix& a, const Matrix& b) {
    if (a.cols_ != b.rows_) throw Error(ErrorKind::InvariantViolation, "matrix product shape mismatch");
    Matrix c(a.rows_, b.cols_);
    T t;
    for (std::size_t i = 0; i < a.rows_; ++i)
      for (std::size_t k = 0; k < a.cols_; ++k) {
        const T& aik = a(i, k);
        if (aik == 0) continue;
        for (std::size_t j = 0; j < b.cols_; ++j) {
          if (b(k, j) == 0) continue;
          t = aik * b(k, j);
          c(i, j) += t;
        }
      }
    return c;
  }

  friend std::vector<T> operator*(const Matrix& a, const std::vector<T>& v) {
    if (a.cols_ != v.size()) throw Error(ErrorKind::InvariantViolation, "matrix-vector shape mismatch");
    std::vector<T> out(a.rows_, T(0));
    for (std::size_t i = 0; i < a.rows_; ++i)
      for (std::size_t j = 0; j < a.cols_; ++j)
        if (a(i, j) != 0 && v[j] != 0) out[i] += a(i, j) * v[j];
    return out;
  }

  friend Matrix operator+(Matrix a, const Matrix& b) {
    if (a.rows_ != b.rows_ || a.cols_ != b.cols_)
      throw Error(ErrorKind::InvariantViolation, "matrix sum shape mismatch");
    for (std::size_t i = 0; i < a.data_.size(); ++i) a.data_[i] += b.data_[i];
    return a;
  }

  friend Matrix operator-(Matrix a, const Matrix& b) {
    if (a.rows_ != b.rows_ || a.cols_ != b.cols_)
      throw Error(ErrorKind::InvariantViolation, "matrix difference shape mismatch");
    for (std::size_t i = 0; i < a.data_.size(); ++i) a.data_[i] -= b.data_[i];
    return a;
  }

  friend Matrix operator*(const T& s, Matrix a) {
    for (auto& x : a.data_) x *= s;
    return a;
  }

  friend bool operator==(const Matrix& a, const Matrix& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
  }

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<T> data_;
};

/// [a | b]
template <class T>
Matrix<T> hstack(const Matrix<T>& a, const Matrix<T>& b) {
  if (a.rows() != b.rows()) throw Error(ErrorKind::InvariantViolation, "hstack row mismatch");
  Matrix<T> m(a.rows(), a.cols() + b.cols());
  m.set_block(0, 0, a);
  m.set_block(0, a.cols(), b);
  return m;
}

/// Block diagonal diag(a, b).
template <class T>
Matrix<T> block_diagonal(const Matrix<T>& a, const Matrix<T>& b) {
  Matrix<T> m(a.rows() + b.rows(), a.cols() + b.cols());
  m.set_block(0, 0, a);
  m.set_block(a.rows(), a.cols(), b);
  return m;
}

template <class T>
struct Echelon {
  Matrix<T> reduced;                 // reduced row echelon form
  std::vector<std::size_t> pivots;   // pivot column of each nonzero row
};

/// Gauss-Jordan elimination. The pivot of each step is the first nonzero
/// entry (smallest row index) in the leftmost remaining column, so the
/// result is a deterministic function of the input.
template <class T>
Echelon<T> row_reduce(Matrix<T> m) {
  Echelon<T> out;
  std::size_t r = 0;
  T factor;
  T prod;
  for (std::size_t c = 0; c < m.cols() && r < m.rows(); ++c) {
    std::size_t p = r;
    while (p < m.rows() && m(p, c) == 0) ++p;
    if (p == m.rows()) continue;
    if (p != r)
      for (std::size_t j = c; j < m.cols(); ++j) std::swap(m(p, j), m(r, j));
    T inv = T(1) / m(r, c);
    for (std::size_t j = c; j < m.cols(); ++j) m(r, j) *= inv;
    for (std::size_t i = 0; i < m.rows(); ++i) {
      if (i == r || m(i, c) == 0) continue;
      factor = m(i, c);
      for (std::size_t j = c; j < m.cols(); ++j) {
        if (m(r, j) == 0) continue;
        prod = factor * m(r, j);
        m(i, j) -= prod;
      }
    }
    out.pivots.push_back(c);
    ++r;
  }
  out.reduced = std::move(m);
  return out;
}

template <class T>
std::size_t matrix_rank(const Matrix<T>& m) {
  return row_reduce(m).pivots.size();
}

/// Columns form a basis of the null space; one column per free variable,
/// in increasing order of the free column.
template <class T>
Matrix<T> null_space(const Matrix<T>& m) {
  auto e = row_reduce(m);
  std::vector<bool> is_pivot(m.cols(), false);
  for (auto p : e.pivots) is_pivot[p] = true;
  std::vector<std::size_t> free;
  for (std::size_t j = 0; j < m.cols(); ++j)
    if (!is_pivot[j]) free.push_back(j);
  Matrix<T> k(m.cols(), free.size());
  for (std::size_t f = 0; f < free.size(); ++f) {
    k(free[f], f) = T(1);
    for (std::size_t r = 0; r < e.pivots.size(); ++r) k(e.pivots[r], f) = -e.reduced(r, free[f]);
  }
  return k;
}

/// The pivot columns of m: a basis of its column space made of original columns.
template <class T>
Matrix<T> column_space(const Matrix<T>& m) {
  auto e = row_reduce(m);
  return m.select_columns(e.pivots);
}

/// Solves m x = b. Free variables are set to zero, so the answer is a
/// deterministic function of (m, b). Returns nullopt when inconsistent.
template <class T>
std::optional<std::vector<T>> solve_linear(const Matrix<T>& m, const std::vector<T>& b) {
  if (b.size() != m.rows()) throw Error(ErrorKind::InvariantViolation, "solve: target length mismatch");
  Matrix<T> aug(m.rows(), m.cols() + 1);
  aug.set_block(0, 0, m);
  for (std::size_t i = 0; i < m.rows(); ++i) aug(i, m.cols()) = b[i];
  auto e = row_reduce(std::move(aug));
  if (!e.pivots.empty() && e.pivots.back() == m.cols()) return std::nullopt;
  std::vector<T> x(m.cols(), T(0));
  for (std::size_t r = 0; r < e.pivots.size(); ++r) x[e.pivots[r]] = e.reduced(r, m.cols());
  return x;
}

/// Inverse of a square matrix, or nullopt when singular.
template <class T>
std::optional<Matrix<T>> inverse(const Matrix<T>& m) {
  if (m.rows() != m.cols()) return std::nullopt;
  const std::size_t n = m.rows();
  auto e = row_reduce(hstack(m, Matrix<T>::identity(n)));
  if (e.pivots.size() < n || (n > 0 && e.pivots[n - 1] != n - 1)) return std::nullopt;
  return e.reduced.block(0, n, n, n);
}

}  // namespace cohom
