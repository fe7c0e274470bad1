#pragma once

#include <cstddef>
#include <initializer_list>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "abmod/errors.hpp"

namespace abm {

// Dense matrix over a field K, row-major. Sized once at construction.
template <class K>
class Matrix {
public:
  Matrix() : rows_(0), cols_(0) {}
  Matrix(std::size_t rows, std::size_t cols, K fill = K(0))
      : rows_(rows), cols_(cols), d_(rows * cols, std::move(fill)) {}

  Matrix(std::initializer_list<std::initializer_list<K>> init) {
    rows_ = init.size();
    cols_ = rows_ ? init.begin()->size() : 0;
    d_.reserve(rows_ * cols_);
    for (const auto& row : init) {
      if (row.size() != cols_)
        fail(errc::syntax_error, "ragged matrix initializer");
      for (const auto& v : row) d_.push_back(v);
    }
  }

  static Matrix identity(std::size_t n) {
    Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = K(1);
    return m;
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  K& operator()(std::size_t i, std::size_t j) { return d_[i * cols_ + j]; }
  const K& operator()(std::size_t i, std::size_t j) const {
    return d_[i * cols_ + j];
  }

  friend Matrix operator+(const Matrix& a, const Matrix& b) {
    Matrix r = a;
    for (std::size_t i = 0; i < r.d_.size(); ++i) r.d_[i] += b.d_[i];
    return r;
  }
  friend Matrix operator-(const Matrix& a, const Matrix& b) {
    Matrix r = a;
    for (std::size_t i = 0; i < r.d_.size(); ++i) r.d_[i] -= b.d_[i];
    return r;
  }
  friend Matrix operator*(const Matrix& a, const Matrix& b) {
    Matrix r(a.rows_, b.cols_);
    for (std::size_t i = 0; i < a.rows_; ++i)
      for (std::size_t l = 0; l < a.cols_; ++l) {
        const K& ail = a(i, l);
        if (ail.is_zero()) continue;
        for (std::size_t j = 0; j < b.cols_; ++j)
          r(i, j) += ail * b(l, j);
      }
    return r;
  }
  friend Matrix operator*(const K& s, const Matrix& a) {
    Matrix r = a;
    for (auto& v : r.d_) v = s * v;
    return r;
  }
  friend bool operator==(const Matrix& a, const Matrix& b) {
    if (a.rows_ != b.rows_ || a.cols_ != b.cols_) return false;
    for (std::size_t i = 0; i < a.d_.size(); ++i)
      if (!(a.d_[i] - b.d_[i]).is_zero()) return false;
    return true;
  }

  std::vector<K> apply(const std::vector<K>& v) const {
    std::vector<K> r(rows_, K(0));
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j)
        if (!(*this)(i, j).is_zero()) r[i] += (*this)(i, j) * v[j];
    return r;
  }

  Matrix transposed() const {
    Matrix r(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) r(j, i) = (*this)(i, j);
    return r;
  }

  bool is_zero() const {
    for (const auto& v : d_)
      if (!v.is_zero()) return false;
    return true;
  }

  std::string str() const {
    std::ostringstream os;
    for (std::size_t i = 0; i < rows_; ++i) {
      os << (i ? "; " : "[");
      for (std::size_t j = 0; j < cols_; ++j)
        os << (j ? ", " : "") << (*this)(i, j).str();
    }
    os << "]";
    return os.str();
  }

private:
  std::size_t rows_, cols_;
  std::vector<K> d_;
};

// In-place reduced row echelon form. Returns pivot column indices.
template <class K>
std::vector<std::size_t> rref(Matrix<K>& m) {
  std::vector<std::size_t> pivots;
  std::size_t row = 0;
  for (std::size_t col = 0; col < m.cols() && row < m.rows(); ++col) {
    std::size_t sel = row;
    while (sel < m.rows() && m(sel, col).is_zero()) ++sel;
    if (sel == m.rows()) continue;
    for (std::size_t j = 0; j < m.cols(); ++j)
      std::swap(m(sel, j), m(row, j));
    K inv = K(1) / m(row, col);
    for (std::size_t j = col; j < m.cols(); ++j) m(row, j) = inv * m(row, j);
    for (std::size_t i = 0; i < m.rows(); ++i) {
      if (i == row || m(i, col).is_zero()) continue;
      K f = m(i, col);
      for (std::size_t j = col; j < m.cols(); ++j)
        m(i, j) = m(i, j) - f * m(row, j);
    }
    pivots.push_back(col);
    ++row;
  }
  return pivots;
}

template <class K>
std::size_t rank(Matrix<K> m) {
  return rref(m).size();
}

// Basis of the right kernel, one column vector per basis element.
template <class K>
std::vector<std::vector<K>> kernel_basis(Matrix<K> m) {
  std::vector<std::size_t> pivots = rref(m);
  std::vector<bool> is_pivot(m.cols(), false);
  for (auto p : pivots) is_pivot[p] = true;
  std::vector<std::vector<K>> basis;
  for (std::size_t free_col = 0; free_col < m.cols(); ++free_col) {
    if (is_pivot[free_col]) continue;
    std::vector<K> v(m.cols(), K(0));
    v[free_col] = K(1);
    for (std::size_t r = 0; r < pivots.size(); ++r)
      v[pivots[r]] = K(0) - m(r, free_col);
    basis.push_back(std::move(v));
  }
  return basis;
}

// Solves m*x = rhs. Returns false when inconsistent.
template <class K>
bool solve_linear(Matrix<K> m, std::vector<K> rhs, std::vector<K>& out) {
  Matrix<K> aug(m.rows(), m.cols() + 1);
  for (std::size_t i = 0; i < m.rows(); ++i) {
    for (std::size_t j = 0; j < m.cols(); ++j) aug(i, j) = m(i, j);
    aug(i, m.cols()) = rhs[i];
  }
  std::vector<std::size_t> pivots = rref(aug);
  if (!pivots.empty() && pivots.back() == m.cols()) return false;
  out.assign(m.cols(), K(0));
  for (std::size_t r = 0; r < pivots.size(); ++r)
    out[pivots[r]] = aug(r, m.cols());
  return true;
}

template <class K>
Matrix<K> inverse(const Matrix<K>& m) {
  std::size_t n = m.rows();
  Matrix<K> aug(n, 2 * n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) aug(i, j) = m(i, j);
    aug(i, n + i) = K(1);
  }
  std::vector<std::size_t> pivots = rref(aug);
  if (pivots.size() != n || pivots[n - 1] != n - 1)
    fail(errc::not_a_unit, "matrix is singular");
  Matrix<K> r(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) r(i, j) = aug(i, n + j);
  return r;
}

template <class K>
K determinant(Matrix<K> m) {
  K det(1);
  std::size_t n = m.rows();
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t sel = col;
    while (sel < n && m(sel, col).is_zero()) ++sel;
    if (sel == n) return K(0);
    if (sel != col) {
      for (std::size_t j = 0; j < n; ++j) std::swap(m(sel, j), m(col, j));
      det = K(0) - det;
    }
    det = det * m(col, col);
    K inv = K(1) / m(col, col);
    for (std::size_t i = col + 1; i < n; ++i) {
      if (m(i, col).is_zero()) continue;
      K f = inv * m(i, col);
      for (std::size_t j = col; j < n; ++j)
        m(i, j) = m(i, j) - f * m(col, j);
    }
  }
  return det;
}

}  // namespace abm
