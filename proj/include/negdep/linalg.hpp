#pragma once

// Small dense linear algebra over Scalar types. Rational mode is exact;
// floating mode uses partial pivoting with an absolute pivot tolerance.

#include <optional>
#include <utility>
#include <vector>

#include "negdep/scalar.hpp"

namespace negdep {

template <Scalar T>
class Matrix {
 public:
  Matrix() = default;
  Matrix(int rows, int cols) : rows_(rows), cols_(cols), a_(static_cast<std::size_t>(rows) * cols, T(0)) {}

  int rows() const { return rows_; }
  int cols() const { return cols_; }
  T& operator()(int r, int c) { return a_[static_cast<std::size_t>(r) * cols_ + c]; }
  const T& operator()(int r, int c) const { return a_[static_cast<std::size_t>(r) * cols_ + c]; }

  Matrix transpose() const {
    Matrix t(cols_, rows_);
    for (int r = 0; r < rows_; ++r)
      for (int c = 0; c < cols_; ++c) t(c, r) = (*this)(r, c);
    return t;
  }

  Matrix select_cols(const std::vector<int>& cols) const {
    Matrix m(rows_, static_cast<int>(cols.size()));
    for (int r = 0; r < rows_; ++r)
      for (std::size_t k = 0; k < cols.size(); ++k) m(r, static_cast<int>(k)) = (*this)(r, cols[k]);
    return m;
  }

  Matrix select_rows(const std::vector<int>& rows) const {
    Matrix m(static_cast<int>(rows.size()), cols_);
    for (std::size_t k = 0; k < rows.size(); ++k)
      for (int c = 0; c < cols_; ++c) m(static_cast<int>(k), c) = (*this)(rows[k], c);
    return m;
  }

 private:
  int rows_ = 0, cols_ = 0;
  std::vector<T> a_;
};

namespace detail {

template <Scalar T>
bool pivot_ok(const T& v, double tol) {
  if constexpr (is_exact_v<T>) {
    return sgn(v) != 0;
  } else {
    return std::abs(v) > tol;
  }
}

// Row-reduces m in place (to reduced row echelon form); returns pivot columns.
template <Scalar T>
std::vector<int> rref(Matrix<T>& m, double tol) {
  std::vector<int> pivots;
  int row = 0;
  for (int c = 0; c < m.cols() && row < m.rows(); ++c) {
    int best = -1;
    if constexpr (is_exact_v<T>) {
      for (int r = row; r < m.rows(); ++r)
        if (sgn(m(r, c)) != 0) {
          best = r;
          break;
        }
    } else {
      double bv = tol;
      for (int r = row; r < m.rows(); ++r)
        if (std::abs(m(r, c)) > bv) {
          bv = std::abs(m(r, c));
          best = r;
        }
    }
    if (best < 0) continue;
    if (best != row)
      for (int k = 0; k < m.cols(); ++k) std::swap(m(row, k), m(best, k));
    const T inv = T(1) / m(row, c);
    for (int k = c; k < m.cols(); ++k) m(row, k) *= inv;
    for (int r = 0; r < m.rows(); ++r) {
      if (r == row || !pivot_ok(m(r, c), 0.0)) continue;
      const T factor = m(r, c);
      for (int k = c; k < m.cols(); ++k) m(r, k) -= factor * m(row, k);
    }
    pivots.push_back(c);
    ++row;
  }
  return pivots;
}

}  // namespace detail

template <Scalar T>
int rank(Matrix<T> m, double tol = 1e-10) {
  return static_cast<int>(detail::rref(m, tol).size());
}

/// Indices of a maximal set of linearly independent rows.
template <Scalar T>
std::vector<int> independent_rows(const Matrix<T>& m, double tol = 1e-10) {
  Matrix<T> t = m.transpose();
  return detail::rref(t, tol);
}

/// Solves A x = b (A possibly non-square). Returns nullopt when the system is
/// inconsistent or the solution is not unique.
template <Scalar T>
std::optional<std::vector<T>> solve_unique(const Matrix<T>& a, const std::vector<T>& b, double tol = 1e-10) {
  const int n = a.cols();
  Matrix<T> aug(a.rows(), n + 1);
  for (int r = 0; r < a.rows(); ++r) {
    for (int c = 0; c < n; ++c) aug(r, c) = a(r, c);
    aug(r, n) = b[static_cast<std::size_t>(r)];
  }
  const auto piv = detail::rref(aug, tol);
  if (!piv.empty() && piv.back() == n) return std::nullopt;  // inconsistent
  if (static_cast<int>(piv.size()) != n) return std::nullopt;
  std::vector<T> x(static_cast<std::size_t>(n));
  for (int k = 0; k < n; ++k) x[static_cast<std::size_t>(k)] = aug(k, n);
  return x;
}

}  // namespace negdep
