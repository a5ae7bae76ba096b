#pragma once

// Gaussian elimination: reduced row-echelon form, rank, kernels, linear solves.

#include <optional>
#include <vector>

#include "adhm/exactla/matrix.hpp"

namespace adhm {

template <class F>
struct Echelon {
  Matrix<F> reduced;                // same shape as the input, rows below rank are zero
  std::vector<std::size_t> pivots;  // pivot column of each nonzero row
  std::size_t rank() const { return pivots.size(); }
};

/// Reduced row-echelon form; `col_limit` restricts pivot search to the first
/// columns (used for augmented systems).
template <class F>
Echelon<F> rref(Matrix<F> m, std::size_t col_limit = static_cast<std::size_t>(-1)) {
  const F& f = m.field();
  const std::size_t rows = m.rows(), cols = m.cols();
  const std::size_t limit = std::min(cols, col_limit);
  std::vector<std::size_t> pivots;
  std::size_t r = 0;
  for (std::size_t c = 0; c < limit && r < rows; ++c) {
    std::size_t piv = rows;
    for (std::size_t i = r; i < rows; ++i)
      if (!f.is_zero(m(i, c))) {
        piv = i;
        break;
      }
    if (piv == rows) continue;
    if (piv != r)
      for (std::size_t j = 0; j < cols; ++j) std::swap(m(piv, j), m(r, j));
    const auto inv = f.inv(m(r, c));
    if (!f.is_one(inv))
      for (std::size_t j = c; j < cols; ++j) m(r, j) = f.mul(inv, m(r, j));
    for (std::size_t i = 0; i < rows; ++i) {
      if (i == r || f.is_zero(m(i, c))) continue;
      const auto factor = m(i, c);
      for (std::size_t j = c; j < cols; ++j) m(i, j) = f.sub(m(i, j), f.mul(factor, m(r, j)));
    }
    pivots.push_back(c);
    ++r;
  }
  return {std::move(m), std::move(pivots)};
}

template <class F>
std::size_t rank(const Matrix<F>& m) {
  if (m.empty()) return 0;
  return rref(m).rank();
}

/// Basis of the null space {v : m v = 0}, as vectors of length cols.
template <class F>
std::vector<typename Matrix<F>::Vec> kernel_vectors(const Matrix<F>& m) {
  const F& f = m.field();
  const auto e = rref(m);
  std::vector<bool> is_pivot(m.cols(), false);
  for (auto p : e.pivots) is_pivot[p] = true;
  std::vector<typename Matrix<F>::Vec> out;
  for (std::size_t free = 0; free < m.cols(); ++free) {
    if (is_pivot[free]) continue;
    typename Matrix<F>::Vec v(m.cols(), f.zero());
    v[free] = f.one();
    for (std::size_t i = 0; i < e.pivots.size(); ++i) v[e.pivots[i]] = f.neg(e.reduced(i, free));
    out.push_back(std::move(v));
  }
  return out;
}

/// Kernel basis as the columns of a cols×k matrix.
template <class F>
Matrix<F> kernel_matrix(const Matrix<F>& m) {
  const auto vs = kernel_vectors(m);
  return Matrix<F>::from_rows(m.field(), vs, m.cols()).transpose();
}

/// Some x with a x = b, or nullopt.
template <class F>
std::optional<Matrix<F>> solve(const Matrix<F>& a, const Matrix<F>& b) {
  require(a.rows() == b.rows(), ErrorCode::DimensionMismatch, "solve: row mismatch");
  const F& f = a.field();
  const auto e = rref(hstack<F>({a, b}), a.cols());
  const std::size_t rk = e.rank();
  for (std::size_t i = rk; i < a.rows(); ++i)
    for (std::size_t j = 0; j < b.cols(); ++j)
      if (!f.is_zero(e.reduced(i, a.cols() + j))) return std::nullopt;
  Matrix<F> x(f, a.cols(), b.cols());
  for (std::size_t i = 0; i < rk; ++i)
    for (std::size_t j = 0; j < b.cols(); ++j) x(e.pivots[i], j) = e.reduced(i, a.cols() + j);
  return x;
}

template <class F>
std::optional<Matrix<F>> inverse(const Matrix<F>& a) {
  require(a.rows() == a.cols(), ErrorCode::DimensionMismatch, "inverse of non-square matrix");
  const std::size_t n = a.rows();
  const auto e = rref(hstack<F>({a, Matrix<F>::identity(a.field(), n)}), n);
  if (e.rank() != n) return std::nullopt;
  return e.reduced.block(0, n, n, n);
}

template <class F>
bool is_invertible(const Matrix<F>& a) {
  return a.rows() == a.cols() && rank(a) == a.rows();
}

}  // namespace adhm
