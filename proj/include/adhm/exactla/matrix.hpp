#pragma once

// Dense row-major matrices over an exact field.

#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "adhm/error.hpp"
#include "adhm/exactla/field.hpp"

namespace adhm {

template <class F>
class Matrix {
 public:
  using Field = F;
  using Elem = typename F::Elem;
  using Vec = std::vector<Elem>;

  Matrix() = default;
  Matrix(F field, std::size_t rows, std::size_t cols)
      : field_(field), rows_(rows), cols_(cols), data_(rows * cols, field.zero()) {}
  Matrix(F field, std::size_t rows, std::size_t cols, std::vector<Elem> data)
      : field_(field), rows_(rows), cols_(cols), data_(std::move(data)) {
    require(data_.size() == rows * cols, ErrorCode::DimensionMismatch, "entry count does not match shape");
  }

  static Matrix zero(F field, std::size_t rows, std::size_t cols) { return Matrix(field, rows, cols); }

  static Matrix identity(F field, std::size_t n) {
    Matrix m(field, n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = field.one();
    return m;
  }

  /// Integer literal rows, mapped into the field.
  static Matrix from_ints(F field, std::size_t rows, std::size_t cols, const std::vector<long long>& v) {
    require(v.size() == rows * cols, ErrorCode::DimensionMismatch, "entry count does not match shape");
    Matrix m(field, rows, cols);
    for (std::size_t k = 0; k < v.size(); ++k) m.data_[k] = field.from_int(v[k]);
    return m;
  }

  static Matrix from_rows(F field, const std::vector<Vec>& rows, std::size_t cols) {
    Matrix m(field, rows.size(), cols);
    for (std::size_t i = 0; i < rows.size(); ++i) {
      require(rows[i].size() == cols, ErrorCode::DimensionMismatch, "ragged rows");
      for (std::size_t j = 0; j < cols; ++j) m(i, j) = rows[i][j];
    }
    return m;
  }

  static Matrix column(F field, const Vec& v) { return Matrix(field, v.size(), 1, v); }
  static Matrix row(F field, const Vec& v) { return Matrix(field, 1, v.size(), v); }

  /// 1×1 matrix.
  static Matrix scalar(F field, Elem a) { return Matrix(field, 1, 1, {std::move(a)}); }

  template <class Rng>
  static Matrix random(F field, std::size_t rows, std::size_t cols, Rng& rng) {
    Matrix m(field, rows, cols);
    for (auto& e : m.data_) e = field.random(rng);
    return m;
  }

  const F& field() const { return field_; }
  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool empty() const { return rows_ == 0 || cols_ == 0; }
  const std::vector<Elem>& data() const { return data_; }

  Elem& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const Elem& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  Vec row_vec(std::size_t i) const { return Vec(data_.begin() + i * cols_, data_.begin() + (i + 1) * cols_); }
  Vec col_vec(std::size_t j) const {
    Vec v;
    v.reserve(rows_);
    for (std::size_t i = 0; i < rows_; ++i) v.push_back((*this)(i, j));
    return v;
  }

  bool is_zero() const {
    for (const auto& e : data_)
      if (!field_.is_zero(e)) return false;
    return true;
  }

  Matrix transpose() const {
    Matrix t(field_, cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
    return t;
  }

  Matrix operator-() const {
    Matrix m(field_, rows_, cols_);
    for (std::size_t k = 0; k < data_.size(); ++k) m.data_[k] = field_.neg(data_[k]);
    return m;
  }

  friend Matrix operator+(const Matrix& a, const Matrix& b) {
    check_same(a, b);
    Matrix m(a.field_, a.rows_, a.cols_);
    for (std::size_t k = 0; k < a.data_.size(); ++k) m.data_[k] = a.field_.add(a.data_[k], b.data_[k]);
    return m;
  }

  friend Matrix operator-(const Matrix& a, const Matrix& b) {
    check_same(a, b);
    Matrix m(a.field_, a.rows_, a.cols_);
    for (std::size_t k = 0; k < a.data_.size(); ++k) m.data_[k] = a.field_.sub(a.data_[k], b.data_[k]);
    return m;
  }

  friend Matrix operator*(const Matrix& a, const Matrix& b) {
    check_field(a, b);
    require(a.cols_ == b.rows_, ErrorCode::DimensionMismatch,
            "product of " + a.shape() + " and " + b.shape());
    const F& f = a.field_;
    Matrix m(f, a.rows_, b.cols_);
    for (std::size_t i = 0; i < a.rows_; ++i)
      for (std::size_t k = 0; k < a.cols_; ++k) {
        const Elem& aik = a(i, k);
        if (f.is_zero(aik)) continue;
        for (std::size_t j = 0; j < b.cols_; ++j) m(i, j) = f.add(m(i, j), f.mul(aik, b(k, j)));
      }
    return m;
  }

  Matrix scaled(const Elem& c) const {
    Matrix m(field_, rows_, cols_);
    for (std::size_t k = 0; k < data_.size(); ++k) m.data_[k] = field_.mul(c, data_[k]);
    return m;
  }

  Vec apply(const Vec& v) const {
    require(v.size() == cols_, ErrorCode::DimensionMismatch, "vector length does not match columns");
    Vec out(rows_, field_.zero());
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j)
        if (!field_.is_zero(v[j])) out[i] = field_.add(out[i], field_.mul((*this)(i, j), v[j]));
    return out;
  }

  friend bool operator==(const Matrix& a, const Matrix& b) {
    if (!(a.field_ == b.field_) || a.rows_ != b.rows_ || a.cols_ != b.cols_) return false;
    for (std::size_t k = 0; k < a.data_.size(); ++k)
      if (!a.field_.eq(a.data_[k], b.data_[k])) return false;
    return true;
  }
  friend bool operator!=(const Matrix& a, const Matrix& b) { return !(a == b); }

  /// Rows [r0, r0+nr) and columns [c0, c0+nc).
  Matrix block(std::size_t r0, std::size_t c0, std::size_t nr, std::size_t nc) const {
    require(r0 + nr <= rows_ && c0 + nc <= cols_, ErrorCode::DimensionMismatch, "block out of range");
    Matrix m(field_, nr, nc);
    for (std::size_t i = 0; i < nr; ++i)
      for (std::size_t j = 0; j < nc; ++j) m(i, j) = (*this)(r0 + i, c0 + j);
    return m;
  }

  void set_block(std::size_t r0, std::size_t c0, const Matrix& b) {
    require(r0 + b.rows_ <= rows_ && c0 + b.cols_ <= cols_, ErrorCode::DimensionMismatch, "block out of range");
    for (std::size_t i = 0; i < b.rows_; ++i)
      for (std::size_t j = 0; j < b.cols_; ++j) (*this)(r0 + i, c0 + j) = b(i, j);
  }

  Matrix select_cols(const std::vector<std::size_t>& idx) const {
    Matrix m(field_, rows_, idx.size());
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < idx.size(); ++j) m(i, j) = (*this)(i, idx[j]);
    return m;
  }

  Matrix select_rows(const std::vector<std::size_t>& idx) const {
    Matrix m(field_, idx.size(), cols_);
    for (std::size_t i = 0; i < idx.size(); ++i)
      for (std::size_t j = 0; j < cols_; ++j) m(i, j) = (*this)(idx[i], j);
    return m;
  }

  /// Entry-wise image under a field homomorphism into another field.
  template <class G, class Fn>
  Matrix<G> map(G target, Fn&& fn) const {
    Matrix<G> m(target, rows_, cols_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) m(i, j) = fn((*this)(i, j));
    return m;
  }

  std::string shape() const { return std::to_string(rows_) + "x" + std::to_string(cols_); }

  std::string to_string() const {
    std::string s = "[";
    for (std::size_t i = 0; i < rows_; ++i) {
      if (i) s += "; ";
      for (std::size_t j = 0; j < cols_; ++j) {
        if (j) s += " ";
        s += field_.to_string((*this)(i, j));
      }
    }
    return s + "]";
  }

 private:
  static void check_field(const Matrix& a, const Matrix& b) {
    if (!(a.field_ == b.field_)) raise(ErrorCode::FieldMismatch, "matrices over different fields");
  }
  static void check_same(const Matrix& a, const Matrix& b) {
    check_field(a, b);
    require(a.rows_ == b.rows_ && a.cols_ == b.cols_, ErrorCode::DimensionMismatch,
            "shapes " + a.shape() + " and " + b.shape());
  }

  F field_{};
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Elem> data_;
};

template <class F>
Matrix<F> hstack(const std::vector<Matrix<F>>& parts) {
  require(!parts.empty(), ErrorCode::DimensionMismatch, "hstack of nothing");
  const std::size_t rows = parts.front().rows();
  std::size_t cols = 0;
  for (const auto& p : parts) {
    require(p.rows() == rows, ErrorCode::DimensionMismatch, "hstack row mismatch");
    cols += p.cols();
  }
  Matrix<F> m(parts.front().field(), rows, cols);
  std::size_t c = 0;
  for (const auto& p : parts) {
    m.set_block(0, c, p);
    c += p.cols();
  }
  return m;
}

template <class F>
Matrix<F> vstack(const std::vector<Matrix<F>>& parts) {
  require(!parts.empty(), ErrorCode::DimensionMismatch, "vstack of nothing");
  const std::size_t cols = parts.front().cols();
  std::size_t rows = 0;
  for (const auto& p : parts) {
    require(p.cols() == cols, ErrorCode::DimensionMismatch, "vstack column mismatch");
    rows += p.rows();
  }
  Matrix<F> m(parts.front().field(), rows, cols);
  std::size_t r = 0;
  for (const auto& p : parts) {
    m.set_block(r, 0, p);
    r += p.rows();
  }
  return m;
}

template <class F>
Matrix<F> block_diag(const Matrix<F>& a, const Matrix<F>& b) {
  Matrix<F> m(a.field(), a.rows() + b.rows(), a.cols() + b.cols());
  m.set_block(0, 0, a);
  m.set_block(a.rows(), a.cols(), b);
  return m;
}

}  // namespace adhm
