#pragma once

// Representations X = (B1, B2, d, i, j) of the blown-up-plane quiver:
//   B1, B2 : V1 -> V0,  d : V0 -> V1,  i : W -> V0,  j : V1 -> W.

#include <string>

#include "adhm/exactla/elimination.hpp"

namespace adhm {

struct Dims {
  std::size_t n0 = 0, n1 = 0, r = 0;
  friend bool operator==(const Dims&, const Dims&) = default;
  std::string to_string() const {
    return "(" + std::to_string(n0) + "," + std::to_string(n1) + "," + std::to_string(r) + ")";
  }
};

template <class F>
struct BlowupRep {
  using Mat = Matrix<F>;

  F field{};
  std::size_t n0 = 0, n1 = 0, r = 0;
  Mat B1, B2;  // n0 × n1
  Mat d;       // n1 × n0
  Mat i;       // n0 × r
  Mat j;       // r × n1

  static BlowupRep zero(F field, std::size_t n0, std::size_t n1, std::size_t r = 0) {
    return {field, n0, n1, r, Mat(field, n0, n1), Mat(field, n0, n1), Mat(field, n1, n0), Mat(field, n0, r),
            Mat(field, r, n1)};
  }

  static BlowupRep zero(F field, Dims dims) { return zero(field, dims.n0, dims.n1, dims.r); }

  /// Dimensions are read off the matrix shapes, then validated.
  static BlowupRep make(Mat B1, Mat B2, Mat d, Mat i, Mat j) {
    BlowupRep x{B1.field(), B1.rows(), B1.cols(), i.cols(), std::move(B1), std::move(B2),
                std::move(d), std::move(i), std::move(j)};
    x.validate();
    return x;
  }

  Dims dims() const { return {n0, n1, r}; }

  void validate() const {
    auto shape = [](const Mat& m, std::size_t rr, std::size_t cc, const char* name) {
      require(m.rows() == rr && m.cols() == cc, ErrorCode::DimensionMismatch,
              std::string(name) + " has shape " + m.shape() + ", expected " + std::to_string(rr) + "x" +
                  std::to_string(cc));
    };
    shape(B1, n0, n1, "B1");
    shape(B2, n0, n1, "B2");
    shape(d, n1, n0, "d");
    shape(i, n0, r, "i");
    shape(j, r, n1, "j");
    for (const Mat* m : {&B1, &B2, &d, &i, &j})
      if (!(m->field() == field)) raise(ErrorCode::FieldMismatch, "representation matrices over different fields");
  }

  bool is_zero_rep() const { return n0 == 0 && n1 == 0; }

  friend bool operator==(const BlowupRep& a, const BlowupRep& b) {
    return a.dims() == b.dims() && a.B1 == b.B1 && a.B2 == b.B2 && a.d == b.d && a.i == b.i && a.j == b.j;
  }
};

/// B1 d B2 − B2 d B1 + i j, an element of Hom(V1, V0).
template <class F>
Matrix<F> mu_residual(const BlowupRep<F>& x) {
  return x.B1 * x.d * x.B2 - x.B2 * x.d * x.B1 + x.i * x.j;
}

template <class F>
bool is_flat(const BlowupRep<F>& x) {
  return mu_residual(x).is_zero();
}

/// Block-diagonal sum. With `shared_framing` (equal r) the framing space is
/// identified: i = [i_X; i_Y], j = [j_X j_Y].
template <class F>
BlowupRep<F> direct_sum(const BlowupRep<F>& x, const BlowupRep<F>& y, bool shared_framing = false) {
  if (!(x.field == y.field)) raise(ErrorCode::FieldMismatch, "direct sum over different fields");
  BlowupRep<F> s;
  s.field = x.field;
  s.n0 = x.n0 + y.n0;
  s.n1 = x.n1 + y.n1;
  s.B1 = block_diag(x.B1, y.B1);
  s.B2 = block_diag(x.B2, y.B2);
  s.d = block_diag(x.d, y.d);
  if (shared_framing) {
    require(x.r == y.r, ErrorCode::DimensionMismatch, "shared framing needs equal framing ranks");
    s.r = x.r;
    s.i = vstack<F>({x.i, y.i});
    s.j = hstack<F>({x.j, y.j});
  } else {
    s.r = x.r + y.r;
    s.i = block_diag(x.i, y.i);
    s.j = block_diag(x.j, y.j);
  }
  return s;
}

/// C_m: dims (m, m+1), B1 = [1_m 0], B2 = [0 1_m], d = 0, no framing.
template <class F>
BlowupRep<F> cm_data(std::size_t m, F field) {
  auto x = BlowupRep<F>::zero(field, m, m + 1, 0);
  for (std::size_t k = 0; k < m; ++k) {
    x.B1(k, k) = field.one();
    x.B2(k, k + 1) = field.one();
  }
  return x;
}

/// Transport of structure along (g0, g1, gW) ∈ GL(V0) × GL(V1) × GL(W):
/// (g0 B g1⁻¹, g1 d g0⁻¹, g0 i gW⁻¹, gW j g1⁻¹).
template <class F>
BlowupRep<F> change_basis(const BlowupRep<F>& x, const Matrix<F>& g0, const Matrix<F>& g1, const Matrix<F>& gw) {
  const auto g0i = inverse(g0), g1i = inverse(g1), gwi = inverse(gw);
  require(g0i && g1i && gwi, ErrorCode::PreconditionViolated, "change of basis must be invertible");
  BlowupRep<F> y = x;
  y.B1 = g0 * x.B1 * *g1i;
  y.B2 = g0 * x.B2 * *g1i;
  y.d = g1 * x.d * *g0i;
  y.i = g0 * x.i * *gwi;
  y.j = gw * x.j * *g1i;
  return y;
}

template <class F>
BlowupRep<F> change_basis(const BlowupRep<F>& x, const Matrix<F>& g0, const Matrix<F>& g1) {
  return change_basis(x, g0, g1, Matrix<F>::identity(x.field, x.r));
}

/// Uniformly random invertible n×n matrix (rejection sampling).
template <class F, class Rng>
Matrix<F> random_invertible(F field, std::size_t n, Rng& rng) {
  while (true) {
    auto m = Matrix<F>::random(field, n, n, rng);
    if (is_invertible(m)) return m;
  }
}

}  // namespace adhm
