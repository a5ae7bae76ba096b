#pragma once

// Deformation complex at X:
//   End(V0) ⊕ End(V1) --ι--> Hom(V0,V1) ⊕ Hom(V1,V0)^2 ⊕ Hom(W,V0) ⊕ Hom(V1,W) --dμ--> Hom(V1,V0)
// with ι(ξ0, ξ1) = (ξ1 d − d ξ0, ξ0 B1 − B1 ξ1, ξ0 B2 − B2 ξ1, ξ0 i, −j ξ1).

#include "adhm/exactla/elimination.hpp"
#include "adhm/quiver/blowup_rep.hpp"

namespace adhm {

template <class F>
struct TangentComplex {
  Matrix<F> iota;  // (n1 n0 + 2 n0 n1 + n0 r + r n1) × (n0² + n1²)
  Matrix<F> dmu;   // n0 n1 × (n1 n0 + 2 n0 n1 + n0 r + r n1)
  std::size_t rank_iota = 0;
  std::size_t rank_dmu = 0;

  bool iota_injective() const { return rank_iota == iota.cols(); }
  bool dmu_surjective() const { return rank_dmu == dmu.rows(); }
  /// dim Ker dμ / Im ι.
  std::size_t middle_dim() const { return (dmu.cols() - rank_dmu) - rank_iota; }
};

namespace detail {

template <class F>
void append(typename Matrix<F>::Vec& out, const Matrix<F>& m) {
  out.insert(out.end(), m.data().begin(), m.data().end());
}

}  // namespace detail

template <class F>
TangentComplex<F> tangent_complex(const BlowupRep<F>& x) {
  const F& f = x.field;
  const std::size_t n0 = x.n0, n1 = x.n1, r = x.r;
  const std::size_t src = n0 * n0 + n1 * n1;
  const std::size_t mid = n1 * n0 + 2 * n0 * n1 + n0 * r + r * n1;
  const std::size_t tgt = n0 * n1;

  Matrix<F> iota(f, mid, src);
  for (std::size_t u = 0; u < src; ++u) {
    Matrix<F> xi0(f, n0, n0), xi1(f, n1, n1);
    if (u < n0 * n0) xi0(u / n0, u % n0) = f.one();
    else xi1((u - n0 * n0) / n1, (u - n0 * n0) % n1) = f.one();
    typename Matrix<F>::Vec col;
    detail::append(col, xi1 * x.d - x.d * xi0);
    detail::append(col, xi0 * x.B1 - x.B1 * xi1);
    detail::append(col, xi0 * x.B2 - x.B2 * xi1);
    detail::append(col, xi0 * x.i);
    detail::append(col, -(x.j * xi1));
    for (std::size_t k = 0; k < mid; ++k) iota(k, u) = col[k];
  }

  Matrix<F> dmu(f, tgt, mid);
  for (std::size_t u = 0; u < mid; ++u) {
    typename Matrix<F>::Vec unit(mid, f.zero());
    unit[u] = f.one();
    std::size_t k = 0;
    auto take = [&](std::size_t rows, std::size_t cols) {
      Matrix<F> m(f, rows, cols, typename Matrix<F>::Vec(unit.begin() + k, unit.begin() + k + rows * cols));
      k += rows * cols;
      return m;
    };
    const Matrix<F> dd = take(n1, n0), b1 = take(n0, n1), b2 = take(n0, n1), ii = take(n0, r), jj = take(r, n1);
    const Matrix<F> v = x.B1 * x.d * b2 + x.B1 * dd * x.B2 + b1 * x.d * x.B2 - x.B2 * x.d * b1 - x.B2 * dd * x.B1 -
                        b2 * x.d * x.B1 + ii * x.j + x.i * jj;
    for (std::size_t e = 0; e < tgt; ++e) dmu(e, u) = v.data()[e];
  }

  TangentComplex<F> t{std::move(iota), std::move(dmu)};
  t.rank_iota = rank(t.iota);
  t.rank_dmu = rank(t.dmu);
  return t;
}

}  // namespace adhm
