#pragma once

// Exhaustive enumeration of representations over a finite field.

#include <functional>

#include "adhm/exactla/elimination.hpp"
#include "adhm/quiver/blowup_rep.hpp"

namespace adhm {

/// Default cap on enumerated raw tuples (q^entries).
inline constexpr std::uint64_t kDefaultRepBound = std::uint64_t{1} << 24;

namespace detail {

inline std::uint64_t checked_power(std::uint64_t q, std::size_t e, std::uint64_t bound, const char* what) {
  std::uint64_t t = 1;
  for (std::size_t k = 0; k < e; ++k) {
    t *= q;
    if (t > bound) raise(ErrorCode::BoundExceeded, std::string(what) + " exceeds bound " + std::to_string(bound));
  }
  return t;
}

// Fills the listed matrices from consecutive base-q digits of idx, row-major,
// first matrix most significant.
template <class F>
void fill_from_index(std::uint64_t idx, std::uint32_t q, const std::vector<Matrix<F>*>& mats) {
  for (auto it = mats.rbegin(); it != mats.rend(); ++it) {
    auto& m = **it;
    for (std::size_t k = m.rows() * m.cols(); k-- > 0;) {
      m(k / m.cols(), k % m.cols()) = static_cast<typename F::Elem>(idx % q);
      idx /= q;
    }
  }
}

}  // namespace detail

/// Visits all representations of the given dimensions. With `flat_only`, only
/// those with μ = 0: since μ is affine in d for fixed (B1, B2, i, j), the flat d
/// are enumerated directly from the solution space of that linear system, and
/// the bound applies to the q^(entries of B1, B2, i, j) outer loop.
template <class F>
void visit_reps(Dims dims, const F& field, bool flat_only, const std::function<bool(const BlowupRep<F>&)>& visit,
                std::uint64_t bound = kDefaultRepBound) {
  if constexpr (!F::is_finite) {
    raise(ErrorCode::UnsupportedField, "representation enumeration needs a finite field");
  } else {
    const std::uint32_t q = field.order();
    auto x = BlowupRep<F>::zero(field, dims);
    const std::size_t n0 = dims.n0, n1 = dims.n1;
    const std::size_t dsize = n1 * n0;
    const std::size_t outer_entries = 2 * n0 * n1 + n0 * dims.r + dims.r * n1;
    if (!flat_only) {
      const std::uint64_t total = detail::checked_power(q, outer_entries + dsize, bound, "representation count");
      for (std::uint64_t idx = 0; idx < total; ++idx) {
        detail::fill_from_index<F>(idx, q, {&x.B1, &x.B2, &x.d, &x.i, &x.j});
        if (!visit(x)) return;
      }
      return;
    }
    const std::uint64_t outer = detail::checked_power(q, outer_entries, bound, "representation count");
    for (std::uint64_t idx = 0; idx < outer; ++idx) {
      detail::fill_from_index<F>(idx, q, {&x.B1, &x.B2, &x.i, &x.j});
      // Linear map d ↦ B1 d B2 − B2 d B1 on vec(d), and target −ij.
      Matrix<F> sys(field, n0 * n1, dsize);
      for (std::size_t u = 0; u < dsize; ++u) {
        Matrix<F> e(field, n1, n0);
        e(u / n0, u % n0) = field.one();
        const Matrix<F> img = x.B1 * e * x.B2 - x.B2 * e * x.B1;
        for (std::size_t k = 0; k < n0 * n1; ++k) sys(k, u) = img.data()[k];
      }
      const Matrix<F> ij = x.i * x.j;
      Matrix<F> rhs(field, n0 * n1, 1);
      for (std::size_t k = 0; k < n0 * n1; ++k) rhs(k, 0) = field.neg(ij.data()[k]);
      const auto part = solve(sys, rhs);
      if (!part) continue;
      const auto ker = kernel_vectors(sys);
      std::uint64_t count = 1;
      for (std::size_t t = 0; t < ker.size(); ++t) count *= q;
      for (std::uint64_t c = 0; c < count; ++c) {
        std::uint64_t v = c;
        for (std::size_t u = 0; u < dsize; ++u) x.d(u / n0, u % n0) = (*part)(u, 0);
        for (std::size_t t = 0; t < ker.size(); ++t) {
          const auto coef = static_cast<typename F::Elem>(v % q);
          v /= q;
          if (coef == 0) continue;
          for (std::size_t u = 0; u < dsize; ++u)
            x.d(u / n0, u % n0) = field.add(x.d(u / n0, u % n0), field.mul(coef, ker[t][u]));
        }
        if (!visit(x)) return;
      }
    }
  }
}

template <class F>
std::vector<BlowupRep<F>> enumerate_reps(Dims dims, const F& field, bool flat_only,
                                         std::uint64_t bound = kDefaultRepBound) {
  std::vector<BlowupRep<F>> out;
  visit_reps<F>(
      dims, field, flat_only,
      [&](const BlowupRep<F>& x) {
        out.push_back(x);
        return true;
      },
      bound);
  return out;
}

/// Visits every n×n invertible matrix over a finite field (bounded).
template <class F>
void visit_gl(const F& field, std::size_t n, const std::function<bool(const Matrix<F>&)>& visit,
              std::uint64_t bound = kDefaultRepBound) {
  const std::uint32_t q = field.order();
  const std::uint64_t total = detail::checked_power(q, n * n, bound, "matrix count");
  Matrix<F> g(field, n, n);
  for (std::uint64_t idx = 0; idx < total; ++idx) {
    detail::fill_from_index<F>(idx, q, {&g});
    if (is_invertible(g) && !visit(g)) return;
  }
}

template <class F>
std::vector<Matrix<F>> general_linear_group(const F& field, std::size_t n, std::uint64_t bound = kDefaultRepBound) {
  std::vector<Matrix<F>> out;
  visit_gl<F>(
      field, n,
      [&](const Matrix<F>& g) {
        out.push_back(g);
        return true;
      },
      bound);
  return out;
}

}  // namespace adhm
