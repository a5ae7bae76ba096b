#pragma once

// Homomorphisms (ξ0, ξ1, b) : X -> Y, i.e. solutions of
//   ξ0 B_α = B'_α ξ1,  ξ1 d = d' ξ0,  ξ0 i = i' b,  b j = j' ξ1.

#include <optional>
#include <random>
#include <vector>

#include "adhm/exactla/elimination.hpp"
#include "adhm/quiver/blowup_rep.hpp"

namespace adhm {

enum class FrameMode { Free, FramedIdentity };

template <class F>
struct HomElement {
  Matrix<F> xi0;  // n0' × n0
  Matrix<F> xi1;  // n1' × n1
  Matrix<F> b;    // r' × r

  friend bool operator==(const HomElement&, const HomElement&) = default;
};

template <class F>
struct HomBasis {
  std::vector<HomElement<F>> basis;
  /// FramedIdentity only: a solution with b = 1, absent when none exists.
  std::optional<HomElement<F>> basepoint;

  std::size_t dim() const { return basis.size(); }
};

namespace detail {

template <class F>
struct HomSystem {
  std::size_t n0, n1, r, m0, m1, s;  // source dims (n), target dims (m, s = r')
  std::size_t unknowns() const { return m0 * n0 + m1 * n1 + s * r; }
};

template <class F>
typename Matrix<F>::Vec hom_residual(const BlowupRep<F>& x, const BlowupRep<F>& y, const HomElement<F>& h) {
  std::vector<Matrix<F>> parts = {h.xi0 * x.B1 - y.B1 * h.xi1, h.xi0 * x.B2 - y.B2 * h.xi1,
                                  h.xi1 * x.d - y.d * h.xi0, h.xi0 * x.i - y.i * h.b, h.b * x.j - y.j * h.xi1};
  typename Matrix<F>::Vec out;
  for (const auto& p : parts) out.insert(out.end(), p.data().begin(), p.data().end());
  return out;
}

template <class F>
HomElement<F> unpack(const F& f, const BlowupRep<F>& x, const BlowupRep<F>& y, const typename Matrix<F>::Vec& v,
                     std::size_t offset = 0) {
  HomElement<F> h{Matrix<F>(f, y.n0, x.n0), Matrix<F>(f, y.n1, x.n1), Matrix<F>(f, y.r, x.r)};
  std::size_t k = offset;
  for (auto* m : {&h.xi0, &h.xi1, &h.b})
    for (std::size_t a = 0; a < m->rows(); ++a)
      for (std::size_t c = 0; c < m->cols(); ++c) (*m)(a, c) = v[k++];
  return h;
}

}  // namespace detail

/// Matrix of the linear map (ξ0, ξ1, b) ↦ residual of the commuting relations.
template <class F>
Matrix<F> hom_system(const BlowupRep<F>& x, const BlowupRep<F>& y) {
  const F& f = x.field;
  const std::size_t nu = y.n0 * x.n0 + y.n1 * x.n1 + y.r * x.r;
  const std::size_t ne = 2 * y.n0 * x.n1 + y.n1 * x.n0 + y.n0 * x.r + y.r * x.n1;
  Matrix<F> sys(f, ne, nu);
  typename Matrix<F>::Vec unit(nu, f.zero());
  for (std::size_t u = 0; u < nu; ++u) {
    unit[u] = f.one();
    const auto col = detail::hom_residual(x, y, detail::unpack(f, x, y, unit));
    for (std::size_t e = 0; e < ne; ++e) sys(e, u) = col[e];
    unit[u] = f.zero();
  }
  return sys;
}

template <class F>
HomBasis<F> hom_space(const BlowupRep<F>& x, const BlowupRep<F>& y, FrameMode mode = FrameMode::Free) {
  if (!(x.field == y.field)) raise(ErrorCode::FieldMismatch, "hom between representations over different fields");
  const F& f = x.field;
  const Matrix<F> sys = hom_system(x, y);
  HomBasis<F> out;
  if (mode == FrameMode::Free) {
    for (const auto& v : kernel_vectors(sys)) out.basis.push_back(detail::unpack(f, x, y, v));
    return out;
  }
  require(x.r == y.r, ErrorCode::DimensionMismatch, "framed homs need equal framing ranks");
  // Unknowns are ordered (ξ0, ξ1, b); split off the b columns and move b = 1 to the right.
  const std::size_t nxi = y.n0 * x.n0 + y.n1 * x.n1;
  const std::size_t rr = x.r;
  Matrix<F> a = sys.block(0, 0, sys.rows(), nxi);
  Matrix<F> rhs(f, sys.rows(), 1);
  for (std::size_t t = 0; t < rr; ++t) {
    const std::size_t col = nxi + t * rr + t;
    for (std::size_t e = 0; e < sys.rows(); ++e) rhs(e, 0) = f.sub(rhs(e, 0), sys(e, col));
  }
  typename Matrix<F>::Vec tail(rr * rr, f.zero());
  for (std::size_t t = 0; t < rr; ++t) tail[t * rr + t] = f.one();
  for (const auto& v : kernel_vectors(a)) {
    auto full = v;
    full.insert(full.end(), rr * rr, f.zero());
    out.basis.push_back(detail::unpack(f, x, y, full));
  }
  if (auto sol = solve(a, rhs)) {
    auto full = sol->col_vec(0);
    full.insert(full.end(), tail.begin(), tail.end());
    out.basepoint = detail::unpack(f, x, y, full);
  }
  return out;
}

template <class F>
bool is_hom(const BlowupRep<F>& x, const BlowupRep<F>& y, const HomElement<F>& h) {
  for (const auto& e : detail::hom_residual(x, y, h))
    if (!x.field.is_zero(e)) return false;
  return true;
}

template <class F>
HomElement<F> compose(const HomElement<F>& g, const HomElement<F>& h) {
  return {g.xi0 * h.xi0, g.xi1 * h.xi1, g.b * h.b};
}

template <class F>
HomElement<F> identity_hom(const BlowupRep<F>& x) {
  return {Matrix<F>::identity(x.field, x.n0), Matrix<F>::identity(x.field, x.n1), Matrix<F>::identity(x.field, x.r)};
}

template <class F>
HomElement<F> combine(const F& f, const HomElement<F>& base, const std::vector<HomElement<F>>& basis,
                      const std::vector<typename F::Elem>& coeffs) {
  HomElement<F> h = base;
  for (std::size_t k = 0; k < basis.size(); ++k) {
    if (f.is_zero(coeffs[k])) continue;
    h.xi0 = h.xi0 + basis[k].xi0.scaled(coeffs[k]);
    h.xi1 = h.xi1 + basis[k].xi1.scaled(coeffs[k]);
    h.b = h.b + basis[k].b.scaled(coeffs[k]);
  }
  return h;
}

/// Default cap on hom-space points visited by the exhaustive isomorphism search.
inline constexpr std::uint64_t kDefaultIsoSearchBound = std::uint64_t{1} << 20;

/// An isomorphism X -> Y (with b = 1 when framed), if one exists.
///
/// Over finite fields the search is exhaustive over the hom space (bounded);
/// over Q a random combination is tried a few times, so a nullopt there is
/// not a proof of non-isomorphism.
template <class F>
std::optional<HomElement<F>> find_isomorphism(const BlowupRep<F>& x, const BlowupRep<F>& y, bool framed = true,
                                              std::uint64_t bound = kDefaultIsoSearchBound) {
  if (x.dims() != y.dims()) return std::nullopt;
  const F& f = x.field;
  const HomBasis<F> hs = hom_space(x, y, framed ? FrameMode::FramedIdentity : FrameMode::Free);
  HomElement<F> base;
  if (framed) {
    if (!hs.basepoint) return std::nullopt;
    base = *hs.basepoint;
  } else {
    base = {Matrix<F>(f, y.n0, x.n0), Matrix<F>(f, y.n1, x.n1), Matrix<F>(f, y.r, x.r)};
  }
  auto invertible = [&](const HomElement<F>& h) {
    return is_invertible(h.xi0) && is_invertible(h.xi1) && (framed || is_invertible(h.b));
  };
  const std::size_t k = hs.dim();
  if constexpr (F::is_finite) {
    const std::uint64_t q = f.order();
    std::uint64_t total = 1;
    for (std::size_t t = 0; t < k; ++t) {
      total *= q;
      if (total > bound) raise(ErrorCode::BoundExceeded, "isomorphism search space too large");
    }
    std::vector<typename F::Elem> c(k, f.zero());
    for (std::uint64_t idx = 0; idx < total; ++idx) {
      std::uint64_t v = idx;
      for (std::size_t t = 0; t < k; ++t) {
        c[t] = static_cast<typename F::Elem>(v % q);
        v /= q;
      }
      const auto h = combine(f, base, hs.basis, c);
      if (invertible(h)) return h;
    }
    return std::nullopt;
  } else {
    std::mt19937 rng(12345);
    for (int attempt = 0; attempt < 8; ++attempt) {
      std::vector<typename F::Elem> c;
      std::uniform_int_distribution<int> dist(-50, 50);
      for (std::size_t t = 0; t < k; ++t) c.push_back(f.from_int(dist(rng)));
      const auto h = combine(f, base, hs.basis, c);
      if (invertible(h)) return h;
    }
    return std::nullopt;
  }
}

}  // namespace adhm
