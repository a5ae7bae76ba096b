#pragma once

// Kronecker canonical form of a pencil (B1, B2) : V1 -> V0.
//
// Blocks, as (B1, B2):
//   a_m  (m+1)×m : ([1_m; 0], [0; 1_m])          m ≥ 0
//   b_m  m×(m+1) : ([1_m 0], [0 1_m])            m ≥ 0
//   c_m  m×m     : (1_m, J_m)                    m ≥ 1
//   d_m  m×m     : (a 1_m + J_m, 1_m)            m ≥ 1
// with J_m the upper nilpotent Jordan block. When the regular part has no
// eigenvalue in the base field it is reported as companion blocks
// (C(p), 1) of its invariant factors ("d-generalized").
//
// Method: b-blocks are split off one at a time from the polynomial kernel of
// least degree of B1 − λ B2 (a block Toeplitz kernel), a-blocks likewise on the
// transposed pencil, and the regular remainder is separated by Wong sequences
// into the part where B1 is invertible with B1⁻¹B2 nilpotent (c) and the part
// where B2 is invertible (d), followed by Jordan / rational canonical forms.

#include <algorithm>
#include <random>

#include "adhm/exactla/elimination.hpp"
#include "adhm/exactla/subspace.hpp"

namespace adhm {

enum class KroneckerKind { A, B, C, D, DGeneralized };

inline std::string to_string(KroneckerKind k) {
  switch (k) {
    case KroneckerKind::A: return "a";
    case KroneckerKind::B: return "b";
    case KroneckerKind::C: return "c";
    case KroneckerKind::D: return "d";
    case KroneckerKind::DGeneralized: return "d-generalized";
  }
  return "?";
}

template <class F>
struct KroneckerBlock {
  using Elem = typename F::Elem;

  KroneckerKind kind;
  std::size_t m = 0;
  std::optional<Elem> eigen;  // kind D
  std::vector<Elem> poly;     // kind DGeneralized: monic invariant factor, low degree first (size m+1)

  std::size_t rows() const {
    switch (kind) {
      case KroneckerKind::A: return m + 1;
      default: return m;
    }
  }
  std::size_t cols() const {
    switch (kind) {
      case KroneckerKind::B: return m + 1;
      default: return m;
    }
  }

  /// Canonical (B1, B2) of this block.
  std::pair<Matrix<F>, Matrix<F>> matrices(const F& f) const {
    Matrix<F> b1(f, rows(), cols()), b2(f, rows(), cols());
    switch (kind) {
      case KroneckerKind::A:
        for (std::size_t k = 0; k < m; ++k) {
          b1(k, k) = f.one();
          b2(k + 1, k) = f.one();
        }
        break;
      case KroneckerKind::B:
        for (std::size_t k = 0; k < m; ++k) {
          b1(k, k) = f.one();
          b2(k, k + 1) = f.one();
        }
        break;
      case KroneckerKind::C:
        for (std::size_t k = 0; k < m; ++k) b1(k, k) = f.one();
        for (std::size_t k = 0; k + 1 < m; ++k) b2(k, k + 1) = f.one();
        break;
      case KroneckerKind::D:
        for (std::size_t k = 0; k < m; ++k) {
          b1(k, k) = *eigen;
          b2(k, k) = f.one();
        }
        for (std::size_t k = 0; k + 1 < m; ++k) b1(k, k + 1) = f.one();
        break;
      case KroneckerKind::DGeneralized:
        // Companion matrix: subdiagonal ones, last column −p_0 .. −p_{m−1}.
        for (std::size_t k = 0; k < m; ++k) b2(k, k) = f.one();
        for (std::size_t k = 0; k + 1 < m; ++k) b1(k + 1, k) = f.one();
        for (std::size_t k = 0; k < m; ++k) b1(k, m - 1) = f.neg(poly[k]);
        break;
    }
    return {std::move(b1), std::move(b2)};
  }

  std::string to_string(const F& f) const {
    std::string s = adhm::to_string(kind) + std::to_string(m);
    if (eigen) s += "(" + f.to_string(*eigen) + ")";
    if (!poly.empty()) {
      s += "[";
      for (std::size_t k = 0; k < poly.size(); ++k) s += (k ? "," : "") + f.to_string(poly[k]);
      s += "]";
    }
    return s;
  }
};

/// Canonical ordering: kind (b, a, c, d, d-generalized), then size, then eigenvalue.
template <class F>
bool block_less(const F& f, const KroneckerBlock<F>& x, const KroneckerBlock<F>& y) {
  auto rank_of = [](KroneckerKind k) {
    switch (k) {
      case KroneckerKind::B: return 0;
      case KroneckerKind::A: return 1;
      case KroneckerKind::C: return 2;
      case KroneckerKind::D: return 3;
      case KroneckerKind::DGeneralized: return 4;
    }
    return 5;
  };
  if (rank_of(x.kind) != rank_of(y.kind)) return rank_of(x.kind) < rank_of(y.kind);
  if (x.m != y.m) return x.m < y.m;
  if (x.eigen && y.eigen && !f.eq(*x.eigen, *y.eigen)) return *x.eigen < *y.eigen;
  for (std::size_t k = 0; k < std::min(x.poly.size(), y.poly.size()); ++k)
    if (!f.eq(x.poly[k], y.poly[k])) return x.poly[k] < y.poly[k];
  return x.poly.size() < y.poly.size();
}

template <class F>
bool same_block(const F& f, const KroneckerBlock<F>& x, const KroneckerBlock<F>& y) {
  if (x.kind != y.kind || x.m != y.m || x.eigen.has_value() != y.eigen.has_value()) return false;
  if (x.eigen && !f.eq(*x.eigen, *y.eigen)) return false;
  if (x.poly.size() != y.poly.size()) return false;
  for (std::size_t k = 0; k < x.poly.size(); ++k)
    if (!f.eq(x.poly[k], y.poly[k])) return false;
  return true;
}

template <class F>
struct KroneckerDecomposition {
  std::vector<KroneckerBlock<F>> blocks;
  Matrix<F> P;  // n0 × n0
  Matrix<F> Q;  // n1 × n1
};

/// Block-diagonal pencil assembled from blocks in the given order.
template <class F>
std::pair<Matrix<F>, Matrix<F>> assemble_blocks(const F& f, const std::vector<KroneckerBlock<F>>& blocks) {
  std::size_t rows = 0, cols = 0;
  for (const auto& b : blocks) {
    rows += b.rows();
    cols += b.cols();
  }
  Matrix<F> b1(f, rows, cols), b2(f, rows, cols);
  std::size_t r = 0, c = 0;
  for (const auto& b : blocks) {
    const auto [x1, x2] = b.matrices(f);
    b1.set_block(r, c, x1);
    b2.set_block(r, c, x2);
    r += b.rows();
    c += b.cols();
  }
  return {std::move(b1), std::move(b2)};
}

namespace kron_detail {

template <class F>
using Vec = typename Matrix<F>::Vec;

template <class F>
Matrix<F> columns_of(const F& f, std::size_t n, const std::vector<Vec<F>>& vs) {
  return Matrix<F>::from_rows(f, vs, n).transpose();
}

/// Columns of `basis` followed by standard vectors completing them to a basis.
template <class F>
Matrix<F> complete_basis(const Matrix<F>& basis) {
  const F& f = basis.field();
  const std::size_t n = basis.rows();
  const auto s = Subspace<F>::column_span(basis);
  require(s.dim() == basis.cols(), ErrorCode::InternalError, "basis vectors are dependent");
  const auto comp = s.complement_indices();
  Matrix<F> out(f, n, n);
  out.set_block(0, 0, basis);
  for (std::size_t k = 0; k < comp.size(); ++k) out(comp[k], basis.cols() + k) = f.one();
  return out;
}

template <class F>
struct Split {
  std::size_t m;
  Matrix<F> S0, S1;  // S0⁻¹ R_α S1 = diag(b_m, rest)
};

/// Splits off one b-block of least size, if the pencil has one.
template <class F>
std::optional<Split<F>> split_b(const Matrix<F>& r1, const Matrix<F>& r2) {
  const F& f = r1.field();
  const std::size_t k0 = r1.rows(), k1 = r1.cols();
  for (std::size_t m = 0; m + 1 <= k1 && m <= k0; ++m) {
    // Unknowns v_0..v_m ∈ F^k1; equations R1 v_k − R2 v_{k−1} = 0 for k = 0..m+1.
    Matrix<F> t(f, (m + 2) * k0, (m + 1) * k1);
    for (std::size_t k = 0; k <= m + 1; ++k) {
      if (k <= m) t.set_block(k * k0, k * k1, r1);
      if (k >= 1) t.set_block(k * k0, (k - 1) * k1, -r2);
    }
    const auto ker = kernel_vectors(t);
    if (ker.empty()) continue;
    const auto& sol = ker.front();
    std::vector<Vec<F>> v(m + 1);
    for (std::size_t k = 0; k <= m; ++k) v[k] = Vec<F>(sol.begin() + k * k1, sol.begin() + (k + 1) * k1);
    // V1' basis e_k = v_{m−k}; V0' basis f_j = R2 v_{m−1−j}.
    std::vector<Vec<F>> e1, e0;
    for (std::size_t k = 0; k <= m; ++k) e1.push_back(v[m - k]);
    for (std::size_t jj = 0; jj < m; ++jj) e0.push_back(r2.apply(v[m - 1 - jj]));
    const Matrix<F> s1 = complete_basis(columns_of(f, k1, e1));
    const Matrix<F> s0 = complete_basis(columns_of(f, k0, e0));
    const auto s0i = *inverse(s0);
    const Matrix<F> t1 = s0i * r1 * s1, t2 = s0i * r2 * s1;
    const std::size_t p0 = m, p1 = m + 1;  // block sizes
    const std::size_t q0 = k0 - p0, q1 = k1 - p1;
    const Matrix<F> b1 = t1.block(0, 0, p0, p1), b2 = t2.block(0, 0, p0, p1);
    const Matrix<F> d1 = t1.block(0, p1, p0, q1), d2 = t2.block(0, p1, p0, q1);
    const Matrix<F> rr1 = t1.block(p0, p1, q0, q1), rr2 = t2.block(p0, p1, q0, q1);
    // Solve b_α φ1 − φ0 R̃_α = −D_α for φ1 (p1×q1), φ0 (p0×q0).
    const std::size_t nphi1 = p1 * q1, nphi0 = p0 * q0;
    Matrix<F> sys(f, 2 * p0 * q1, nphi1 + nphi0);
    Matrix<F> rhs(f, 2 * p0 * q1, 1);
    for (std::size_t u = 0; u < nphi1 + nphi0; ++u) {
      Matrix<F> phi1(f, p1, q1), phi0(f, p0, q0);
      if (u < nphi1) phi1(u / q1, u % q1) = f.one();
      else phi0((u - nphi1) / q0, (u - nphi1) % q0) = f.one();
      const Matrix<F> e1m = b1 * phi1 - phi0 * rr1, e2m = b2 * phi1 - phi0 * rr2;
      for (std::size_t k = 0; k < p0 * q1; ++k) {
        sys(k, u) = e1m.data()[k];
        sys(p0 * q1 + k, u) = e2m.data()[k];
      }
    }
    for (std::size_t k = 0; k < p0 * q1; ++k) {
      rhs(k, 0) = f.neg(d1.data()[k]);
      rhs(p0 * q1 + k, 0) = f.neg(d2.data()[k]);
    }
    const auto phi = solve(sys, rhs);
    if (!phi) raise(ErrorCode::InternalError, "b-block does not split off");
    Matrix<F> u1 = Matrix<F>::identity(f, k1), u0 = Matrix<F>::identity(f, k0);
    for (std::size_t u = 0; u < nphi1; ++u) u1(u / q1, p1 + u % q1) = (*phi)(u, 0);
    for (std::size_t u = 0; u < nphi0; ++u) u0((u) / q0, p0 + u % q0) = (*phi)(nphi1 + u, 0);
    return Split<F>{m, s0 * u0, s1 * u1};
  }
  return std::nullopt;
}

/// Jordan chains of a nilpotent matrix: each chain (e_0, ..., e_{h−1}) has
/// N e_0 = 0 and N e_k = e_{k−1}.
template <class F>
std::vector<std::vector<Vec<F>>> nilpotent_chains(const Matrix<F>& n) {
  const F& f = n.field();
  const std::size_t dim = n.rows();
  std::vector<Subspace<F>> ker = {Subspace<F>::zero(f, dim)};
  Matrix<F> power = Matrix<F>::identity(f, dim);
  while (!ker.back().is_full()) {
    power = power * n;
    ker.push_back(Subspace<F>::span(f, dim, kernel_vectors(power)));
    require(ker.size() <= dim + 2, ErrorCode::InternalError, "matrix is not nilpotent");
  }
  const std::size_t h = ker.size() - 1;
  std::vector<std::pair<Vec<F>, std::size_t>> tops;  // (top vector, height)
  auto apply_power = [&](Vec<F> v, std::size_t e) {
    for (std::size_t k = 0; k < e; ++k) v = n.apply(v);
    return v;
  };
  for (std::size_t level = h; level >= 1; --level) {
    Subspace<F> covered = ker[level - 1];
    for (const auto& [t, ht] : tops) covered = covered + Subspace<F>::span(f, dim, {apply_power(t, ht - level)});
    for (const auto& u : ker[level].basis_vectors()) {
      if (covered.contains(u)) continue;
      tops.emplace_back(u, level);
      covered = covered + Subspace<F>::span(f, dim, {u});
    }
  }
  std::vector<std::vector<Vec<F>>> chains;
  for (const auto& [t, ht] : tops) {
    std::vector<Vec<F>> chain(ht);
    for (std::size_t k = 0; k < ht; ++k) chain[k] = apply_power(t, ht - 1 - k);
    chains.push_back(std::move(chain));
  }
  return chains;
}

template <class F>
typename F::Elem determinant(Matrix<F> m) {
  const F& f = m.field();
  const std::size_t n = m.rows();
  typename F::Elem det = f.one();
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t piv = n;
    for (std::size_t i = c; i < n; ++i)
      if (!f.is_zero(m(i, c))) {
        piv = i;
        break;
      }
    if (piv == n) return f.zero();
    if (piv != c) {
      for (std::size_t j = 0; j < n; ++j) std::swap(m(piv, j), m(c, j));
      det = f.neg(det);
    }
    det = f.mul(det, m(c, c));
    const auto inv = f.inv(m(c, c));
    for (std::size_t i = c + 1; i < n; ++i) {
      if (f.is_zero(m(i, c))) continue;
      const auto factor = f.mul(m(i, c), inv);
      for (std::size_t j = c; j < n; ++j) m(i, j) = f.sub(m(i, j), f.mul(factor, m(c, j)));
    }
  }
  return det;
}

/// Candidate eigenvalues of m in the base field, ascending.
template <class F>
std::vector<typename F::Elem> field_eigenvalues(const Matrix<F>& m) {
  const F& f = m.field();
  const std::size_t n = m.rows();
  std::vector<typename F::Elem> out;
  auto is_eigen = [&](const typename F::Elem& a) {
    return rank(m - Matrix<F>::identity(f, n).scaled(a)) < n;
  };
  if constexpr (F::is_finite) {
    for (std::uint32_t a = 0; a < f.order(); ++a)
      if (is_eigen(a)) out.push_back(a);
  } else {
    // Characteristic polynomial by interpolation at 0..n, then rational roots.
    Matrix<F> vand(f, n + 1, n + 1), vals(f, n + 1, 1);
    for (std::size_t t = 0; t <= n; ++t) {
      const auto x = f.from_int(static_cast<long long>(t));
      auto p = f.one();
      for (std::size_t k = 0; k <= n; ++k) {
        vand(t, k) = p;
        p = f.mul(p, x);
      }
      vals(t, 0) = determinant(Matrix<F>::identity(f, n).scaled(x) - m);
    }
    const auto coeffs = *solve(vand, vals);
    mpz_class lcm = 1;
    for (std::size_t k = 0; k <= n; ++k) mpz_lcm(lcm.get_mpz_t(), lcm.get_mpz_t(), coeffs(k, 0).get_den_mpz_t());
    std::vector<mpz_class> c(n + 1);
    for (std::size_t k = 0; k <= n; ++k) {
      mpq_class v = coeffs(k, 0) * lcm;
      c[k] = v.get_num();
    }
    std::size_t low = 0;
    while (low <= n && c[low] == 0) ++low;
    if (low > 0) out.push_back(f.zero());
    auto divisors = [](mpz_class v) {
      v = abs(v);
      std::vector<mpz_class> ds;
      if (v > mpz_class("1000000000000")) return ds;  // too large to factor by trial division
      for (mpz_class d = 1; d * d <= v; ++d)
        if (v % d == 0) {
          ds.push_back(d);
          if (d * d != v) ds.push_back(v / d);
        }
      return ds;
    };
    if (low <= n) {
      const auto num = divisors(c[low]), den = divisors(c[n]);
      for (const auto& p : num)
        for (const auto& q : den)
          for (int sign : {1, -1}) {
            mpq_class cand(p * sign, q);
            cand.canonicalize();
            if (std::find(out.begin(), out.end(), cand) == out.end() && is_eigen(cand)) out.push_back(cand);
          }
    }
    std::sort(out.begin(), out.end());
  }
  return out;
}

/// Restriction of m to an invariant subspace spanned by the columns of b.
template <class F>
Matrix<F> restrict_to(const Matrix<F>& m, const Matrix<F>& b) {
  const auto r = solve(b, m * b);
  if (!r) raise(ErrorCode::InternalError, "subspace is not invariant");
  return *r;
}

/// Degree and coefficients (monic, low first) of the minimal polynomial of v.
template <class F>
std::pair<std::size_t, Vec<F>> local_min_poly(const Matrix<F>& m, const Vec<F>& v) {
  const F& f = m.field();
  const std::size_t n = m.rows();
  std::vector<Vec<F>> krylov = {v};
  while (true) {
    const Vec<F> next = m.apply(krylov.back());
    const Matrix<F> k = columns_of(f, n, krylov);
    const auto sol = solve(k, Matrix<F>::column(f, next));
    if (sol) {
      Vec<F> poly;
      for (std::size_t t = 0; t < krylov.size(); ++t) poly.push_back(f.neg((*sol)(t, 0)));
      poly.push_back(f.one());
      return {krylov.size(), poly};
    }
    krylov.push_back(next);
  }
}

/// Invariant factors of m with a basis realizing the companion blocks.
template <class F>
std::vector<std::pair<Vec<F>, std::vector<Vec<F>>>> cyclic_decomposition(const Matrix<F>& m) {
  const F& f = m.field();
  const std::size_t n = m.rows();
  std::vector<std::pair<Vec<F>, std::vector<Vec<F>>>> out;
  if (n == 0) return out;
  // Degree of the minimal polynomial of m.
  std::size_t deg_min = 0;
  {
    std::vector<Vec<F>> powers;
    Matrix<F> p = Matrix<F>::identity(f, n);
    while (true) {
      powers.push_back(p.data());
      if (Subspace<F>::span(f, n * n, powers).dim() < powers.size()) break;
      p = p * m;
    }
    deg_min = powers.size() - 1;
  }
  // A vector whose local minimal polynomial has that degree.
  std::optional<Vec<F>> gen;
  std::vector<Vec<F>> candidates;
  for (std::size_t k = 0; k < n; ++k) {
    Vec<F> e(n, f.zero());
    e[k] = f.one();
    candidates.push_back(e);
  }
  std::mt19937 rng(7);
  for (int t = 0; t < 200; ++t) {
    Vec<F> v(n);
    for (auto& x : v) {
      if constexpr (F::is_finite) x = f.random(rng);
      else x = f.from_int(std::uniform_int_distribution<int>(-3, 3)(rng));
    }
    candidates.push_back(v);
  }
  Vec<F> poly;
  for (const auto& v : candidates) {
    bool zero = true;
    for (const auto& x : v) zero = zero && f.is_zero(x);
    if (zero) continue;
    auto [deg, p] = local_min_poly(m, v);
    if (deg == deg_min) {
      gen = v;
      poly = p;
      break;
    }
  }
  if (!gen) raise(ErrorCode::InternalError, "no cyclic vector of maximal degree found");
  std::vector<Vec<F>> cyc = {*gen};
  for (std::size_t k = 1; k < deg_min; ++k) cyc.push_back(m.apply(cyc.back()));
  // Invariant complement {x : φ(m^t x) = 0, t < deg} for φ dual to the last Krylov vector.
  const Matrix<F> kcols = columns_of(f, n, cyc);
  Matrix<F> target(f, deg_min, 1);
  target(deg_min - 1, 0) = f.one();
  const auto phi = solve(kcols.transpose(), target);
  require(phi.has_value(), ErrorCode::InternalError, "Krylov vectors are dependent");
  Matrix<F> conds(f, deg_min, n);
  Matrix<F> row = phi->transpose();
  for (std::size_t t = 0; t < deg_min; ++t) {
    conds.set_block(t, 0, row);
    row = row * m;
  }
  const auto comp = kernel_vectors(conds);
  out.emplace_back(poly, cyc);
  if (!comp.empty()) {
    const Matrix<F> cb = columns_of(f, n, comp);
    const Matrix<F> mr = restrict_to(m, cb);
    for (auto& [p, vs] : cyclic_decomposition(mr)) {
      std::vector<Vec<F>> lifted;
      for (const auto& v : vs) lifted.push_back(cb.apply(v));
      out.emplace_back(p, lifted);
    }
  }
  return out;
}

template <class F>
struct PlacedBlock {
  KroneckerBlock<F> block;
  std::vector<Vec<F>> v0;  // columns in V0 (original coordinates)
  std::vector<Vec<F>> v1;  // columns in V1
};

}  // namespace kron_detail

template <class F>
KroneckerDecomposition<F> kronecker_decompose(const Matrix<F>& B1, const Matrix<F>& B2) {
  using namespace kron_detail;
  using V = Vec<F>;
  require(B1.rows() == B2.rows() && B1.cols() == B2.cols(), ErrorCode::DimensionMismatch, "pencil shapes differ");
  if (!(B1.field() == B2.field())) raise(ErrorCode::FieldMismatch, "pencil over different fields");
  const F f = B1.field();
  const std::size_t n0 = B1.rows(), n1 = B1.cols();

  // Remaining pencil: B_α X1 = X0 R_α, with X0, X1 bases (as columns) in the original spaces.
  Matrix<F> x0 = Matrix<F>::identity(f, n0), x1 = Matrix<F>::identity(f, n1);
  Matrix<F> r1 = B1, r2 = B2;
  std::vector<PlacedBlock<F>> placed;
  auto cols = [](const Matrix<F>& m, std::size_t from, std::size_t count) {
    std::vector<V> out;
    for (std::size_t k = from; k < from + count; ++k) out.push_back(m.col_vec(k));
    return out;
  };

  // b-blocks.
  while (auto sp = split_b(r1, r2)) {
    const std::size_t m = sp->m;
    const auto s0i = *inverse(sp->S0);
    const Matrix<F> t1 = s0i * r1 * sp->S1, t2 = s0i * r2 * sp->S1;
    x0 = x0 * sp->S0;
    x1 = x1 * sp->S1;
    placed.push_back({{KroneckerKind::B, m, std::nullopt, {}}, cols(x0, 0, m), cols(x1, 0, m + 1)});
    const std::size_t q0 = r1.rows() - m, q1 = r1.cols() - m - 1;
    r1 = t1.block(m, m + 1, q0, q1);
    r2 = t2.block(m, m + 1, q0, q1);
    x0 = x0.block(0, m, n0, q0);
    x1 = x1.block(0, m + 1, n1, q1);
  }
  // a-blocks: b-blocks of the transposed pencil.
  while (auto sp = split_b(r1.transpose(), r2.transpose())) {
    const std::size_t m = sp->m;
    // S0t⁻¹ Rᵀ S1t = diag(b, ·)  ⇒  S1tᵀ R S0t⁻ᵀ = diag(a, ·).
    const Matrix<F> new0 = *inverse(sp->S1.transpose());
    const Matrix<F> new1 = *inverse(sp->S0.transpose());
    const auto n0i = *inverse(new0);
    const Matrix<F> t1 = n0i * r1 * new1, t2 = n0i * r2 * new1;
    x0 = x0 * new0;
    x1 = x1 * new1;
    placed.push_back({{KroneckerKind::A, m, std::nullopt, {}}, cols(x0, 0, m + 1), cols(x1, 0, m)});
    const std::size_t q0 = r1.rows() - m - 1, q1 = r1.cols() - m;
    r1 = t1.block(m + 1, m, q0, q1);
    r2 = t2.block(m + 1, m, q0, q1);
    x0 = x0.block(0, m + 1, n0, q0);
    x1 = x1.block(0, m, n1, q1);
  }
  require(r1.rows() == r1.cols(), ErrorCode::InternalError, "remaining pencil is not square");

  // Regular part.
  const std::size_t k = r1.rows();
  if (k > 0) {
    Subspace<F> w = Subspace<F>::span(f, k, kernel_vectors(r2));
    while (true) {
      const Subspace<F> next = w.image(r1).preimage(r2);
      if (next.dim() == w.dim()) break;
      w = next;
    }
    Subspace<F> z = Subspace<F>::full(f, k);
    while (true) {
      const Subspace<F> next = z.image(r2).preimage(r1);
      if (next.dim() == z.dim()) break;
      z = next;
    }
    require(w.dim() + z.dim() == k, ErrorCode::InternalError, "Wong sequences do not split the regular part");
    const Matrix<F> wb = w.columns(), zb = z.columns();
    const Matrix<F> wcols1 = x1 * wb, zcols1 = x1 * zb;
    const Matrix<F> w0 = r1 * wb, z0 = r2 * zb;  // bases of the V0 parts, local coordinates

    // c-part: R1 restricted is invertible, N = R1|⁻¹ R2| nilpotent.
    if (w.dim() > 0) {
      const Matrix<F> nmat = *solve(w0, r2 * wb);
      for (const auto& chain : nilpotent_chains(nmat)) {
        PlacedBlock<F> pb{{KroneckerKind::C, chain.size(), std::nullopt, {}}, {}, {}};
        for (const auto& e : chain) {
          pb.v1.push_back(wcols1.apply(e));
          pb.v0.push_back(x0.apply(w0.apply(e)));
        }
        placed.push_back(std::move(pb));
      }
    }
    // d-part: R2 restricted is invertible, M = R2|⁻¹ R1|.
    if (z.dim() > 0) {
      Matrix<F> mmat = *solve(z0, r1 * zb);
      // Remaining invariant subspace of M, basis as columns in z-coordinates.
      Matrix<F> u = Matrix<F>::identity(f, z.dim());
      auto place = [&](const V& local, PlacedBlock<F>& pb) {
        pb.v1.push_back(zcols1.apply(local));
        pb.v0.push_back(x0.apply(z0.apply(local)));
      };
      for (const auto& a : field_eigenvalues(mmat)) {
        const std::size_t dim = u.cols();
        if (dim == 0) break;
        const Matrix<F> mu = restrict_to(mmat, u);
        const Matrix<F> shifted = mu - Matrix<F>::identity(f, dim).scaled(a);
        Matrix<F> power = Matrix<F>::identity(f, dim);
        for (std::size_t t = 0; t < dim; ++t) power = power * shifted;
        const auto kerv = kernel_vectors(power);
        if (kerv.empty()) continue;
        const Matrix<F> kb = columns_of(f, dim, kerv);
        const Matrix<F> nil = restrict_to(shifted, kb);
        for (const auto& chain : nilpotent_chains(nil)) {
          PlacedBlock<F> pb{{KroneckerKind::D, chain.size(), a, {}}, {}, {}};
          for (const auto& e : chain) place(u.apply(kb.apply(e)), pb);
          placed.push_back(std::move(pb));
        }
        const Subspace<F> img = Subspace<F>::column_span(power);
        u = u * img.columns();
      }
      if (u.cols() > 0) {
        const Matrix<F> mu = restrict_to(mmat, u);
        for (const auto& [poly, vs] : cyclic_decomposition(mu)) {
          PlacedBlock<F> pb{{KroneckerKind::DGeneralized, vs.size(), std::nullopt, poly}, {}, {}};
          for (const auto& e : vs) place(u.apply(e), pb);
          placed.push_back(std::move(pb));
        }
      }
    }
  }

  std::stable_sort(placed.begin(), placed.end(),
                   [&](const PlacedBlock<F>& a, const PlacedBlock<F>& b) { return block_less(f, a.block, b.block); });
  KroneckerDecomposition<F> out;
  std::vector<V> all0, all1;
  for (auto& pb : placed) {
    out.blocks.push_back(pb.block);
    all0.insert(all0.end(), pb.v0.begin(), pb.v0.end());
    all1.insert(all1.end(), pb.v1.begin(), pb.v1.end());
  }
  const Matrix<F> c0 = all0.empty() ? Matrix<F>(f, n0, 0) : columns_of(f, n0, all0);
  const Matrix<F> c1 = all1.empty() ? Matrix<F>(f, n1, 0) : columns_of(f, n1, all1);
  require(c0.cols() == n0 && c1.cols() == n1, ErrorCode::InternalError, "block bases have the wrong size");
  const auto p = inverse(c0);
  require(p.has_value() && is_invertible(c1), ErrorCode::InternalError, "block bases are not bases");
  out.P = *p;
  out.Q = c1;
  const auto [e1, e2] = assemble_blocks(f, out.blocks);
  require(out.P * B1 * out.Q == e1 && out.P * B2 * out.Q == e2, ErrorCode::InternalError,
          "canonical form verification failed");
  return out;
}

}  // namespace adhm
