#pragma once

// Subspaces of F^n in canonical reduced row-echelon form, their lattice
// operations, and exhaustive enumeration over finite fields.

#include <functional>
#include <map>
#include <mutex>
#include <string>
#include <vector>

#include "adhm/exactla/elimination.hpp"

namespace adhm {

template <class F>
class Subspace {
 public:
  using Elem = typename F::Elem;
  using Vec = typename Matrix<F>::Vec;

  Subspace() = default;

  static Subspace zero(F field, std::size_t n) { return Subspace(field, n, Matrix<F>(field, 0, n), {}); }

  static Subspace full(F field, std::size_t n) {
    std::vector<std::size_t> piv(n);
    for (std::size_t i = 0; i < n; ++i) piv[i] = i;
    return Subspace(field, n, Matrix<F>::identity(field, n), std::move(piv));
  }

  /// Span of the rows of `rows` (a k×n matrix).
  static Subspace row_span(const Matrix<F>& rows) {
    auto e = rref(rows);
    const std::size_t rk = e.rank();
    return Subspace(rows.field(), rows.cols(), e.reduced.block(0, 0, rk, rows.cols()), std::move(e.pivots));
  }

  /// Span of the columns of an n×k matrix.
  static Subspace column_span(const Matrix<F>& cols) { return row_span(cols.transpose()); }

  static Subspace span(F field, std::size_t n, const std::vector<Vec>& vectors) {
    return row_span(Matrix<F>::from_rows(field, vectors, n));
  }

  /// Assumes `basis` is already in reduced echelon form with the given pivots.
  static Subspace from_echelon(Matrix<F> basis, std::vector<std::size_t> pivots) {
    const F field = basis.field();
    const std::size_t n = basis.cols();
    return Subspace(field, n, std::move(basis), std::move(pivots));
  }

  const F& field() const { return field_; }
  std::size_t ambient() const { return n_; }
  std::size_t dim() const { return pivots_.size(); }
  std::size_t codim() const { return n_ - dim(); }
  bool is_zero() const { return dim() == 0; }
  bool is_full() const { return dim() == n_; }
  const Matrix<F>& basis() const { return basis_; }
  const std::vector<std::size_t>& pivots() const { return pivots_; }

  std::vector<Vec> basis_vectors() const {
    std::vector<Vec> out;
    for (std::size_t i = 0; i < dim(); ++i) out.push_back(basis_.row_vec(i));
    return out;
  }

  /// n×dim matrix whose columns are the basis.
  Matrix<F> columns() const { return basis_.transpose(); }

  /// v reduced modulo the subspace (zero iff v lies in it).
  Vec reduce(Vec v) const {
    require(v.size() == n_, ErrorCode::DimensionMismatch, "vector length does not match ambient");
    for (std::size_t i = 0; i < dim(); ++i) {
      const Elem c = v[pivots_[i]];
      if (field_.is_zero(c)) continue;
      for (std::size_t j = pivots_[i]; j < n_; ++j) v[j] = field_.sub(v[j], field_.mul(c, basis_(i, j)));
    }
    return v;
  }

  bool contains(const Vec& v) const {
    const Vec r = reduce(v);
    for (const auto& e : r)
      if (!field_.is_zero(e)) return false;
    return true;
  }

  bool contains(const Subspace& other) const {
    check_compatible(other);
    if (other.dim() > dim()) return false;
    for (std::size_t i = 0; i < other.dim(); ++i)
      if (!contains(other.basis_.row_vec(i))) return false;
    return true;
  }

  /// Coordinates of a member vector in the echelon basis.
  Vec coordinates(const Vec& v) const {
    Vec c;
    c.reserve(dim());
    for (auto p : pivots_) c.push_back(v[p]);
    return c;
  }

  /// Indices of the standard basis vectors spanning the canonical complement.
  std::vector<std::size_t> complement_indices() const {
    std::vector<bool> piv(n_, false);
    for (auto p : pivots_) piv[p] = true;
    std::vector<std::size_t> out;
    for (std::size_t j = 0; j < n_; ++j)
      if (!piv[j]) out.push_back(j);
    return out;
  }

  /// Coordinates of v + S in the quotient F^n / S, relative to complement_indices().
  Vec quotient_coordinates(const Vec& v) const {
    const Vec r = reduce(v);
    Vec out;
    for (auto j : complement_indices()) out.push_back(r[j]);
    return out;
  }

  /// Matrix of the quotient map F^n -> F^n / S.
  Matrix<F> quotient_map() const {
    const auto comp = complement_indices();
    Matrix<F> q(field_, comp.size(), n_);
    for (std::size_t j = 0; j < n_; ++j) {
      Vec e(n_, field_.zero());
      e[j] = field_.one();
      const Vec c = quotient_coordinates(e);
      for (std::size_t i = 0; i < comp.size(); ++i) q(i, j) = c[i];
    }
    return q;
  }

  /// Rows spanning {y : y·s = 0 for all s in S}.
  Matrix<F> annihilator() const {
    const auto ker = kernel_vectors(basis_);
    return Matrix<F>::from_rows(field_, ker, n_);
  }

  friend Subspace operator+(const Subspace& a, const Subspace& b) {
    a.check_compatible(b);
    if (a.is_zero() || b.contains(a)) return b;
    if (b.is_zero() || a.contains(b)) return a;
    return row_span(vstack<F>({a.basis_, b.basis_}));
  }

  Subspace intersect(const Subspace& b) const {
    check_compatible(b);
    if (is_zero() || b.is_full()) return *this;
    if (b.is_zero() || is_full()) return b;
    // v = basisᵀ c lies in b iff ann(b) basisᵀ c = 0.
    const Matrix<F> coeffs = kernel_matrix(b.annihilator() * basis_.transpose());
    return row_span((basis_.transpose() * coeffs).transpose());
  }

  /// Image under m : F^n -> F^m.
  Subspace image(const Matrix<F>& m) const {
    require(m.cols() == n_, ErrorCode::DimensionMismatch, "image: map source does not match ambient");
    if (is_zero()) return zero(field_, m.rows());
    return row_span((m * basis_.transpose()).transpose());
  }

  /// {v : m v ∈ S} for m : F^k -> F^n.
  Subspace preimage(const Matrix<F>& m) const {
    require(m.rows() == n_, ErrorCode::DimensionMismatch, "preimage: map target does not match ambient");
    if (is_full()) return full(field_, m.cols());
    const Matrix<F> ann = annihilator();
    const auto ker = kernel_vectors(ann * m);
    return span(field_, m.cols(), ker);
  }

  friend bool operator==(const Subspace& a, const Subspace& b) {
    return a.n_ == b.n_ && a.pivots_ == b.pivots_ && a.basis_ == b.basis_;
  }
  friend bool operator!=(const Subspace& a, const Subspace& b) { return !(a == b); }

  /// Total order on equal-ambient subspaces: dimension, pivots, entries.
  friend bool operator<(const Subspace& a, const Subspace& b) {
    if (a.dim() != b.dim()) return a.dim() < b.dim();
    if (a.pivots_ != b.pivots_) return a.pivots_ < b.pivots_;
    for (std::size_t k = 0; k < a.basis_.data().size(); ++k) {
      const std::string x = a.field_.to_string(a.basis_.data()[k]), y = b.field_.to_string(b.basis_.data()[k]);
      if (x != y) return x < y;
    }
    return false;
  }

  std::string to_string() const { return "span" + basis_.to_string(); }

 private:
  Subspace(F field, std::size_t n, Matrix<F> basis, std::vector<std::size_t> pivots)
      : field_(field), n_(n), basis_(std::move(basis)), pivots_(std::move(pivots)) {}

  void check_compatible(const Subspace& other) const {
    if (!(field_ == other.field_)) raise(ErrorCode::FieldMismatch, "subspaces over different fields");
    require(n_ == other.n_, ErrorCode::DimensionMismatch, "subspaces of different ambient spaces");
  }

  F field_{};
  std::size_t n_ = 0;
  Matrix<F> basis_;
  std::vector<std::size_t> pivots_;
};

/// Kernel, image and rank of a matrix in one pass.
template <class F>
struct RankKernel {
  std::size_t rank;
  Subspace<F> kernel;  // inside F^cols
  Subspace<F> image;   // inside F^rows
};

template <class F>
RankKernel<F> rank_kernel(const Matrix<F>& m) {
  auto ker = Subspace<F>::span(m.field(), m.cols(), kernel_vectors(m));
  auto img = Subspace<F>::column_span(m);
  const std::size_t rk = img.dim();
  return {rk, std::move(ker), std::move(img)};
}

// ---------------------------------------------------------------------------
// Enumeration over finite fields
// ---------------------------------------------------------------------------

/// Default cap on the number of subspaces an enumeration may produce
/// (admits F_2^6 with 2825 subspaces and F_3^5 with 2664).
inline constexpr std::uint64_t kDefaultSubspaceBound = 3000;

/// Number of k-dimensional subspaces of F_q^n (saturating at UINT64_MAX).
inline std::uint64_t gaussian_binomial(std::uint64_t n, std::uint64_t k, std::uint64_t q) {
  if (k > n) return 0;
  // Count echelon forms: sum over pivot sets of q^(free entries); use the
  // recurrence G(n,k) = G(n-1,k-1) + q^k G(n-1,k).
  std::vector<std::vector<long double>> g(n + 1, std::vector<long double>(n + 1, 0));
  for (std::uint64_t a = 0; a <= n; ++a) {
    g[a][0] = 1;
    for (std::uint64_t b = 1; b <= a; ++b) {
      long double qb = 1;
      for (std::uint64_t t = 0; t < b; ++t) qb *= static_cast<long double>(q);
      g[a][b] = g[a - 1][b - 1] + (b <= a - 1 ? qb * g[a - 1][b] : 0);
    }
  }
  const long double v = g[n][k];
  if (v >= 1.8e19L) return UINT64_MAX;
  return static_cast<std::uint64_t>(v + 0.5L);
}

inline std::uint64_t subspace_count(std::uint64_t n, std::uint64_t q) {
  std::uint64_t total = 0;
  for (std::uint64_t k = 0; k <= n; ++k) {
    const std::uint64_t g = gaussian_binomial(n, k, q);
    if (g == UINT64_MAX || total + g < total) return UINT64_MAX;
    total += g;
  }
  return total;
}

/// Calls `visit` for every subspace of F^n: by dimension, then pivot set in
/// lexicographic order, then free entries lexicographically. `visit` returns
/// false to stop early.
template <class F>
void enumerate_subspaces(const F& field, std::size_t n, const std::function<bool(const Subspace<F>&)>& visit,
                         std::uint64_t bound = kDefaultSubspaceBound) {
  if constexpr (!F::is_finite) {
    raise(ErrorCode::UnsupportedField, "subspace enumeration needs a finite field");
  } else {
    const std::uint32_t q = field.order();
    if (subspace_count(n, q) > bound)
      raise(ErrorCode::BoundExceeded, "subspace enumeration of dimension " + std::to_string(n) + " over GF(" +
                                          std::to_string(q) + ") exceeds bound " + std::to_string(bound));
    for (std::size_t k = 0; k <= n; ++k) {
      // Pivot sets as increasing k-tuples.
      std::vector<std::size_t> piv(k);
      for (std::size_t i = 0; i < k; ++i) piv[i] = i;
      while (true) {
        std::vector<bool> is_piv(n, false);
        for (auto p : piv) is_piv[p] = true;
        std::vector<std::pair<std::size_t, std::size_t>> free_slots;
        for (std::size_t i = 0; i < k; ++i)
          for (std::size_t j = piv[i] + 1; j < n; ++j)
            if (!is_piv[j]) free_slots.emplace_back(i, j);
        std::vector<std::uint32_t> digits(free_slots.size(), 0);
        bool done = false;
        while (!done) {
          Matrix<F> b(field, k, n);
          for (std::size_t i = 0; i < k; ++i) b(i, piv[i]) = field.one();
          for (std::size_t s = 0; s < free_slots.size(); ++s) b(free_slots[s].first, free_slots[s].second) = digits[s];
          if (!visit(Subspace<F>::from_echelon(std::move(b), piv))) return;
          bool carry = true;
          for (std::size_t s = free_slots.size(); carry && s-- > 0;) {
            if (++digits[s] < q) carry = false;
            else digits[s] = 0;
          }
          done = carry;
        }
        // Next pivot set.
        std::size_t i = k;
        while (i > 0 && piv[i - 1] == n - k + i - 1) --i;
        if (i == 0) break;
        ++piv[i - 1];
        for (std::size_t t = i; t < k; ++t) piv[t] = piv[t - 1] + 1;
      }
    }
  }
}

template <class F>
std::vector<Subspace<F>> all_subspaces(const F& field, std::size_t n, std::uint64_t bound = kDefaultSubspaceBound) {
  std::vector<Subspace<F>> out;
  enumerate_subspaces<F>(
      field, n,
      [&](const Subspace<F>& s) {
        out.push_back(s);
        return true;
      },
      bound);
  return out;
}

/// Memoized all_subspaces for the finite-field types, shared across calls.
template <class F>
const std::vector<Subspace<F>>& cached_subspaces(const F& field, std::size_t n,
                                                 std::uint64_t bound = kDefaultSubspaceBound) {
  static std::mutex mu;
  static std::map<std::pair<std::string, std::size_t>, std::unique_ptr<std::vector<Subspace<F>>>> cache;
  const FieldSpec spec = field.spec();
  std::string key = spec.name();
  for (auto c : spec.modulus) key += "," + std::to_string(c);
  if (subspace_count(n, spec.is_finite() ? spec.order() : 0) > bound)
    raise(ErrorCode::BoundExceeded, "subspace enumeration exceeds bound");
  std::lock_guard<std::mutex> lock(mu);
  auto& slot = cache[{key, n}];
  if (!slot) slot = std::make_unique<std::vector<Subspace<F>>>(all_subspaces(field, n, bound));
  return *slot;
}

}  // namespace adhm
