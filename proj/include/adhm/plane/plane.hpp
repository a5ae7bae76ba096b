#pragma once

// ADHM data (B1, B2, i, j) on the plane, the two descents from blowup data,
// invariant coordinates, and the lift with d = id.

#include <set>

#include "adhm/quiver/enumerate.hpp"
#include "adhm/quiver/hom.hpp"
#include "adhm/stability/conditions.hpp"

namespace adhm {

template <class F>
struct PlaneADHM {
  F field;
  std::size_t n = 0, r = 0;
  Matrix<F> B1, B2, i, j;

  static PlaneADHM zero(F field, std::size_t n, std::size_t r) {
    return {field, n, r, Matrix<F>(field, n, n), Matrix<F>(field, n, n), Matrix<F>(field, n, r),
            Matrix<F>(field, r, n)};
  }

  void validate() const {
    const bool ok = B1.rows() == n && B1.cols() == n && B2.rows() == n && B2.cols() == n && i.rows() == n &&
                    i.cols() == r && j.rows() == r && j.cols() == n;
    require(ok, ErrorCode::DimensionMismatch, "plane ADHM shapes are inconsistent");
  }

  friend bool operator==(const PlaneADHM& a, const PlaneADHM& b) {
    return a.n == b.n && a.r == b.r && a.B1 == b.B1 && a.B2 == b.B2 && a.i == b.i && a.j == b.j;
  }
};

/// [B1, B2] + ij.
template <class F>
Matrix<F> plane_residual(const PlaneADHM<F>& a) {
  return a.B1 * a.B2 - a.B2 * a.B1 + a.i * a.j;
}

template <class F>
bool is_flat(const PlaneADHM<F>& a) {
  return plane_residual(a).is_zero();
}

enum class PlaneCondition { Stable, Costable };

template <class F>
struct PlaneVerdict {
  bool holds = false;
  /// Stable: the B-closure of Im i when proper. Costable: the largest
  /// B-invariant subspace of Ker j when nonzero.
  std::optional<Subspace<F>> witness;
};

/// Smallest subspace containing s and invariant under B1, B2.
template <class F>
Subspace<F> invariant_closure(const Matrix<F>& b1, const Matrix<F>& b2, Subspace<F> s) {
  while (true) {
    const Subspace<F> next = s + s.image(b1) + s.image(b2);
    if (next.dim() == s.dim()) return s;
    s = next;
  }
}

/// Largest subspace inside s invariant under B1, B2.
template <class F>
Subspace<F> invariant_core(const Matrix<F>& b1, const Matrix<F>& b2, Subspace<F> s) {
  while (true) {
    const Subspace<F> next = s.intersect(s.preimage(b1)).intersect(s.preimage(b2));
    if (next.dim() == s.dim()) return s;
    s = next;
  }
}

template <class F>
PlaneVerdict<F> plane_stability(const PlaneADHM<F>& a, PlaneCondition which) {
  a.validate();
  PlaneVerdict<F> v;
  if (which == PlaneCondition::Stable) {
    const Subspace<F> t = invariant_closure(a.B1, a.B2, Subspace<F>::column_span(a.i));
    v.holds = t.is_full();
    if (!v.holds) v.witness = t;
  } else {
    const Subspace<F> s = invariant_core(a.B1, a.B2, Subspace<F>::span(a.field, a.n, kernel_vectors(a.j)));
    v.holds = s.is_zero();
    if (!v.holds) v.witness = s;
  }
  return v;
}

enum class PlaneSide { Left, Right };

/// Left: (dB1, dB2, di, j) on V1. Right: (B1d, B2d, i, jd) on V0.
template <class F>
PlaneADHM<F> to_plane(const BlowupRep<F>& x, PlaneSide side) {
  if (side == PlaneSide::Left) return {x.field, x.n1, x.r, x.d * x.B1, x.d * x.B2, x.d * x.i, x.j};
  return {x.field, x.n0, x.r, x.B1 * x.d, x.B2 * x.d, x.i, x.j * x.d};
}

/// Words over {B1, B2} of length 1..L, length first, then lexicographic with B1 < B2.
inline std::vector<std::vector<int>> plane_words(std::size_t max_len, bool include_empty = false) {
  std::vector<std::vector<int>> out;
  if (include_empty) out.push_back({});
  for (std::size_t len = 1; len <= max_len; ++len)
    for (std::size_t code = 0; code < (std::size_t{1} << len); ++code) {
      std::vector<int> w(len);
      for (std::size_t k = 0; k < len; ++k) w[k] = static_cast<int>((code >> (len - 1 - k)) & 1U) + 1;
      out.push_back(std::move(w));
    }
  return out;
}

template <class F>
Matrix<F> evaluate_word(const PlaneADHM<F>& a, const std::vector<int>& word) {
  Matrix<F> m = Matrix<F>::identity(a.field, a.n);
  for (int letter : word) m = m * (letter == 1 ? a.B1 : a.B2);
  return m;
}

/// tr(word) for words of length 1..L, then the entries of j·word·i (row-major)
/// for words of length 0..L.
template <class F>
std::vector<typename F::Elem> invariant_coords(const PlaneADHM<F>& a, std::size_t max_len) {
  require(max_len >= 1, ErrorCode::PreconditionViolated, "word length bound must be at least 1");
  const F& f = a.field;
  std::vector<typename F::Elem> out;
  for (const auto& w : plane_words(max_len)) {
    const Matrix<F> m = evaluate_word(a, w);
    typename F::Elem t = f.zero();
    for (std::size_t k = 0; k < a.n; ++k) t = f.add(t, m(k, k));
    out.push_back(t);
  }
  for (const auto& w : plane_words(max_len, true)) {
    const Matrix<F> m = a.j * evaluate_word(a, w) * a.i;
    out.insert(out.end(), m.data().begin(), m.data().end());
  }
  return out;
}

/// (B1, B2, d = id, i, j) on V0 = V1 = V.
template <class F>
BlowupRep<F> c1zero_lift(const PlaneADHM<F>& a) {
  a.validate();
  require(is_flat(a), ErrorCode::PreconditionViolated, "plane data must satisfy [B1,B2] + ij = 0");
  if (!plane_stability(a, PlaneCondition::Stable).holds) raise(ErrorCode::NotStable, "plane data are not stable");
  return BlowupRep<F>::make(a.B1, a.B2, Matrix<F>::identity(a.field, a.n), a.i, a.j);
}

/// Parameter in the chamber ζ0, ζ1 < 0.
inline StabilityParam zero_chamber_param() { return {Rational(-1), Rational(-1, 2)}; }

/// The lift descends back to the same data on the left and is stable in the
/// chamber ζ0, ζ1 < 0.
template <class F>
bool c1zero_roundtrip(const PlaneADHM<F>& a) {
  const BlowupRep<F> x = c1zero_lift(a);
  return to_plane(x, PlaneSide::Left) == a && zeta_semistable(x, zero_chamber_param()).is_stable();
}

template <class F>
bool d_surjectivity_check(const BlowupRep<F>& x) {
  return rank(x.d) == x.n1;
}

/// A g ∈ GL(V) with (g B g⁻¹, g i, j g⁻¹) = b, if any. Exhaustive over finite
/// fields, a random search over Q.
template <class F>
std::optional<Matrix<F>> find_plane_isomorphism(const PlaneADHM<F>& a, const PlaneADHM<F>& b) {
  if (a.n != b.n || a.r != b.r) return std::nullopt;
  // Framed homs between the lifts with d = id are exactly the g above.
  const Matrix<F> id = Matrix<F>::identity(a.field, a.n);
  const auto xa = BlowupRep<F>{a.field, a.n, a.n, a.r, a.B1, a.B2, id, a.i, a.j};
  const auto xb = BlowupRep<F>{b.field, b.n, b.n, b.r, b.B1, b.B2, id, b.i, b.j};
  const auto h = find_isomorphism(xa, xb, true);
  if (!h) return std::nullopt;
  return h->xi0;
}

/// Visits all plane data of size (n, r) over a finite field, optionally only flat ones.
template <class F>
void visit_plane_data(const F& f, std::size_t n, std::size_t r, bool flat_only,
                      const std::function<bool(const PlaneADHM<F>&)>& visit, std::uint64_t bound = kDefaultRepBound) {
  const std::uint64_t total = detail::checked_power(f.order(), 2 * n * n + 2 * n * r, bound, "plane data count");
  auto a = PlaneADHM<F>::zero(f, n, r);
  for (std::uint64_t idx = 0; idx < total; ++idx) {
    detail::fill_from_index<F>(idx, f.order(), {&a.B1, &a.B2, &a.i, &a.j});
    if (flat_only && !is_flat(a)) continue;
    if (!visit(a)) return;
  }
}

namespace detail {

template <class F>
std::string encode(const std::vector<const Matrix<F>*>& ms) {
  std::string s;
  for (const auto* m : ms)
    for (const auto& e : m->data()) {
      s += m->field().to_string(e);
      s += ',';
    }
  return s;
}

}  // namespace detail

/// Orbit invariant of plane data under GL(V): the least encoding over the orbit.
template <class F>
std::string plane_orbit_key(const PlaneADHM<F>& a, const std::vector<Matrix<F>>& gl) {
  std::string best;
  for (const auto& g : gl) {
    const Matrix<F> gi = *inverse(g);
    const Matrix<F> b1 = g * a.B1 * gi, b2 = g * a.B2 * gi, i = g * a.i, j = a.j * gi;
    const std::string key = detail::encode<F>({&b1, &b2, &i, &j});
    if (best.empty() || key < best) best = key;
  }
  return best;
}

/// Orbit invariant of blowup data under GL(V0) × GL(V1) with W fixed.
template <class F>
std::string blowup_orbit_key(const BlowupRep<F>& x, const std::vector<Matrix<F>>& gl0,
                             const std::vector<Matrix<F>>& gl1) {
  std::string best;
  for (const auto& g0 : gl0)
    for (const auto& g1 : gl1) {
      const BlowupRep<F> y = change_basis(x, g0, g1);
      const std::string key = detail::encode<F>({&y.B1, &y.B2, &y.d, &y.i, &y.j});
      if (best.empty() || key < best) best = key;
    }
  return best;
}

}  // namespace adhm
