#pragma once

// Invariant subspace pairs (S0, S1) of a representation, with the extra
// vertex V_inf either excluded (sInf = 0: S1 ⊂ Ker j) or included
// (sInf = 1: Im i ⊂ S0).

#include <functional>
#include <utility>

#include "adhm/exactla/subspace.hpp"
#include "adhm/quiver/blowup_rep.hpp"

namespace adhm {

template <class F>
struct SubrepPair {
  Subspace<F> S0;  // in V0
  Subspace<F> S1;  // in V1
  int sInf = 0;

  friend bool operator==(const SubrepPair&, const SubrepPair&) = default;

  bool is_zero() const { return S0.is_zero() && S1.is_zero() && sInf == 0; }
};

template <class F>
Subspace<F> kernel_of(const Matrix<F>& m) {
  return Subspace<F>::span(m.field(), m.cols(), kernel_vectors(m));
}

template <class F>
Subspace<F> image_of(const Matrix<F>& m) {
  return Subspace<F>::column_span(m);
}

/// Whether (S0, S1, sInf) satisfies the invariance conditions for x.
template <class F>
bool is_valid_pair(const BlowupRep<F>& x, const SubrepPair<F>& p) {
  if (p.S0.ambient() != x.n0 || p.S1.ambient() != x.n1) return false;
  if (p.sInf != 0 && p.sInf != 1) return false;
  if (!p.S0.contains(p.S1.image(x.B1)) || !p.S0.contains(p.S1.image(x.B2))) return false;
  if (!p.S1.contains(p.S0.image(x.d))) return false;
  if (p.sInf == 0) return p.S1.image(x.j).is_zero();
  return p.S0.contains(image_of(x.i));
}

template <class F>
SubrepPair<F> make_pair(const BlowupRep<F>& x, Subspace<F> s0, Subspace<F> s1, int sInf) {
  SubrepPair<F> p{std::move(s0), std::move(s1), sInf};
  require(is_valid_pair(x, p), ErrorCode::InvalidPair, "subspaces do not form an invariant pair");
  return p;
}

template <class F>
SubrepPair<F> zero_pair(const BlowupRep<F>& x) {
  return {Subspace<F>::zero(x.field, x.n0), Subspace<F>::zero(x.field, x.n1), 0};
}

/// (V0, V1) with V_inf included when the representation is framed.
template <class F>
SubrepPair<F> full_pair(const BlowupRep<F>& x, int sInf = 1) {
  return {Subspace<F>::full(x.field, x.n0), Subspace<F>::full(x.field, x.n1), sInf};
}

/// Smallest invariant pair containing the seeds (plus Im i when sInf = 1).
/// With sInf = 0 the result may leave Ker j; callers check that separately.
template <class F>
SubrepPair<F> generated_pair(const BlowupRep<F>& x, Subspace<F> t0, Subspace<F> t1, int sInf) {
  if (sInf == 1) t0 = t0 + image_of(x.i);
  while (true) {
    const Subspace<F> n1 = t1 + t0.image(x.d);
    const Subspace<F> n0 = t0 + n1.image(x.B1) + n1.image(x.B2);
    if (n0.dim() == t0.dim() && n1.dim() == t1.dim()) break;
    t0 = n0;
    t1 = n1;
  }
  return {std::move(t0), std::move(t1), sInf};
}

/// Largest invariant pair inside (c0, c1), with S1 ⊂ Ker j.
template <class F>
SubrepPair<F> largest_pair_within(const BlowupRep<F>& x, Subspace<F> s0, Subspace<F> s1) {
  s1 = s1.intersect(kernel_of(x.j));
  while (true) {
    const Subspace<F> n0 = s0.intersect(s1.preimage(x.d));
    const Subspace<F> n1 = s1.intersect(n0.preimage(x.B1)).intersect(n0.preimage(x.B2));
    if (n0.dim() == s0.dim() && n1.dim() == s1.dim()) break;
    s0 = n0;
    s1 = n1;
  }
  return {std::move(s0), std::move(s1), 0};
}

/// The least pair with sInf = 1.
template <class F>
SubrepPair<F> closure_min_T(const BlowupRep<F>& x) {
  require(x.r >= 1, ErrorCode::NoFraming, "closure_min_T needs a framed representation");
  return generated_pair(x, Subspace<F>::zero(x.field, x.n0), Subspace<F>::zero(x.field, x.n1), 1);
}

/// The greatest pair with sInf = 0.
template <class F>
SubrepPair<F> closure_max_S(const BlowupRep<F>& x) {
  return largest_pair_within(x, Subspace<F>::full(x.field, x.n0), Subspace<F>::full(x.field, x.n1));
}

/// Visits every valid pair with the given sInf. Pairs come ordered by S1 (in
/// subspace enumeration order) and then S0. `visit` returns false to stop.
template <class F>
void visit_subrep_pairs(const BlowupRep<F>& x, int sInf, const std::function<bool(const SubrepPair<F>&)>& visit,
                        std::uint64_t bound = kDefaultSubspaceBound) {
  if constexpr (!F::is_finite) {
    raise(ErrorCode::UnsupportedField, "subrepresentation enumeration needs a finite field");
  } else {
    const auto& subs0 = cached_subspaces(x.field, x.n0, bound);
    const auto& subs1 = cached_subspaces(x.field, x.n1, bound);
    const Subspace<F> kerj = kernel_of(x.j);
    const Subspace<F> imi = image_of(x.i);
    for (const auto& s1 : subs1) {
      if (sInf == 0 && !kerj.contains(s1)) continue;
      Subspace<F> lower = s1.image(x.B1) + s1.image(x.B2);
      if (sInf == 1) lower = lower + imi;
      const Subspace<F> upper = s1.preimage(x.d);
      if (!upper.contains(lower)) continue;
      for (const auto& s0 : subs0) {
        if (s0.dim() < lower.dim() || s0.dim() > upper.dim()) continue;
        if (!s0.contains(lower) || !upper.contains(s0)) continue;
        if (!visit(SubrepPair<F>{s0, s1, sInf})) return;
      }
    }
  }
}

template <class F>
std::vector<SubrepPair<F>> subrep_pairs(const BlowupRep<F>& x, int sInf,
                                        std::uint64_t bound = kDefaultSubspaceBound) {
  std::vector<SubrepPair<F>> out;
  visit_subrep_pairs<F>(
      x, sInf,
      [&](const SubrepPair<F>& p) {
        out.push_back(p);
        return true;
      },
      bound);
  return out;
}

/// Restriction to the pair and the induced quotient. The sub keeps the framing
/// iff sInf = 1; the quotient keeps it iff sInf = 0.
template <class F>
std::pair<BlowupRep<F>, BlowupRep<F>> sub_quotient(const BlowupRep<F>& x, const SubrepPair<F>& p) {
  require(is_valid_pair(x, p), ErrorCode::InvalidPair, "sub_quotient of an invalid pair");
  const F& f = x.field;
  const Matrix<F> e0 = p.S0.columns(), e1 = p.S1.columns();
  auto coords = [&](const Subspace<F>& s, const Matrix<F>& m) {
    // Columns of m lie in s; express them in the echelon basis of s.
    Matrix<F> c(f, s.dim(), m.cols());
    for (std::size_t col = 0; col < m.cols(); ++col) {
      const auto v = s.coordinates(m.col_vec(col));
      for (std::size_t k = 0; k < v.size(); ++k) c(k, col) = v[k];
    }
    return c;
  };

  BlowupRep<F> sub = BlowupRep<F>::zero(f, p.S0.dim(), p.S1.dim(), p.sInf == 1 ? x.r : 0);
  sub.B1 = coords(p.S0, x.B1 * e1);
  sub.B2 = coords(p.S0, x.B2 * e1);
  sub.d = coords(p.S1, x.d * e0);
  if (p.sInf == 1) {
    sub.i = coords(p.S0, x.i);
    sub.j = x.j * e1;
  }

  const Matrix<F> q0 = p.S0.quotient_map(), q1 = p.S1.quotient_map();
  auto lift = [&](const Subspace<F>& s) {
    const auto comp = s.complement_indices();
    Matrix<F> l(f, s.ambient(), comp.size());
    for (std::size_t k = 0; k < comp.size(); ++k) l(comp[k], k) = f.one();
    return l;
  };
  const Matrix<F> l0 = lift(p.S0), l1 = lift(p.S1);
  BlowupRep<F> quot = BlowupRep<F>::zero(f, p.S0.codim(), p.S1.codim(), p.sInf == 0 ? x.r : 0);
  quot.B1 = q0 * x.B1 * l1;
  quot.B2 = q0 * x.B2 * l1;
  quot.d = q1 * x.d * l0;
  if (p.sInf == 0) {
    quot.i = q0 * x.i;
    quot.j = x.j * l1;
  }
  return {std::move(sub), std::move(quot)};
}

}  // namespace adhm
