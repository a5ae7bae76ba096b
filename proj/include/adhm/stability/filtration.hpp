#pragma once

// Harder–Narasimhan and Jordan–Hölder filtrations with respect to the slope θ
// of the three-vertex quiver, by exhaustive search over a finite field.

#include "adhm/stability/conditions.hpp"

namespace adhm {

template <class F>
struct Filtration {
  /// X = steps[0] ⊃ steps[1] ⊃ ... ⊃ steps.back() = 0.
  std::vector<SubrepPair<F>> steps;
  /// slopes[k] = θ(steps[k] / steps[k+1]).
  std::vector<Rational> slopes;

  std::size_t length() const { return slopes.size(); }
};

/// All subrepresentations of a three-vertex representation (including zero).
template <class F>
std::vector<SubrepPair<F>> all_subreps(const NewQuiverRep<F>& y, std::uint64_t bound = kDefaultSubspaceBound) {
  auto out = subrep_pairs(y.rep, 0, bound);
  if (y.dimInf == 1) {
    auto more = subrep_pairs(y.rep, 1, bound);
    out.insert(out.end(), more.begin(), more.end());
  }
  return out;
}

namespace detail {

template <class F>
bool is_nonzero(const SubrepPair<F>& p) {
  return !(p.S0.is_zero() && p.S1.is_zero() && p.sInf == 0);
}

template <class F>
std::size_t pair_total(const SubrepPair<F>& p) {
  return p.S0.dim() + p.S1.dim() + static_cast<std::size_t>(p.sInf);
}

template <class F>
SubrepPair<F> join(const SubrepPair<F>& a, const SubrepPair<F>& b) {
  return {a.S0 + b.S0, a.S1 + b.S1, std::max(a.sInf, b.sInf)};
}

/// Quotient of y by p as a three-vertex representation, with the maps
/// needed to pull subspaces of the quotient back to y.
template <class F>
struct QuotientData {
  NewQuiverRep<F> quot;
  Matrix<F> q0, q1;
};

template <class F>
QuotientData<F> quotient(const NewQuiverRep<F>& y, const SubrepPair<F>& p) {
  auto [sub, quot] = sub_quotient(y.rep, p);
  (void)sub;
  return {NewQuiverRep<F>{std::move(quot), y.dimInf - p.sInf}, p.S0.quotient_map(), p.S1.quotient_map()};
}

template <class F>
SubrepPair<F> pull_back(const QuotientData<F>& qd, const SubrepPair<F>& base, const SubrepPair<F>& p) {
  return {p.S0.preimage(qd.q0), p.S1.preimage(qd.q1), base.sInf + p.sInf};
}

/// Express `inner` (contained in `outer`) in the coordinates of outer's sub.
template <class F>
SubrepPair<F> relative(const SubrepPair<F>& outer, const SubrepPair<F>& inner) {
  auto rel = [](const Subspace<F>& o, const Subspace<F>& i) {
    std::vector<typename Subspace<F>::Vec> vs;
    for (const auto& v : i.basis_vectors()) vs.push_back(o.coordinates(v));
    return Subspace<F>::span(o.field(), o.dim(), vs);
  };
  return {rel(outer.S0, inner.S0), rel(outer.S1, inner.S1), inner.sInf};
}

}  // namespace detail

/// The sum of all subrepresentations of maximal slope.
template <class F>
SubrepPair<F> maximal_destabilizer(const NewQuiverRep<F>& y, const StabilityParam& zeta, const Rational& zetaInf,
                                   std::uint64_t bound = kDefaultSubspaceBound) {
  std::optional<Rational> best;
  std::optional<SubrepPair<F>> acc;
  for (const auto& p : all_subreps(y, bound)) {
    if (!detail::is_nonzero(p)) continue;
    const Rational s = pair_slope(p, zeta, zetaInf);
    if (!best || s > *best) {
      best = s;
      acc = p;
    } else if (s == *best) {
      acc = detail::join(*acc, p);
    }
  }
  require(acc.has_value(), ErrorCode::ZeroRepresentation, "no nonzero subrepresentation");
  return *acc;
}

/// θ-semistability of a three-vertex representation: no subrepresentation of
/// larger slope.
template <class F>
bool theta_semistable(const NewQuiverRep<F>& y, const StabilityParam& zeta, const Rational& zetaInf,
                      std::uint64_t bound = kDefaultSubspaceBound) {
  if (y.is_zero()) return true;
  const Rational s = slope_theta(y, zeta, zetaInf);
  for (const auto& p : all_subreps(y, bound))
    if (detail::is_nonzero(p) && pair_slope(p, zeta, zetaInf) > s) return false;
  return true;
}

/// θ-stability: every proper nonzero subrepresentation has strictly smaller slope.
template <class F>
bool theta_stable(const NewQuiverRep<F>& y, const StabilityParam& zeta, const Rational& zetaInf,
                  std::uint64_t bound = kDefaultSubspaceBound) {
  if (y.is_zero()) return false;
  const Rational s = slope_theta(y, zeta, zetaInf);
  const std::size_t total = y.total_dim();
  for (const auto& p : all_subreps(y, bound))
    if (detail::is_nonzero(p) && detail::pair_total(p) < total && pair_slope(p, zeta, zetaInf) >= s) return false;
  return true;
}

/// Harder–Narasimhan filtration; ζ_inf is −ζ0 n0 − ζ1 n1 of the input unless given.
template <class F>
Filtration<F> hn_filtration(const NewQuiverRep<F>& y, const StabilityParam& zeta,
                            std::optional<Rational> zetaInf = std::nullopt,
                            std::uint64_t bound = kDefaultSubspaceBound) {
  const Rational zinf = zetaInf ? *zetaInf : zeta.zeta_inf(y.rep.n0, y.rep.n1);
  const BlowupRep<F>& x = y.rep;
  SubrepPair<F> zero = zero_pair(x);
  SubrepPair<F> top{Subspace<F>::full(x.field, x.n0), Subspace<F>::full(x.field, x.n1), y.dimInf};
  // Ascending chain 0 = D0 ⊂ D1 ⊂ ... ⊂ DN = top.
  std::vector<SubrepPair<F>> ascending = {zero};
  std::vector<Rational> piece_slopes;
  SubrepPair<F> current = zero;
  while (detail::pair_total(current) < detail::pair_total(top)) {
    const auto qd = detail::quotient(y, current);
    const SubrepPair<F> dq = maximal_destabilizer(qd.quot, zeta, zinf, bound);
    piece_slopes.push_back(pair_slope(dq, zeta, zinf));
    current = detail::pull_back(qd, current, dq);
    ascending.push_back(current);
  }
  Filtration<F> f;
  f.steps.assign(ascending.rbegin(), ascending.rend());
  f.slopes.assign(piece_slopes.rbegin(), piece_slopes.rend());
  return f;
}

/// Jordan–Hölder filtration of a θ-semistable representation: each step peels
/// off a subrepresentation of the same slope and minimal dimension, which is
/// θ-stable.
template <class F>
Filtration<F> jh_filtration(const NewQuiverRep<F>& y, const StabilityParam& zeta,
                            std::optional<Rational> zetaInf = std::nullopt,
                            std::uint64_t bound = kDefaultSubspaceBound) {
  const Rational zinf = zetaInf ? *zetaInf : zeta.zeta_inf(y.rep.n0, y.rep.n1);
  require(theta_semistable(y, zeta, zinf, bound), ErrorCode::NotSemistable, "JH filtration needs a semistable input");
  const BlowupRep<F>& x = y.rep;
  SubrepPair<F> zero = zero_pair(x);
  SubrepPair<F> top{Subspace<F>::full(x.field, x.n0), Subspace<F>::full(x.field, x.n1), y.dimInf};
  std::vector<SubrepPair<F>> ascending = {zero};
  std::vector<Rational> piece_slopes;
  SubrepPair<F> current = zero;
  if (!y.is_zero()) {
    const Rational s = slope_theta(y, zeta, zinf);
    while (detail::pair_total(current) < detail::pair_total(top)) {
      const auto qd = detail::quotient(y, current);
      std::optional<SubrepPair<F>> best;
      for (const auto& p : all_subreps(qd.quot, bound)) {
        if (!detail::is_nonzero(p) || pair_slope(p, zeta, zinf) != s) continue;
        if (!best || detail::pair_total(p) < detail::pair_total(*best)) best = p;
      }
      require(best.has_value(), ErrorCode::InternalError, "semistable quotient without a subobject of equal slope");
      piece_slopes.push_back(s);
      current = detail::pull_back(qd, current, *best);
      ascending.push_back(current);
    }
  }
  Filtration<F> f;
  f.steps.assign(ascending.rbegin(), ascending.rend());
  f.slopes.assign(piece_slopes.rbegin(), piece_slopes.rend());
  return f;
}

/// Graded pieces steps[k] / steps[k+1] as three-vertex representations.
template <class F>
std::vector<NewQuiverRep<F>> graded_pieces(const NewQuiverRep<F>& y, const Filtration<F>& f) {
  std::vector<NewQuiverRep<F>> out;
  for (std::size_t k = 0; k + 1 < f.steps.size(); ++k) {
    const auto& outer = f.steps[k];
    const auto [sub, unused] = sub_quotient(y.rep, outer);
    (void)unused;
    const NewQuiverRep<F> suby{sub, outer.sInf};
    const SubrepPair<F> inner = detail::relative(outer, f.steps[k + 1]);
    const auto [isub, iquot] = sub_quotient(suby.rep, inner);
    (void)isub;
    out.push_back({iquot, outer.sInf - inner.sInf});
  }
  return out;
}

}  // namespace adhm
