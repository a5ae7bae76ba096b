#pragma once

// The complex  V0⊗O(−C) ⊕ V1⊗O(−ℓ∞) --α--> ... --β--> V0 ⊕ V1 ⊗ O(C)
// evaluated at points of the blown-up plane, with fibers trivialized by the
// normalized point coordinates:
//
//   α = [ z      z0 B1        ]    β = [ z2  −z1  z0 B2  −z0 B1  z0 i ]
//       [ w      z0 B2        ]        [ d w −d z  w      −z      0   ]
//       [ 0   z1 − z0 d B1    ]
//       [ 0   z2 − z0 d B2    ]
//       [ 0      z0 j         ]

#include <map>

#include "adhm/exactla/elimination.hpp"
#include "adhm/exactla/embedding.hpp"
#include "adhm/monad/surface.hpp"
#include "adhm/quiver/hom.hpp"

namespace adhm {

template <class F>
struct MonadEval {
  Matrix<F> alpha;  // (2n0 + 2n1 + r) × (n0 + n1)
  Matrix<F> beta;   // (n0 + n1) × (2n0 + 2n1 + r)
  SurfacePoint<F> point;
};

/// Evaluates α and β; the data must already be over the point's field.
template <class F>
MonadEval<F> alpha_beta_at(const BlowupRep<F>& x, const SurfacePoint<F>& pt) {
  if (!(x.field == pt.field)) raise(ErrorCode::FieldMismatch, "point and representation over different fields");
  const F& f = x.field;
  const std::size_t n0 = x.n0, n1 = x.n1, r = x.r;
  const Matrix<F> i0 = Matrix<F>::identity(f, n0), i1 = Matrix<F>::identity(f, n1);
  MonadEval<F> e{Matrix<F>(f, 2 * n0 + 2 * n1 + r, n0 + n1), Matrix<F>(f, n0 + n1, 2 * n0 + 2 * n1 + r), pt};
  Matrix<F>& a = e.alpha;
  a.set_block(0, 0, i0.scaled(pt.z));
  a.set_block(0, n0, x.B1.scaled(pt.z0));
  a.set_block(n0, 0, i0.scaled(pt.w));
  a.set_block(n0, n0, x.B2.scaled(pt.z0));
  a.set_block(2 * n0, n0, i1.scaled(pt.z1) - (x.d * x.B1).scaled(pt.z0));
  a.set_block(2 * n0 + n1, n0, i1.scaled(pt.z2) - (x.d * x.B2).scaled(pt.z0));
  a.set_block(2 * n0 + 2 * n1, n0, x.j.scaled(pt.z0));
  Matrix<F>& b = e.beta;
  b.set_block(0, 0, i0.scaled(pt.z2));
  b.set_block(0, n0, i0.scaled(f.neg(pt.z1)));
  b.set_block(0, 2 * n0, x.B2.scaled(pt.z0));
  b.set_block(0, 2 * n0 + n1, x.B1.scaled(f.neg(pt.z0)));
  b.set_block(0, 2 * n0 + 2 * n1, x.i.scaled(pt.z0));
  b.set_block(n0, 0, x.d.scaled(pt.w));
  b.set_block(n0, n0, x.d.scaled(f.neg(pt.z)));
  b.set_block(n0, 2 * n0, i1.scaled(pt.w));
  b.set_block(n0, 2 * n0 + n1, i1.scaled(f.neg(pt.z)));
  return e;
}

/// The representation transported into an extension field.
inline BlowupRep<GaloisField> extend_rep(const BlowupRep<GaloisField>& x, const GaloisField& target) {
  if (x.field == target) return x;
  const FieldEmbedding emb(x.field, target);
  BlowupRep<GaloisField> y = BlowupRep<GaloisField>::zero(target, x.dims());
  y.B1 = emb(x.B1);
  y.B2 = emb(x.B2);
  y.d = emb(x.d);
  y.i = emb(x.i);
  y.j = emb(x.j);
  return y;
}

/// Visits every point of degree 1..max_ext over the rep's field, with the rep
/// transported to the point's field. Stops when `visit` returns false.
inline void visit_scan(const BlowupRep<GaloisField>& x, std::uint32_t max_ext,
                       const std::function<bool(const BlowupRep<GaloisField>&, const SurfacePoint<GaloisField>&)>& visit,
                       std::uint64_t bound = kDefaultPointBound) {
  require(max_ext >= 1, ErrorCode::PreconditionViolated, "extension degree must be at least 1");
  for (std::uint32_t e = 1; e <= max_ext; ++e) {
    const GaloisField g = extension_field(x.field, e);
    const BlowupRep<GaloisField> y = extend_rep(x, g);
    bool go = true;
    visit_points(
        g,
        [&](const SurfacePoint<GaloisField>& p) {
          go = visit(y, p);
          return go;
        },
        bound);
    if (!go) return;
  }
}

inline std::uint32_t default_ext_degree(const BlowupRep<GaloisField>& x) {
  return static_cast<std::uint32_t>(std::max<std::size_t>(1, x.n0 + x.n1));
}

struct ScanBetaResult {
  bool surjective_everywhere = true;
  std::optional<SurfacePoint<GaloisField>> fails_at;
};

/// Checks rank β = n0 + n1 at every point over extensions of degree ≤ max_ext.
inline ScanBetaResult scan_beta(const BlowupRep<GaloisField>& x, std::optional<std::uint32_t> max_ext = std::nullopt,
                                std::uint64_t bound = kDefaultPointBound) {
  ScanBetaResult res;
  visit_scan(
      x, max_ext.value_or(default_ext_degree(x)),
      [&](const BlowupRep<GaloisField>& y, const SurfacePoint<GaloisField>& p) {
        if (rank(alpha_beta_at(y, p).beta) == y.n0 + y.n1) return true;
        res.surjective_everywhere = false;
        res.fails_at = p;
        return false;
      },
      bound);
  return res;
}

enum class AlphaScanKind { InjectiveEverywhere, FiniteFailures, CurveFailure };

inline std::string to_string(AlphaScanKind k) {
  switch (k) {
    case AlphaScanKind::InjectiveEverywhere: return "injective_everywhere";
    case AlphaScanKind::FiniteFailures: return "finite_failures";
    case AlphaScanKind::CurveFailure: return "curve_failure";
  }
  return "?";
}

struct ScanAlphaResult {
  AlphaScanKind kind = AlphaScanKind::InjectiveEverywhere;
  std::vector<SurfacePoint<GaloisField>> failures;  // in scan order
};

/// Points where α is not injective. Reported as CurveFailure when, over some
/// sampled field, every rational point of the exceptional curve fails; the
/// classification describes the sampled points only.
inline ScanAlphaResult scan_alpha(const BlowupRep<GaloisField>& x, std::optional<std::uint32_t> max_ext = std::nullopt,
                                  std::uint64_t bound = kDefaultPointBound) {
  ScanAlphaResult res;
  std::map<std::uint32_t, std::uint64_t> curve_failures;  // field order -> failing points on C
  visit_scan(
      x, max_ext.value_or(default_ext_degree(x)),
      [&](const BlowupRep<GaloisField>& y, const SurfacePoint<GaloisField>& p) {
        if (rank(alpha_beta_at(y, p).alpha) < y.n0 + y.n1) {
          res.failures.push_back(p);
          if (!p.at_infinity() && p.on_exceptional_curve()) ++curve_failures[p.field.order()];
        }
        return true;
      },
      bound);
  if (res.failures.empty()) return res;
  res.kind = AlphaScanKind::FiniteFailures;
  for (const auto& [q, count] : curve_failures)
    if (count == q + 1) res.kind = AlphaScanKind::CurveFailure;
  return res;
}

struct FiberCohomology {
  std::size_t hMinus = 0, hZero = 0, hPlus = 0;

  long euler() const { return static_cast<long>(hMinus) - static_cast<long>(hZero) + static_cast<long>(hPlus); }
  friend bool operator==(const FiberCohomology&, const FiberCohomology&) = default;
};

template <class F>
FiberCohomology fiber_at(const BlowupRep<F>& x, const SurfacePoint<F>& pt) {
  const auto e = alpha_beta_at(x, pt);
  const std::size_t n = x.n0 + x.n1, mid = 2 * x.n0 + 2 * x.n1 + x.r;
  const std::size_t ra = rank(e.alpha), rb = rank(e.beta);
  return {n - ra, mid - rb - ra, n - rb};
}

template <class F>
struct FiberProfile {
  std::vector<std::pair<SurfacePoint<F>, FiberCohomology>> entries;

  bool euler_constant() const {
    for (const auto& [p, h] : entries)
      if (h.euler() != entries.front().second.euler()) return false;
    return true;
  }
};

template <class F>
FiberProfile<F> fiber_profile(const BlowupRep<F>& x, const std::vector<SurfacePoint<F>>& pts) {
  FiberProfile<F> prof;
  for (const auto& p : pts) {
    if constexpr (std::is_same_v<F, GaloisField>) {
      prof.entries.emplace_back(p, fiber_at(extend_rep(x, p.field), p));
    } else {
      prof.entries.emplace_back(p, fiber_at(x, p));
    }
  }
  return prof;
}

/// On every point of ℓ∞ over extensions of degree ≤ max_ext: fiber (0, r, 0),
/// with W (the last r middle coordinates) mapping isomorphically onto the
/// middle cohomology. Returns false when the data fail (S2) at a scanned point.
inline bool framing_check(const BlowupRep<GaloisField>& x, std::optional<std::uint32_t> max_ext = std::nullopt,
                          std::uint64_t bound = kDefaultPointBound) {
  require(x.r >= 1, ErrorCode::NoFraming, "framing check needs r >= 1");
  if (!scan_beta(x, max_ext, bound).surjective_everywhere) return false;
  bool ok = true;
  visit_scan(
      x, max_ext.value_or(default_ext_degree(x)),
      [&](const BlowupRep<GaloisField>& y, const SurfacePoint<GaloisField>& p) {
        if (!p.at_infinity()) return true;
        const GaloisField& g = y.field;
        const auto e = alpha_beta_at(y, p);
        const std::size_t n0 = y.n0, n1 = y.n1, r = y.r, mid = 2 * n0 + 2 * n1 + r;
        const std::size_t ra = rank(e.alpha), rb = rank(e.beta);
        const FiberCohomology h{n0 + n1 - ra, mid - rb - ra, n0 + n1 - rb};
        if (!(h == FiberCohomology{0, r, 0})) {
          ok = false;
          return false;
        }
        Matrix<GaloisField> incl(g, mid, r);
        incl.set_block(2 * n0 + 2 * n1, 0, Matrix<GaloisField>::identity(g, r));
        const bool in_kernel = (e.beta * incl).is_zero();
        const bool independent = rank(hstack(std::vector<Matrix<GaloisField>>{e.alpha, incl})) == ra + r;
        ok = in_kernel && independent;
        return ok;
      },
      bound);
  return ok;
}

struct PerverseRow {
  std::size_t n;
  std::size_t hom_to_cn;    // dim Hom(X, C_n)
  std::size_t hom_from_cn;  // dim Hom(C_n, X)
};

template <class F>
std::vector<PerverseRow> perverse_hom_profile(const BlowupRep<F>& x, std::size_t m_max) {
  std::vector<PerverseRow> out;
  for (std::size_t n = 0; n <= m_max; ++n) {
    const auto cn = cm_data(n, x.field);
    out.push_back({n, hom_space(x, cn).dim(), hom_space(cn, x).dim()});
  }
  return out;
}

/// Chamber-m test: Hom(X, C_n) = 0 for n ≥ m and Hom(C_n', X) = 0 for n' < m,
/// over the rows of the profile.
inline bool perverse_test(const std::vector<PerverseRow>& profile, std::size_t m) {
  for (const auto& row : profile) {
    if (row.n >= m && row.hom_to_cn != 0) return false;
    if (row.n < m && row.hom_from_cn != 0) return false;
  }
  return true;
}

}  // namespace adhm
