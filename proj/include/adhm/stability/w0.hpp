#pragma once

// Representations with W = 0: classification by parameter region, the
// blown-up plane as the moduli of (S0)-stable scalar triples, orbit
// representatives for exhaustive checks, and wall/chamber bookkeeping.

#include <map>
#include <set>

#include "adhm/quiver/enumerate.hpp"
#include "adhm/quiver/hom.hpp"
#include "adhm/stability/conditions.hpp"
#include "adhm/stability/kronecker.hpp"

namespace adhm {

enum class W0Kind {
  Empty,
  UniqueCm,        // the single class C_m, dims (m, m+1)
  UniqueAm,        // the transposed block a_m with d = 0, dims (m+1, m)
  Point,           // a single simple representation of dims (1,0) or (0,1)
  BlownUpPlane,    // dims (1,1), moduli the blowup of the plane at the origin
  Plane,           // dims (1,1), moduli the plane
  PuncturedPlane,  // dims (1,1), moduli the plane minus the origin
};

inline std::string to_string(W0Kind k) {
  switch (k) {
    case W0Kind::Empty: return "Empty";
    case W0Kind::UniqueCm: return "UniqueCm";
    case W0Kind::UniqueAm: return "UniqueAm";
    case W0Kind::Point: return "Point";
    case W0Kind::BlownUpPlane: return "BlownUpPlane";
    case W0Kind::Plane: return "Plane";
    case W0Kind::PuncturedPlane: return "PuncturedPlane";
  }
  return "?";
}

struct W0Classification {
  W0Kind kind = W0Kind::Empty;
  std::size_t m = 0;  // UniqueCm / UniqueAm
  std::string note;
  /// Equal dimensions (n, n) with n ≥ 2 on a ray carrying a (1,1) moduli
  /// space: no geometrically stable data, but over F_q the closed points of
  /// degree n of that surface are stable.
  std::optional<W0Kind> surface;
  std::size_t degree = 1;

  /// Number of isomorphism classes of stable representations over F_q.
  std::uint64_t class_count(std::uint64_t q) const {
    if (kind == W0Kind::Empty && surface) return closed_points(*surface, q, degree);
    return rational_points(kind, q);
  }

  static std::uint64_t rational_points(W0Kind k, std::uint64_t q) {
    switch (k) {
      case W0Kind::Empty: return 0;
      case W0Kind::UniqueCm:
      case W0Kind::UniqueAm:
      case W0Kind::Point: return 1;
      case W0Kind::BlownUpPlane: return q * q + q;
      case W0Kind::Plane: return q * q;
      case W0Kind::PuncturedPlane: return q * q - 1;
    }
    return 0;
  }

  /// Closed points of degree n by Möbius inversion of the point counts over F_{q^e}, e | n.
  static std::uint64_t closed_points(W0Kind k, std::uint64_t q, std::size_t n) {
    auto mobius = [](std::size_t v) {
      int sign = 1;
      for (std::size_t p = 2; p * p <= v; ++p) {
        if (v % p) continue;
        v /= p;
        if (v % p == 0) return 0;
        sign = -sign;
      }
      return v > 1 ? -sign : sign;
    };
    std::int64_t total = 0;
    for (std::size_t e = 1; e <= n; ++e) {
      if (n % e) continue;
      std::uint64_t qe = 1;
      for (std::size_t t = 0; t < e; ++t) qe *= q;
      total += mobius(n / e) * static_cast<std::int64_t>(rational_points(k, qe));
    }
    return static_cast<std::uint64_t>(total) / n;
  }
};

/// Stable representations with W = 0 and ζ0 n0 + ζ1 n1 = 0, by region of ζ.
inline W0Classification classify_W0(std::size_t n0, std::size_t n1, const StabilityParam& zeta) {
  require(zeta.weight(n0, n1) == 0, ErrorCode::PreconditionViolated, "classify_W0 needs zeta0 n0 + zeta1 n1 = 0");
  const Rational& z0 = zeta.zeta0;
  const Rational& z1 = zeta.zeta1;
  const Rational sum = z0 + z1;
  W0Classification c;
  const bool square_one = n0 == 1 && n1 == 1;
  if (n0 == 0 && n1 == 0) {
    c.note = "zero representation is never stable";
  } else if (z0 == 0 && z1 == 0) {
    if (square_one) {
      c.kind = W0Kind::PuncturedPlane;
      c.note = "stable iff d != 0 and (B1, B2) != 0";
    } else if ((n0 == 1 && n1 == 0) || (n0 == 0 && n1 == 1)) {
      c.kind = W0Kind::Point;
      c.note = "simple representation";
    }
  } else if (sum < 0 && z0 < 0) {
    if (n1 == n0 + 1) {
      c.kind = W0Kind::UniqueCm;
      c.m = n0;
    }
  } else if (sum < 0) {  // ζ0 ≥ 0
    if (n0 == 1 && n1 == 0 && z0 == 0) c.kind = W0Kind::Point;
  } else if (sum > 0 && z1 > 0) {
    if (n0 == n1 + 1) {
      c.kind = W0Kind::UniqueAm;
      c.m = n1;
    }
  } else if (sum > 0) {  // ζ1 ≤ 0
    if (n0 == 0 && n1 == 1 && z1 == 0) c.kind = W0Kind::Point;
  } else if (z0 < 0) {  // ζ0 + ζ1 = 0
    if (square_one) c.kind = W0Kind::BlownUpPlane;
    else if (n0 == n1) c.note = "equal dimensions other than (1,1) admit no stable data";
  } else {  // ζ0 + ζ1 = 0, ζ0 > 0
    if (square_one) c.kind = W0Kind::Plane;
    else if (n0 == n1) c.note = "equal dimensions other than (1,1) admit no stable data";
  }
  if (n0 == n1 && n0 >= 2 && ((z0 == 0 && z1 == 0) || sum == 0)) {
    c.surface = z0 == 0 && z1 == 0 ? W0Kind::PuncturedPlane : (z0 < 0 ? W0Kind::BlownUpPlane : W0Kind::Plane);
    c.degree = n0;
    c.note = "no geometrically stable data; over a finite field the closed points of degree " +
             std::to_string(n0) + " of the " + to_string(*c.surface) + " moduli are stable";
  }
  return c;
}

// ---------------------------------------------------------------------------
// The blown-up plane.

template <class F>
struct BlownUpPoint {
  typename F::Elem z1, z2, z, w;
};

/// Canonical triple of a torus orbit: scale [z:w] so its first nonzero entry is 1.
template <class F>
BlownUpPoint<F> blowup_point_forward(const F& f, const typename F::Elem& b1, const typename F::Elem& b2,
                                      const typename F::Elem& d) {
  if (f.is_zero(b1) && f.is_zero(b2)) raise(ErrorCode::NotS0Stable, "B1 = B2 = 0 violates (S0)");
  const auto scale = f.inv(f.is_zero(b1) ? b2 : b1);
  return {f.mul(b1, d), f.mul(b2, d), f.mul(b1, scale), f.mul(b2, scale)};
}

/// (B1, B2, d) = (z, w, s) with s = z1/z if z != 0, else z2/w.
template <class F>
std::tuple<typename F::Elem, typename F::Elem, typename F::Elem> blowup_point_backward(const F& f,
                                                                                     const BlownUpPoint<F>& p) {
  if (f.is_zero(p.z) && f.is_zero(p.w)) raise(ErrorCode::InvalidPoint, "[z:w] must be nonzero");
  if (!f.eq(f.mul(p.z1, p.w), f.mul(p.z2, p.z))) raise(ErrorCode::InvalidPoint, "point violates z1 w = z2 z");
  const auto s = f.is_zero(p.z) ? f.div(p.z2, p.w) : f.div(p.z1, p.z);
  return {p.z, p.w, s};
}

/// All points of the blown-up affine plane over a finite field, with [z:w] normalized.
template <class F>
std::vector<BlownUpPoint<F>> blown_up_plane_points(const F& f) {
  std::vector<BlownUpPoint<F>> out;
  const std::uint32_t q = f.order();
  for (std::uint32_t t = 0; t <= q; ++t) {
    // t < q: [1:t]; t = q: [0:1].
    const typename F::Elem z = t < q ? f.one() : f.zero();
    const typename F::Elem w = t < q ? static_cast<typename F::Elem>(t) : f.one();
    for (std::uint32_t a = 0; a < q; ++a) {
      const typename F::Elem s = a;
      out.push_back({f.mul(s, z), f.mul(s, w), z, w});
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// Orbit representatives of W = 0 data.

/// Visits one pencil per GL(V0)×GL(V1) orbit class of (B1, B2) (possibly with
/// repeats in the regular part), assembled from Kronecker blocks.
template <class F>
void visit_canonical_pencils(const F& f, std::size_t n0, std::size_t n1,
                             const std::function<void(const Matrix<F>&, const Matrix<F>&)>& visit,
                             std::uint64_t bound = kDefaultRepBound) {
  static_assert(F::is_finite, "canonical pencils are enumerated over finite fields");
  // Singular and c-type block shapes with a nondecreasing index to avoid repeats.
  std::vector<KroneckerBlock<F>> kinds;
  for (std::size_t m = 0; m <= std::max(n0, n1); ++m) {
    kinds.push_back({KroneckerKind::B, m, std::nullopt, {}});
    kinds.push_back({KroneckerKind::A, m, std::nullopt, {}});
    if (m >= 1) kinds.push_back({KroneckerKind::C, m, std::nullopt, {}});
  }
  // Regular d-part representatives by size: conjugacy classes of M, keyed by canonical form.
  std::map<std::size_t, std::vector<Matrix<F>>> regular;
  auto regular_reps = [&](std::size_t k) -> const std::vector<Matrix<F>>& {
    auto it = regular.find(k);
    if (it != regular.end()) return it->second;
    std::vector<Matrix<F>> reps;
    std::set<std::string> seen;
    const std::uint64_t total = detail::checked_power(f.order(), k * k, bound, "regular part count");
    Matrix<F> m(f, k, k);
    const Matrix<F> one = Matrix<F>::identity(f, k);
    for (std::uint64_t idx = 0; idx < total; ++idx) {
      detail::fill_from_index<F>(idx, f.order(), {&m});
      std::string key;
      for (const auto& b : kronecker_decompose(m, one).blocks) key += b.to_string(f) + ";";
      if (seen.insert(key).second) reps.push_back(m);
    }
    return regular.emplace(k, std::move(reps)).first->second;
  };
  std::vector<KroneckerBlock<F>> chosen;
  std::function<void(std::size_t, std::size_t, std::size_t)> rec = [&](std::size_t from, std::size_t rows,
                                                                       std::size_t cols) {
    if (rows == cols) {
      for (const auto& m : regular_reps(rows)) {
        auto [b1, b2] = assemble_blocks(f, chosen);
        Matrix<F> p1(f, n0, n1), p2(f, n0, n1);
        p1.set_block(0, 0, b1);
        p2.set_block(0, 0, b2);
        p1.set_block(b1.rows(), b1.cols(), m);
        p2.set_block(b1.rows(), b1.cols(), Matrix<F>::identity(f, rows));
        visit(p1, p2);
      }
    }
    for (std::size_t t = from; t < kinds.size(); ++t) {
      const auto& b = kinds[t];
      if (b.rows() > rows || b.cols() > cols || b.rows() + b.cols() == 0) continue;
      chosen.push_back(b);
      rec(t, rows - b.rows(), cols - b.cols());
      chosen.pop_back();
    }
  };
  rec(0, n0, n1);
}

/// Visits all d with B1 d B2 = B2 d B1 for a fixed pencil.
template <class F>
void visit_flat_d(const Matrix<F>& b1, const Matrix<F>& b2, const std::function<void(const Matrix<F>&)>& visit,
                  std::uint64_t bound = kDefaultRepBound) {
  const F& f = b1.field();
  const std::size_t n0 = b1.rows(), n1 = b1.cols();
  Matrix<F> sys(f, n0 * n1, n1 * n0);
  for (std::size_t u = 0; u < n1 * n0; ++u) {
    Matrix<F> e(f, n1, n0);
    e(u / n0, u % n0) = f.one();
    const Matrix<F> img = b1 * e * b2 - b2 * e * b1;
    for (std::size_t k = 0; k < n0 * n1; ++k) sys(k, u) = img.data()[k];
  }
  const auto ker = kernel_vectors(sys);
  const std::uint64_t count = detail::checked_power(f.order(), ker.size(), bound, "flat d count");
  Matrix<F> d(f, n1, n0);
  for (std::uint64_t c = 0; c < count; ++c) {
    std::uint64_t v = c;
    d = Matrix<F>(f, n1, n0);
    for (std::size_t t = 0; t < ker.size(); ++t) {
      const auto coef = static_cast<typename F::Elem>(v % f.order());
      v /= f.order();
      if (coef == 0) continue;
      for (std::size_t u = 0; u < n1 * n0; ++u) d(u / n0, u % n0) = f.add(d(u / n0, u % n0), f.mul(coef, ker[t][u]));
    }
    visit(d);
  }
}

/// Visits flat W = 0 representations covering every isomorphism class.
template <class F>
void visit_w0_orbit_reps(const F& f, std::size_t n0, std::size_t n1,
                         const std::function<void(const BlowupRep<F>&)>& visit,
                         std::uint64_t bound = kDefaultRepBound) {
  visit_canonical_pencils<F>(
      f, n0, n1,
      [&](const Matrix<F>& b1, const Matrix<F>& b2) {
        visit_flat_d<F>(
            b1, b2,
            [&](const Matrix<F>& d) {
              auto x = BlowupRep<F>::zero(f, n0, n1, 0);
              x.B1 = b1;
              x.B2 = b2;
              x.d = d;
              visit(x);
            },
            bound);
      },
      bound);
}

/// Isomorphism classes of ζ-stable flat W = 0 data, one representative each.
template <class F>
std::vector<BlowupRep<F>> w0_stable_classes(const F& f, std::size_t n0, std::size_t n1, const StabilityParam& zeta,
                                            std::uint64_t bound = kDefaultRepBound) {
  std::vector<BlowupRep<F>> classes;
  visit_w0_orbit_reps<F>(
      f, n0, n1,
      [&](const BlowupRep<F>& x) {
        if (!zeta_exhaustive(x, zeta).is_stable()) return;
        for (const auto& c : classes)
          if (find_isomorphism(c, x, false)) return;
        classes.push_back(x);
      },
      bound);
  return classes;
}

// ---------------------------------------------------------------------------
// Walls and chambers.

struct ChernData {
  long r = 1;
  long k = 0;
  Rational n;

  /// (n0, n1) with n0 = n + k²/(2r) − k/2 and n1 = n0 + k.
  std::pair<std::size_t, std::size_t> dims() const {
    require(r >= 1, ErrorCode::InvalidChernData, "r must be positive");
    Rational n0 = n + Rational(k * k, 2 * r) - Rational(k, 2);
    n0.canonicalize();
    const Rational n1 = n0 + k;
    require(n0.get_den() == 1 && n1.get_den() == 1 && n0 >= 0 && n1 >= 0, ErrorCode::InvalidChernData,
            "Chern data do not give nonnegative integral dimensions");
    return {n0.get_num().get_ui(), n1.get_num().get_ui()};
  }
};

/// Walls m ζ0 + (m+1) ζ1 = 0 allowed by dimensions: n0 ≥ m and n1 ≥ m+1.
inline std::vector<std::size_t> candidate_walls(const ChernData& c) {
  const auto [n0, n1] = c.dims();
  std::vector<std::size_t> out;
  for (std::size_t m = 0; m <= n0 && m + 1 <= n1; ++m) out.push_back(m);
  return out;
}

/// Sign of m ζ0 + (m+1) ζ1 for each wall, in order.
inline std::vector<int> wall_signs(const StabilityParam& zeta, const std::vector<std::size_t>& walls) {
  std::vector<int> out;
  for (auto m : walls) out.push_back(sgn(zeta.wall_form(m)));
  return out;
}

/// ζ lies in chamber m: ζ0 < 0, wall forms positive for m' < m and negative
/// for m' ≥ m. Chamber 0 is ζ0, ζ1 < 0.
inline bool in_chamber(const StabilityParam& zeta, std::size_t m, const std::vector<std::size_t>& walls) {
  if (zeta.zeta0 >= 0) return false;
  if (m == 0 && zeta.zeta1 >= 0) return false;
  for (auto w : walls) {
    const int s = sgn(zeta.wall_form(w));
    if (w < m ? s <= 0 : s >= 0) return false;
  }
  return true;
}

/// A parameter in chamber m (m = max(walls)+1 for the last chamber), certified
/// by the wall signs.
inline StabilityParam chamber_rep(std::size_t m, const std::vector<std::size_t>& walls) {
  const std::size_t top = walls.empty() ? 0 : walls.back() + 1;
  require(m <= top, ErrorCode::PreconditionViolated, "chamber index out of range");
  Rational z1;
  if (m == 0) {
    z1 = Rational(-1, 2);
  } else {
    const Rational lo(static_cast<long>(m - 1), static_cast<long>(m));
    const Rational hi = m == top ? Rational(1) : Rational(static_cast<long>(m), static_cast<long>(m + 1));
    z1 = (lo + hi) / 2;
  }
  StabilityParam zeta(Rational(-1), z1);
  require(in_chamber(zeta, m, walls), ErrorCode::InternalError, "chamber representative failed its sign check");
  return zeta;
}

/// A parameter on the wall m inside the region ζ0 + ζ1 < 0, ζ0 < 0.
inline StabilityParam wall_point(std::size_t m) {
  return {Rational(-static_cast<long>(m + 1)), Rational(static_cast<long>(m))};
}

/// Exhaustive search for a flat, framed, strictly semistable representation on
/// the wall m, which shows the candidate is an actual wall. Tiny dimensions only.
template <class F>
std::optional<BlowupRep<F>> wall_witness(const ChernData& c, std::size_t m, const F& f,
                                         std::uint64_t bound = kDefaultRepBound) {
  const auto [n0, n1] = c.dims();
  const StabilityParam zeta = wall_point(m);
  std::optional<BlowupRep<F>> found;
  visit_reps<F>(
      Dims{n0, n1, static_cast<std::size_t>(c.r)}, f, true,
      [&](const BlowupRep<F>& x) {
        if (zeta_exhaustive(x, zeta).status == VerdictStatus::StrictlySemistable) {
          found = x;
          return false;
        }
        return true;
      },
      bound);
  return found;
}

}  // namespace adhm
