#pragma once

// Points ([z0:z1:z2], [z:w]) of the blown-up projective plane, z1 w = z2 z.

#include <functional>

#include "adhm/exactla/field.hpp"

namespace adhm {

template <class F>
struct SurfacePoint {
  using Elem = typename F::Elem;

  F field;
  Elem z0, z1, z2, z, w;

  /// Validates the point and scales each factor so its first nonzero entry is 1.
  static SurfacePoint make(F field, Elem z0, Elem z1, Elem z2, Elem z, Elem w) {
    const F& f = field;
    if (f.is_zero(z0) && f.is_zero(z1) && f.is_zero(z2)) raise(ErrorCode::InvalidPoint, "[z0:z1:z2] must be nonzero");
    if (f.is_zero(z) && f.is_zero(w)) raise(ErrorCode::InvalidPoint, "[z:w] must be nonzero");
    if (!f.eq(f.mul(z1, w), f.mul(z2, z))) raise(ErrorCode::InvalidPoint, "point violates z1 w = z2 z");
    const Elem s = f.inv(!f.is_zero(z0) ? z0 : !f.is_zero(z1) ? z1 : z2);
    const Elem t = f.inv(!f.is_zero(z) ? z : w);
    return {field, f.mul(z0, s), f.mul(z1, s), f.mul(z2, s), f.mul(z, t), f.mul(w, t)};
  }

  bool at_infinity() const { return field.is_zero(z0); }
  /// On the exceptional curve C: z1 = z2 = 0.
  bool on_exceptional_curve() const { return field.is_zero(z1) && field.is_zero(z2); }

  std::string to_string() const {
    const F& f = field;
    return "([" + f.to_string(z0) + ":" + f.to_string(z1) + ":" + f.to_string(z2) + "],[" + f.to_string(z) + ":" +
           f.to_string(w) + "])";
  }

  friend bool operator==(const SurfacePoint& a, const SurfacePoint& b) {
    const F& f = a.field;
    return f.eq(a.z0, b.z0) && f.eq(a.z1, b.z1) && f.eq(a.z2, b.z2) && f.eq(a.z, b.z) && f.eq(a.w, b.w);
  }
};

/// Default cap on the number of points visited by a scan.
inline constexpr std::uint64_t kDefaultPointBound = std::uint64_t{1} << 22;

/// The field GF(p^(k e)) over which points of degree e over `base` are taken.
inline GaloisField extension_field(const GaloisField& base, std::uint32_t ext_degree) {
  require(ext_degree >= 1, ErrorCode::PreconditionViolated, "extension degree must be at least 1");
  if (ext_degree == 1) return base;
  return GaloisField(FieldSpec::finite(base.characteristic(), base.degree() * ext_degree));
}

/// Visits all points over `field`: first the chart z0 = 1 (q² + q points,
/// ordered by [z:w] with [1:t] before [0:1], then by the affine coordinate),
/// then ℓ∞ (q + 1 points).
inline void visit_points(const GaloisField& f, const std::function<bool(const SurfacePoint<GaloisField>&)>& visit,
                         std::uint64_t bound = kDefaultPointBound) {
  const std::uint64_t q = f.order();
  if (q * q + 2 * q + 1 > bound) raise(ErrorCode::BoundExceeded, "point count exceeds bound");
  const auto one = f.one(), zero = f.zero();
  for (std::uint64_t t = 0; t <= q; ++t) {
    const std::uint32_t z = t < q ? one : zero;
    const std::uint32_t w = t < q ? static_cast<std::uint32_t>(t) : one;
    for (std::uint32_t s = 0; s < q; ++s)
      if (!visit(SurfacePoint<GaloisField>{f, one, f.mul(s, z), f.mul(s, w), z, w})) return;
  }
  for (std::uint64_t t = 0; t <= q; ++t) {
    const std::uint32_t z1 = t < q ? one : zero;
    const std::uint32_t z2 = t < q ? static_cast<std::uint32_t>(t) : one;
    if (!visit(SurfacePoint<GaloisField>{f, zero, z1, z2, z1, z2})) return;
  }
}

/// All points over the degree-`ext_degree` extension of `base`.
inline std::vector<SurfacePoint<GaloisField>> enumerate_points(const GaloisField& base, std::uint32_t ext_degree,
                                                               std::uint64_t bound = kDefaultPointBound) {
  std::vector<SurfacePoint<GaloisField>> out;
  visit_points(
      extension_field(base, ext_degree),
      [&](const SurfacePoint<GaloisField>& p) {
        out.push_back(p);
        return true;
      },
      bound);
  return out;
}

}  // namespace adhm
