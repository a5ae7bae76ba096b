#pragma once

// Stability parameters ζ = (ζ0, ζ1), verdicts, and the slope of the
// three-vertex quiver obtained by adjoining V_inf.

#include <gmpxx.h>

#include <optional>
#include <string>
#include <vector>

#include "adhm/quiver/subrep.hpp"

namespace adhm {

using Rational = mpq_class;

inline Rational parse_rational(const std::string& s) { return Rationals{}.parse(s); }

struct StabilityParam {
  Rational zeta0, zeta1;

  StabilityParam() = default;
  StabilityParam(Rational z0, Rational z1) : zeta0(std::move(z0)), zeta1(std::move(z1)) {
    zeta0.canonicalize();
    zeta1.canonicalize();
  }
  StabilityParam(long z0, long z1) : zeta0(z0), zeta1(z1) {}

  /// "a,b" with rational entries.
  static StabilityParam parse(const std::string& text) {
    const auto comma = text.find(',');
    if (comma == std::string::npos) raise(ErrorCode::MalformedInput, "expected zeta as 'a,b'");
    return {parse_rational(text.substr(0, comma)), parse_rational(text.substr(comma + 1))};
  }

  /// ζ0 + ζ1 < 0 and ζ0 < 0.
  bool region_ass() const { return zeta0 + zeta1 < 0 && zeta0 < 0; }
  /// ζ0 + ζ1 = 0 and ζ0 < 0.
  bool region_ass_prime() const { return zeta0 + zeta1 == 0 && zeta0 < 0; }
  /// ζ0 < 0 and ζ1 < 0.
  bool in_zero_chamber() const { return zeta0 < 0 && zeta1 < 0; }

  Rational weight(std::size_t n0, std::size_t n1) const {
    return zeta0 * static_cast<long>(n0) + zeta1 * static_cast<long>(n1);
  }
  /// ζ_inf = −ζ0 n0 − ζ1 n1.
  Rational zeta_inf(std::size_t n0, std::size_t n1) const { return -weight(n0, n1); }
  /// m ζ0 + (m+1) ζ1, the form whose zero set is the wall of C_m.
  Rational wall_form(std::size_t m) const { return weight(m, m + 1); }

  std::string to_string() const { return "(" + zeta0.get_str() + "," + zeta1.get_str() + ")"; }

  friend bool operator==(const StabilityParam& a, const StabilityParam& b) {
    return a.zeta0 == b.zeta0 && a.zeta1 == b.zeta1;
  }
};

enum class VerdictStatus {
  Stable,
  StrictlySemistable,
  Semistable,  // semistable, stability not decided by the method used
  Unstable,
  Unknown,
};

enum class VerdictMethod { ExhaustiveSubspaces, HomCriteria, ClosurePair, TheoremBacked };

inline std::string to_string(VerdictStatus s) {
  switch (s) {
    case VerdictStatus::Stable: return "Stable";
    case VerdictStatus::StrictlySemistable: return "StrictlySemistable";
    case VerdictStatus::Semistable: return "Semistable";
    case VerdictStatus::Unstable: return "Unstable";
    case VerdictStatus::Unknown: return "Unknown";
  }
  return "Unknown";
}

inline std::string to_string(VerdictMethod m) {
  switch (m) {
    case VerdictMethod::ExhaustiveSubspaces: return "ExhaustiveSubspaces";
    case VerdictMethod::HomCriteria: return "HomCriteria";
    case VerdictMethod::ClosurePair: return "ClosurePair";
    case VerdictMethod::TheoremBacked: return "TheoremBacked";
  }
  return "Unknown";
}

template <class F>
struct StabilityVerdict {
  VerdictStatus status = VerdictStatus::Unknown;
  std::optional<SubrepPair<F>> witness;
  VerdictMethod method = VerdictMethod::ExhaustiveSubspaces;
  /// Set when part of the decision rests on a finite-field specialization.
  bool probabilistic = false;
  std::string note;

  bool is_stable() const { return status == VerdictStatus::Stable; }
  bool is_semistable() const {
    return status == VerdictStatus::Stable || status == VerdictStatus::StrictlySemistable ||
           status == VerdictStatus::Semistable;
  }
  bool is_unstable() const { return status == VerdictStatus::Unstable; }
};

/// A representation of the three-vertex quiver: X with V_inf of dimension
/// dimInf (0 forces r = 0).
template <class F>
struct NewQuiverRep {
  BlowupRep<F> rep;
  int dimInf = 0;

  static NewQuiverRep from(const BlowupRep<F>& x) { return {x, x.r > 0 ? 1 : 0}; }

  std::size_t total_dim() const { return rep.n0 + rep.n1 + static_cast<std::size_t>(dimInf); }
  bool is_zero() const { return total_dim() == 0; }
};

/// (ζ0 n0 + ζ1 n1 + ζ_inf dimInf) / (n0 + n1 + dimInf).
inline Rational slope(std::size_t n0, std::size_t n1, int dimInf, const StabilityParam& zeta, const Rational& zetaInf) {
  const long total = static_cast<long>(n0 + n1) + dimInf;
  if (total == 0) raise(ErrorCode::ZeroRepresentation, "slope of the zero representation");
  Rational v = zeta.weight(n0, n1) + zetaInf * dimInf;
  v /= total;
  return v;
}

template <class F>
Rational slope_theta(const NewQuiverRep<F>& y, const StabilityParam& zeta, const Rational& zetaInf) {
  require(y.dimInf == 0 || y.dimInf == 1, ErrorCode::PreconditionViolated, "dimInf must be 0 or 1");
  require(y.dimInf == 1 || y.rep.r == 0, ErrorCode::PreconditionViolated, "dimInf = 0 requires r = 0");
  return slope(y.rep.n0, y.rep.n1, y.dimInf, zeta, zetaInf);
}

/// Slope of a subrepresentation pair.
template <class F>
Rational pair_slope(const SubrepPair<F>& p, const StabilityParam& zeta, const Rational& zetaInf) {
  return slope(p.S0.dim(), p.S1.dim(), p.sInf, zeta, zetaInf);
}

}  // namespace adhm
