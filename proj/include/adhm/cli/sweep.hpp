#pragma once

// Exhaustive sweeps over enumerated representations with named assertion sets.

#include "adhm/io/json.hpp"
#include "adhm/quiver/tangent.hpp"

namespace adhm {

struct SweepOptions {
  std::uint64_t rep_bound = kDefaultRepBound;
  std::uint64_t subspace_bound = kDefaultSubspaceBound;
  std::uint64_t point_bound = kDefaultPointBound;
};

struct SweepSummary {
  std::string assertion;
  std::uint64_t checked = 0;
  std::uint64_t failures = 0;
  json first_counterexample = nullptr;
  json extra = json::object();

  bool ok() const { return failures == 0; }

  json to_json() const {
    json j = {{"assertion", assertion}, {"checked", checked}, {"failures", failures}};
    for (auto it = extra.begin(); it != extra.end(); ++it) j[it.key()] = it.value();
    j["first_counterexample"] = first_counterexample;
    return j;
  }
};

inline const std::vector<std::string>& sweep_assertions() {
  static const std::vector<std::string> names = {"ss-equivalence", "w0-classification", "king-equivalence",
                                                 "d-zero",         "tangent-dimension", "s2-implied",
                                                 "hn-jh"};
  return names;
}

namespace sweep_detail {

inline void fail(SweepSummary& s, const json& x, const std::string& why) {
  if (s.failures++ == 0) s.first_counterexample = {{"rep", x}, {"reason", why}};
}

/// HN slopes strictly increase from the top piece down (stored top-first);
/// JH slopes are constant. Returns a failure reason or an empty string.
template <class F>
std::string check_filtrations(const BlowupRep<F>& x, const StabilityParam& zeta, std::uint64_t bound) {
  const auto y = NewQuiverRep<F>::from(x);
  const auto hn = hn_filtration(y, zeta, std::nullopt, bound);
  for (std::size_t k = 0; k + 1 < hn.slopes.size(); ++k)
    if (!(hn.slopes[k] < hn.slopes[k + 1])) return "HN slopes not strictly increasing";
  const Rational zinf = zeta.zeta_inf(x.n0, x.n1);
  for (const auto& piece : graded_pieces(y, hn))
    if (!theta_semistable(piece, zeta, zinf, bound)) return "HN graded piece not semistable";
  if (theta_semistable(y, zeta, zinf, bound)) {
    const auto jh = jh_filtration(y, zeta, std::nullopt, bound);
    for (const auto& s : jh.slopes)
      if (s != jh.slopes.front()) return "JH slopes not constant";
    for (const auto& piece : graded_pieces(y, jh))
      if (!theta_stable(piece, zeta, zinf, bound)) return "JH graded piece not stable";
  }
  return {};
}

}  // namespace sweep_detail

/// Runs one assertion over all flat representations of the given dimensions.
template <class F>
SweepSummary sweep(Dims dims, const F& f, const StabilityParam& zeta, const std::string& assertion,
                   const SweepOptions& opt = {}) {
  if constexpr (!F::is_finite) {
    raise(ErrorCode::UnsupportedField, "sweeps need a finite field");
  } else {
    SweepSummary s;
    s.assertion = assertion;
    const std::uint64_t sb = opt.subspace_bound;

    if (assertion == "w0-classification") {
      require(dims.r == 0, ErrorCode::PreconditionViolated, "w0-classification needs r = 0");
      const W0Classification expected = classify_W0(dims.n0, dims.n1, zeta);
      std::vector<BlowupRep<F>> classes;
      if (dims.n0 + dims.n1 == 0) {
        s.checked = 1;
      } else {
        visit_w0_orbit_reps<F>(
            f, dims.n0, dims.n1,
            [&](const BlowupRep<F>& x) {
              ++s.checked;
              const auto v = zeta_exhaustive(x, zeta, sb);
              if (!witness_checks(x, zeta, v)) sweep_detail::fail(s, rep_to_json(x), "invalid witness");
              if (!v.is_stable()) return;
              for (const auto& c : classes)
                if (find_isomorphism(c, x, false)) return;
              classes.push_back(x);
            },
            opt.rep_bound);
      }
      const std::uint64_t want = expected.class_count(f.order());
      if (classes.size() != want)
        sweep_detail::fail(s, classes.empty() ? json(nullptr) : rep_to_json(classes.front()),
                           "found " + std::to_string(classes.size()) + " stable classes, expected " +
                               std::to_string(want));
      if (expected.kind == W0Kind::UniqueCm)
        for (const auto& c : classes)
          if (!find_isomorphism(c, cm_data(expected.m, f), false))
            sweep_detail::fail(s, rep_to_json(c), "stable class not isomorphic to C_m");
      s.extra["expected"] = to_string(expected.kind);
      if (expected.kind == W0Kind::UniqueCm) s.extra["m"] = expected.m;
      s.extra["stable_classes"] = classes.size();
      json reps = json::array();
      for (const auto& c : classes) reps.push_back(rep_to_json(c));
      s.extra["classes"] = reps;
      return s;
    }

    std::function<void(const BlowupRep<F>&)> check;
    if (assertion == "ss-equivalence") {
      check = [&](const BlowupRep<F>& x) {
        const auto a = zeta_semistable(x, zeta, true, sb);
        const auto b = criteria_semistable(x, zeta);
        if (!witness_checks(x, zeta, a)) sweep_detail::fail(s, rep_to_json(x), "invalid witness");
        else if (a.is_semistable() != b.is_semistable())
          sweep_detail::fail(s, rep_to_json(x), "definition says " + to_string(a.status) + ", criteria say " +
                                                    to_string(b.status));
      };
    } else if (assertion == "king-equivalence") {
      check = [&](const BlowupRep<F>& x) {
        const bool s2 = check_condition(x, Condition::S2, sb).is_stable();
        const bool beta = scan_beta(x, std::nullopt, opt.point_bound).surjective_everywhere;
        if (s2 != beta)
          sweep_detail::fail(s, rep_to_json(x), std::string("(S2) ") + (s2 ? "holds" : "fails") + ", beta " +
                                                    (beta ? "surjective" : "not surjective"));
      };
    } else if (assertion == "d-zero") {
      require(dims.r == 0, ErrorCode::PreconditionViolated, "d-zero needs r = 0");
      check = [&](const BlowupRep<F>& x) {
        if (zeta_exhaustive(x, zeta, sb).is_stable() && !x.d.is_zero())
          sweep_detail::fail(s, rep_to_json(x), "stable with d != 0");
      };
    } else if (assertion == "tangent-dimension") {
      check = [&](const BlowupRep<F>& x) {
        if (!zeta_exhaustive(x, zeta, sb).is_stable()) return;
        const auto t = tangent_complex(x);
        const long n0 = static_cast<long>(x.n0), n1 = static_cast<long>(x.n1), r = static_cast<long>(x.r);
        const long expect = r * (n0 + n1) - (n0 - n1) * (n0 - n1);
        if (!t.iota_injective() || !t.dmu_surjective() || static_cast<long>(t.middle_dim()) != expect)
          sweep_detail::fail(s, rep_to_json(x), "tangent complex mismatch");
      };
    } else if (assertion == "s2-implied") {
      require(zeta.region_ass() && dims.r >= 1, ErrorCode::PreconditionViolated,
              "s2-implied needs r >= 1 and zeta0 + zeta1 < 0, zeta0 < 0");
      check = [&](const BlowupRep<F>& x) {
        if (zeta_exhaustive(x, zeta, sb).is_semistable() && !check_condition(x, Condition::S2, sb).is_stable())
          sweep_detail::fail(s, rep_to_json(x), "semistable but (S2) fails");
      };
    } else if (assertion == "hn-jh") {
      check = [&](const BlowupRep<F>& x) {
        const std::string why = sweep_detail::check_filtrations(x, zeta, sb);
        if (!why.empty()) sweep_detail::fail(s, rep_to_json(x), why);
      };
    } else {
      raise(ErrorCode::MalformedInput, "unknown assertion '" + assertion + "'");
    }
    visit_reps<F>(
        dims, f, true,
        [&](const BlowupRep<F>& x) {
          ++s.checked;
          check(x);
          return true;
        },
        opt.rep_bound);
    return s;
  }
}

}  // namespace adhm
