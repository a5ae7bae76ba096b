// Acceptance run: one PASS/FAIL line per criterion, nonzero exit if any fails.

#include <chrono>
#include <cstdio>
#include <functional>
#include <map>
#include <random>
#include <set>

#include "adhm/adhm.hpp"

using namespace adhm;

namespace {

using GF = GaloisField;
using Q = Rationals;

struct Outcome {
  bool pass = true;
  std::string detail;
};

// Records the first few mismatches; any mismatch fails the criterion.
struct Tally {
  Outcome out;
  std::uint64_t checks = 0, failures = 0;

  void expect(bool ok, const std::string& what) {
    ++checks;
    if (ok) return;
    if (failures++ < 3) out.detail += (out.detail.empty() ? "" : "; ") + what;
    out.pass = false;
  }

  Outcome finish(const std::string& summary) {
    out.detail = summary + (out.detail.empty() ? "" : " | " + out.detail);
    return out;
  }
};

std::string dims_str(const Dims& d) { return d.to_string(); }

// 1. Semistability by definition agrees with the Hom criteria.
Outcome ss_equivalence() {
  const auto start = std::chrono::steady_clock::now();
  GF f(2);
  Tally t;
  std::uint64_t reps = 0;
  for (const Dims dims : {Dims{1, 1, 1}, Dims{1, 2, 1}, Dims{2, 1, 1}})
    for (const auto& zeta : {StabilityParam(-3, 1), StabilityParam(-1, -1), StabilityParam(-5, 2)}) {
      const auto s = sweep(dims, f, zeta, "ss-equivalence");
      reps += s.checked;
      t.expect(s.ok(), dims_str(dims) + " " + zeta.to_string() + ": " + s.first_counterexample.dump());
    }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  t.expect(secs < 300.0, "runtime " + std::to_string(secs) + " s exceeds 300 s");
  return t.finish(std::to_string(reps) + " tuples, " + std::to_string(t.failures) + " discrepancies");
}

// 2. W = 0 at wall parameters: exactly C_m at dims (m, m+1), nothing otherwise.
Outcome w0_classification() {
  GF f(2);
  Tally t;
  std::size_t cases = 0;
  for (std::size_t m = 0; m <= 3; ++m) {
    const StabilityParam zeta = wall_point(m);
    for (std::size_t n0 = 0; n0 <= 3; ++n0)
      for (std::size_t n1 = 0; n1 <= 4; ++n1) {
        if (n0 + n1 == 0 || zeta.weight(n0, n1) != 0) continue;
        ++cases;
        const bool is_cm = n0 == m && n1 == m + 1;
        const auto classes = w0_stable_classes(f, n0, n1, zeta);
        const std::string where = "(" + std::to_string(n0) + "," + std::to_string(n1) + ") m=" + std::to_string(m);
        t.expect(classes.size() == (is_cm ? 1u : 0u), where + ": " + std::to_string(classes.size()) + " classes");
        if (is_cm && classes.size() == 1)
          t.expect(find_isomorphism(classes[0], cm_data(m, f), false).has_value(), where + ": class is not C_m");
        // Cross-check the orbit representatives against every tuple where that is affordable.
        if (3 * n0 * n1 <= 18) {
          std::vector<BlowupRep<GF>> brute;
          visit_reps<GF>(Dims{n0, n1, 0}, f, true, [&](const BlowupRep<GF>& x) {
            if (!zeta_exhaustive(x, zeta).is_stable()) return true;
            for (const auto& c : brute)
              if (find_isomorphism(c, x, false)) return true;
            brute.push_back(x);
            return true;
          });
          t.expect(brute.size() == classes.size(), where + ": brute force disagrees");
        }
      }
  }
  // Off the walls too: every balanced parameter in the region, where C_{n0} is the only candidate.
  std::size_t region = 0;
  for (std::size_t n0 = 0; n0 <= 3; ++n0)
    for (std::size_t n1 = n0 + 1; n1 <= 4; ++n1) {
      const StabilityParam zeta(-static_cast<long>(n1), static_cast<long>(n0));
      ++region;
      const auto classes = w0_stable_classes(f, n0, n1, zeta);
      const bool is_cm = n1 == n0 + 1;
      const std::string where = "(" + std::to_string(n0) + "," + std::to_string(n1) + ") " + zeta.to_string();
      t.expect(classes.size() == (is_cm ? 1u : 0u), where + ": " + std::to_string(classes.size()) + " classes");
      if (is_cm && classes.size() == 1)
        t.expect(find_isomorphism(classes[0], cm_data(n0, f), false).has_value(), where + ": class is not C_m");
    }
  return t.finish(std::to_string(cases) + " (dims, wall) cases and " + std::to_string(region) +
                  " region parameters up to (3,4)");
}

// 3. (S2) holds exactly when β is surjective at every point over extensions of degree ≤ n0 + n1.
Outcome king_equivalence() {
  GF f(2);
  Tally t;
  std::uint64_t reps = 0;
  for (std::size_t n0 = 0; n0 <= 2; ++n0)
    for (std::size_t n1 = 0; n1 <= 2; ++n1)
      for (std::size_t r = 0; r <= 1; ++r) {
        const auto s = sweep(Dims{n0, n1, r}, f, StabilityParam(-1, -1), "king-equivalence");
        reps += s.checked;
        t.expect(s.ok(), dims_str(Dims{n0, n1, r}) + ": " + s.first_counterexample.dump());
      }
  return t.finish(std::to_string(reps) + " tuples, " + std::to_string(t.failures) + " exceptions");
}

// 4. Tangent complex at stable points: ι injective, dμ surjective, middle dimension r(n0+n1) − (n0−n1)².
template <class F>
void check_tangent(Tally& t, const BlowupRep<F>& x) {
  const auto tc = tangent_complex(x);
  const long n0 = static_cast<long>(x.n0), n1 = static_cast<long>(x.n1), r = static_cast<long>(x.r);
  const long expect = r * (n0 + n1) - (n0 - n1) * (n0 - n1);
  t.expect(tc.iota_injective() && tc.dmu_surjective() && static_cast<long>(tc.middle_dim()) == expect,
           rep_to_json(x).dump());
}

Outcome tangent_dimension() {
  Tally t;
  std::size_t examples = 0;
  Q q;
  // The dims-(1,1,1) example, over Q and F2.
  {
    auto x = BlowupRep<Q>::zero(q, Dims{1, 1, 1});
    x.d = Matrix<Q>::identity(q, 1);
    x.i = Matrix<Q>::identity(q, 1);
    t.expect(zeta_semistable(x, StabilityParam(-1, -1)).is_stable(), "(1,1,1) example not stable");
    check_tangent(t, x);
    ++examples;
  }
  // Direct constructions at (2,2,1) over Q: lifts of stable plane data (d = id) with nilpotent or diagonal B.
  {
    const std::vector<std::pair<std::vector<long long>, std::vector<long long>>> bs = {
        {{0, 0, 1, 0}, {0, 0, 0, 0}}, {{1, 0, 0, 2}, {0, 0, 0, 0}}, {{0, 0, 0, 0}, {0, 0, 1, 0}},
        {{1, 0, 0, 3}, {2, 0, 0, 5}}, {{0, 0, 1, 0}, {0, 0, 4, 0}}};
    for (const auto& [b1, b2] : bs) {
      const PlaneADHM<Q> a{q, 2, 1, Matrix<Q>::from_ints(q, 2, 2, b1), Matrix<Q>::from_ints(q, 2, 2, b2),
                           Matrix<Q>::from_ints(q, 2, 1, {1, 1}), Matrix<Q>(q, 1, 2)};
      const auto x = c1zero_lift(a);
      t.expect(zeta_semistable(x, zero_chamber_param()).is_stable(), "(2,2,1) lift not stable");
      check_tangent(t, x);
      ++examples;
    }
  }
  // Every stable flat tuple over F2 at small dimensions and several chambers.
  GF f(2);
  for (const Dims dims : {Dims{1, 1, 1}, Dims{1, 2, 1}, Dims{2, 1, 1}, Dims{2, 2, 1}, Dims{1, 0, 1}, Dims{1, 1, 2}})
    for (const auto& zeta : {StabilityParam(-1, -1), StabilityParam(-3, 1), StabilityParam(-5, 4)})
      visit_reps<GF>(dims, f, true, [&](const BlowupRep<GF>& x) {
        if (!zeta_exhaustive(x, zeta).is_stable()) return true;
        check_tangent(t, x);
        ++examples;
        return true;
      });
  t.expect(examples >= 20, "only " + std::to_string(examples) + " examples");
  return t.finish(std::to_string(examples) + " stable examples");
}

// 5. The blown-up plane over F3.
Outcome blown_up_plane() {
  GF f(3);
  Tally t;
  std::set<std::string> images;
  for (GF::Elem b1 = 0; b1 < 3; ++b1)
    for (GF::Elem b2 = 0; b2 < 3; ++b2)
      for (GF::Elem d = 0; d < 3; ++d) {
        auto x = BlowupRep<GF>::zero(f, Dims{1, 1, 0});
        x.B1(0, 0) = b1;
        x.B2(0, 0) = b2;
        x.d(0, 0) = d;
        const bool s0 = check_condition(x, Condition::S0).is_stable();
        t.expect(s0 == (b1 != 0 || b2 != 0), "(S0) disagrees with (B1,B2) != 0");
        if (!s0) continue;
        const auto p = blowup_point_forward(f, b1, b2, d);
        images.insert(std::to_string(p.z1) + "," + std::to_string(p.z2) + "," + std::to_string(p.z) + "," +
                      std::to_string(p.w));
        const auto [c1, c2, e] = blowup_point_backward(f, p);
        auto y = BlowupRep<GF>::zero(f, Dims{1, 1, 0});
        y.B1(0, 0) = c1;
        y.B2(0, 0) = c2;
        y.d(0, 0) = e;
        t.expect(find_isomorphism(x, y, false).has_value(), "backward image not in the torus orbit");
      }
  t.expect(images.size() == 12, std::to_string(images.size()) + " torus orbits");
  const auto points = blown_up_plane_points(f);
  t.expect(points.size() == 12, std::to_string(points.size()) + " points");
  for (const auto& pt : points) {
    const auto [b1, b2, d] = blowup_point_backward(f, pt);
    const auto back = blowup_point_forward(f, b1, b2, d);
    t.expect(back.z1 == pt.z1 && back.z2 == pt.z2 && back.z == pt.z && back.w == pt.w, "round trip moved a point");
  }
  return t.finish(std::to_string(images.size()) + " orbits = q^2 + q, round trip identical");
}

// 6. c1 = 0: stable plane data and zero-chamber blowup data have the same isomorphism classes.
Outcome c1_zero_bijection() {
  GF f(2);
  Tally t;
  std::string summary;
  for (std::size_t n = 1; n <= 2; ++n) {
    const auto gl = general_linear_group(f, n);
    std::map<std::string, PlaneADHM<GF>> plane_classes;
    visit_plane_data<GF>(f, n, 1, true, [&](const PlaneADHM<GF>& a) {
      if (plane_stability(a, PlaneCondition::Stable).holds) plane_classes.emplace(plane_orbit_key(a, gl), a);
      return true;
    });
    std::set<std::string> blowup_classes;
    visit_reps<GF>(Dims{n, n, 1}, f, true, [&](const BlowupRep<GF>& x) {
      if (zeta_semistable(x, zero_chamber_param()).is_stable()) {
        blowup_classes.insert(blowup_orbit_key(x, gl, gl));
        t.expect(plane_classes.count(plane_orbit_key(to_plane(x, PlaneSide::Left), gl)) == 1,
                 "descent lands outside the stable plane classes");
      }
      return true;
    });
    std::set<std::string> lifted;
    for (const auto& [key, a] : plane_classes) {
      t.expect(c1zero_roundtrip(a), "lift does not round-trip");
      const auto x = c1zero_lift(a);
      lifted.insert(blowup_orbit_key(x, gl, gl));
      t.expect(plane_orbit_key(to_plane(x, PlaneSide::Left), gl) == key, "descent of the lift changes class");
    }
    t.expect(lifted == blowup_classes, "lift is not onto the blowup classes");
    t.expect(plane_classes.size() == blowup_classes.size(), "class counts differ");
    summary += (summary.empty() ? "" : ", ") + std::string("n=") + std::to_string(n) + ": " +
               std::to_string(plane_classes.size()) + " classes";
  }
  return t.finish(summary);
}

// 7. Kronecker decomposition of random pencils with known blocks.
Outcome kronecker() {
  Q q;
  Tally t;
  std::mt19937 rng(20240607);
  const std::vector<Rational> eigs = {Rational(0), Rational(1), Rational(-1), Rational(3, 2), Rational(-7, 3)};
  auto less = [&](const auto& a, const auto& b) { return block_less(q, a, b); };
  for (int trial = 0; trial < 100; ++trial) {
    std::vector<KroneckerBlock<Q>> blocks;
    const std::size_t count = 1 + rng() % 4;
    for (std::size_t k = 0; k < count; ++k) {
      switch (rng() % 4) {
        case 0: blocks.push_back({KroneckerKind::A, rng() % 3, std::nullopt, {}}); break;
        case 1: blocks.push_back({KroneckerKind::B, rng() % 3, std::nullopt, {}}); break;
        case 2: blocks.push_back({KroneckerKind::C, 1 + rng() % 2, std::nullopt, {}}); break;
        default: blocks.push_back({KroneckerKind::D, 1 + rng() % 2, eigs[rng() % eigs.size()], {}}); break;
      }
    }
    const auto [c1, c2] = assemble_blocks(q, blocks);
    const auto g0 = random_invertible(q, c1.rows(), rng), g1 = random_invertible(q, c1.cols(), rng);
    const Matrix<Q> b1 = g0 * c1 * g1, b2 = g0 * c2 * g1;
    const auto d = kronecker_decompose(b1, b2);
    const auto [e1, e2] = assemble_blocks(q, d.blocks);
    t.expect(is_invertible(d.P) && is_invertible(d.Q), "P or Q singular");
    t.expect(d.P * b1 * d.Q == e1 && d.P * b2 * d.Q == e2, "P B Q differs from the block form");
    auto want = blocks, got = d.blocks;
    std::stable_sort(want.begin(), want.end(), less);
    std::stable_sort(got.begin(), got.end(), less);
    bool same = want.size() == got.size();
    for (std::size_t k = 0; same && k < want.size(); ++k) same = same_block(q, want[k], got[k]);
    t.expect(same, "block multiset not recovered at trial " + std::to_string(trial));
  }
  for (std::size_t m = 0; m <= 5; ++m) {
    const auto x = cm_data(m, q);
    const auto d = kronecker_decompose(x.B1, x.B2);
    t.expect(d.blocks.size() == 1 && d.blocks[0].kind == KroneckerKind::B && d.blocks[0].m == m,
             "C_" + std::to_string(m) + " is not a single b block");
  }
  return t.finish("100 random pencils, C_0..C_5");
}

// 8. dim Hom(C_m, C_m') = max(0, m − m' + 1).
Outcome hom_dims() {
  Tally t;
  auto run = [&](const auto& f) {
    for (std::size_t m = 0; m <= 3; ++m)
      for (std::size_t mp = 0; mp <= 3; ++mp) {
        const std::size_t want = m + 1 >= mp ? m + 1 - mp : 0;
        const std::size_t got = hom_space(cm_data(m, f), cm_data(mp, f)).dim();
        t.expect(got == want, "Hom(C_" + std::to_string(m) + ", C_" + std::to_string(mp) + ") has dim " +
                                  std::to_string(got) + " over " + f.spec().name());
      }
  };
  run(GF(2));
  run(GF(3));
  run(Q{});
  return t.finish("0 <= m, m' <= 3 over F2, F3, Q");
}

// 9. Fiber cohomology of the monad.
Outcome fiber_profiles() {
  Tally t;
  for (unsigned p : {2u, 3u}) {
    GF f(p);
    for (std::size_t m = 0; m <= 3; ++m) {
      const auto prof = fiber_profile(cm_data(m, f), enumerate_points(f, 1));
      for (const auto& [pt, h] : prof.entries) {
        const FiberCohomology want = pt.on_exceptional_curve() ? FiberCohomology{1, 1, 0} : FiberCohomology{0, 0, 0};
        t.expect(h == want, "C_" + std::to_string(m) + " at " + pt.to_string());
      }
    }
    auto lb = BlowupRep<GF>::zero(f, Dims{1, 0, 1});
    lb.i = Matrix<GF>::identity(f, 1);
    for (const auto& [pt, h] : fiber_profile(lb, enumerate_points(f, 1)).entries)
      t.expect(h == (FiberCohomology{0, 1, 0}), "O(-C) datum at " + pt.to_string());
  }
  GF f(2);
  std::size_t certified = 0;
  for (const Dims dims : {Dims{1, 0, 1}, Dims{1, 1, 1}, Dims{1, 2, 1}, Dims{2, 1, 1}, Dims{1, 1, 2}})
    visit_reps<GF>(dims, f, true, [&](const BlowupRep<GF>& x) {
      if (!check_condition(x, Condition::S2).is_stable()) return true;
      ++certified;
      t.expect(framing_check(x), "framing fails on " + rep_to_json(x).dump());
      return true;
    });
  return t.finish("C_0..C_3 over F2, F3; framing on " + std::to_string(certified) + " (S2) tuples");
}

// 10. Walls, chambers and filtrations.
Outcome walls_and_filtrations() {
  Tally t;
  const auto walls = candidate_walls(ChernData{1, 0, Rational(4)});
  t.expect(walls == std::vector<std::size_t>{0, 1, 2, 3}, "candidate walls differ");
  for (std::size_t m = 0; m <= walls.size(); ++m) {
    const auto zeta = chamber_rep(m, walls);
    const auto signs = wall_signs(zeta, walls);
    for (std::size_t k = 0; k < walls.size(); ++k)
      t.expect(signs[k] == (walls[k] < m ? 1 : -1), "chamber " + std::to_string(m) + " sign at wall " +
                                                       std::to_string(walls[k]));
  }
  GF f(2);
  std::uint64_t filtrations = 0;
  for (const Dims dims : {Dims{1, 1, 1}, Dims{1, 2, 1}, Dims{2, 1, 1}})
    for (const auto& zeta : {StabilityParam(-3, 1), StabilityParam(-1, -1), StabilityParam(-5, 2)}) {
      const auto s = sweep(dims, f, zeta, "hn-jh");
      filtrations += s.checked;
      t.expect(s.ok(), dims_str(dims) + " " + zeta.to_string() + ": " + s.first_counterexample.dump());
    }
  for (std::size_t m = 0; m <= 3; ++m) {
    const StabilityParam zeta = wall_point(m);
    for (std::size_t n0 = 0; n0 <= 3; ++n0)
      for (std::size_t n1 = 0; n1 <= 4; ++n1) {
        if (n0 + n1 == 0 || zeta.weight(n0, n1) != 0) continue;
        visit_w0_orbit_reps<GF>(f, n0, n1, [&](const BlowupRep<GF>& x) {
          ++filtrations;
          const std::string why = sweep_detail::check_filtrations(x, zeta, kDefaultSubspaceBound);
          t.expect(why.empty(), why + " on " + rep_to_json(x).dump());
        });
      }
  }
  return t.finish("walls {0,1,2,3}, 5 chambers certified, " + std::to_string(filtrations) + " HN/JH filtrations");
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria = {
      {"semistability by definition equals Hom criteria", ss_equivalence},
      {"W=0 stable classes at wall parameters", w0_classification},
      {"(S2) iff beta surjective everywhere", king_equivalence},
      {"tangent complex dimension", tangent_dimension},
      {"blown-up plane over F3", blown_up_plane},
      {"c1=0 bijection with plane data", c1_zero_bijection},
      {"Kronecker decomposition", kronecker},
      {"Hom dimensions between C_m", hom_dims},
      {"monad fiber profiles and framing", fiber_profiles},
      {"walls, chambers, HN/JH slopes", walls_and_filtrations},
  };
  int failed = 0;
  for (std::size_t k = 0; k < criteria.size(); ++k) {
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = criteria[k].second();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    std::printf("%s  %2zu  %s  (%s; %.1f s)\n", o.pass ? "PASS" : "FAIL", k + 1, criteria[k].first.c_str(),
                o.detail.c_str(), secs);
    std::fflush(stdout);
    failed += !o.pass;
  }
  std::printf("%d of %zu criteria passed\n", static_cast<int>(criteria.size()) - failed, criteria.size());
  return failed == 0 ? 0 : 1;
}
