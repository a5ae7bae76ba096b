#include "support.hpp"

namespace adhm::testing {
namespace {

template <class F>
PlaneADHM<F> plane(const F& f, std::size_t n, std::size_t r, std::vector<long long> b1, std::vector<long long> b2,
                   std::vector<long long> i, std::vector<long long> j) {
  return {f, n, r, mat(f, n, n, std::move(b1)), mat(f, n, n, std::move(b2)), mat(f, n, r, std::move(i)),
          mat(f, r, n, std::move(j))};
}

// Stability by brute force: no proper subspace containing Im i is invariant under B1, B2.
bool naive_stable(const PlaneADHM<GF>& a) {
  const auto im = Subspace<GF>::column_span(a.i);
  for (const auto& s : all_subspaces(a.field, a.n)) {
    if (s.is_full() || !s.contains(im)) continue;
    if (s.contains(s.image(a.B1)) && s.contains(s.image(a.B2))) return false;
  }
  return true;
}

// Costability by brute force: no nonzero B-invariant subspace inside Ker j.
bool naive_costable(const PlaneADHM<GF>& a) {
  const auto ker = Subspace<GF>::span(a.field, a.n, kernel_vectors(a.j));
  for (const auto& s : all_subspaces(a.field, a.n)) {
    if (s.is_zero() || !ker.contains(s)) continue;
    if (s.contains(s.image(a.B1)) && s.contains(s.image(a.B2))) return false;
  }
  return true;
}

TEST(Plane, StabilityExamples) {
  GF f(2);
  const auto a = plane(f, 1, 1, {0}, {0}, {1}, {0});
  EXPECT_TRUE(plane_stability(a, PlaneCondition::Stable).holds);
  EXPECT_FALSE(plane_stability(a, PlaneCondition::Costable).holds);
  const auto b = plane(f, 1, 1, {1}, {0}, {0}, {1});
  const auto v = plane_stability(b, PlaneCondition::Stable);
  EXPECT_FALSE(v.holds);
  ASSERT_TRUE(v.witness.has_value());
  EXPECT_TRUE(v.witness->is_zero());
  EXPECT_TRUE(plane_stability(b, PlaneCondition::Costable).holds);
  // Im i = e1 generates everything under a nilpotent shift.
  const auto c = plane(f, 2, 1, {0, 0, 1, 0}, {0, 0, 0, 0}, {1, 0}, {0, 0});
  EXPECT_TRUE(plane_stability(c, PlaneCondition::Stable).holds);
  EXPECT_ADHM_ERROR(plane_stability(PlaneADHM<GF>{f, 2, 1, mat(f, 1, 1, {0}), mat(f, 2, 2, {0, 0, 0, 0}),
                                                  mat(f, 2, 1, {1, 0}), mat(f, 1, 2, {0, 0})},
                                    PlaneCondition::Stable),
                    ErrorCode::DimensionMismatch);
}

TEST(Plane, StabilityAgainstNaive) {
  GF f(2);
  for (std::size_t n = 0; n <= 2; ++n) {
    std::size_t stable = 0;
    visit_plane_data<GF>(f, n, 1, false, [&](const PlaneADHM<GF>& a) {
      const bool s = plane_stability(a, PlaneCondition::Stable).holds;
      EXPECT_EQ(s, naive_stable(a));
      EXPECT_EQ(plane_stability(a, PlaneCondition::Costable).holds, naive_costable(a));
      stable += s;
      return true;
    });
    EXPECT_GT(stable, 0u);
  }
}

TEST(Plane, DescentExamples) {
  GF f(2);
  const auto x = stable_111(f);
  EXPECT_EQ(to_plane(x, PlaneSide::Right), plane(f, 1, 1, {0}, {0}, {1}, {0}));
  EXPECT_EQ(to_plane(x, PlaneSide::Left), plane(f, 1, 1, {0}, {0}, {1}, {0}));
  const auto y = rep(f, 1, 2, 1, {1, 0}, {0, 1}, {1, 1}, {1}, {0, 0});
  const auto left = to_plane(y, PlaneSide::Left);
  EXPECT_EQ(left.n, 2u);
  EXPECT_EQ(left.B1, mat(f, 2, 2, {1, 0, 1, 0}));
  const auto right = to_plane(y, PlaneSide::Right);
  EXPECT_EQ(right.n, 1u);
  EXPECT_EQ(right.B1, mat(f, 1, 1, {1}));
  EXPECT_EQ(right.B2, mat(f, 1, 1, {1}));
}

TEST(Plane, DescentPreservesFlatness) {
  GF f(3);
  std::mt19937 rng(41);
  for (int t = 0; t < 60; ++t) {
    const Dims dims{rng() % 3, rng() % 3, 1 + rng() % 2};
    const auto x = random_flat_rep(f, dims, rng);
    EXPECT_TRUE(is_flat(to_plane(x, PlaneSide::Left)));
    EXPECT_TRUE(is_flat(to_plane(x, PlaneSide::Right)));
    // Residuals are d μ and μ d.
    EXPECT_EQ(plane_residual(to_plane(x, PlaneSide::Left)), x.d * mu_residual(x));
    EXPECT_EQ(plane_residual(to_plane(x, PlaneSide::Right)), mu_residual(x) * x.d);
  }
}

TEST(Plane, InvariantCoordinates) {
  Q q;
  const auto a = plane(q, 1, 1, {2}, {3}, {1}, {0});
  const auto c = invariant_coords(a, 2);
  const std::vector<long> traces = {2, 3, 4, 6, 6, 9};
  ASSERT_EQ(c.size(), 6u + 7u);
  for (std::size_t k = 0; k < traces.size(); ++k) EXPECT_EQ(c[k], Rational(traces[k])) << k;
  for (std::size_t k = 6; k < c.size(); ++k) EXPECT_EQ(c[k], 0);
  EXPECT_EQ(plane_words(2).size(), 6u);
  EXPECT_EQ(plane_words(3, true).size(), 15u);
  EXPECT_ADHM_ERROR(invariant_coords(a, 0), ErrorCode::PreconditionViolated);
}

TEST(Plane, InvariantCoordinatesAgreeOnBothSides) {
  GF f(3);
  std::mt19937 rng(43);
  for (int t = 0; t < 60; ++t) {
    const Dims dims{rng() % 3, rng() % 3, 1 + rng() % 2};
    const auto x = random_flat_rep(f, dims, rng);
    EXPECT_EQ(invariant_coords(to_plane(x, PlaneSide::Left), 4), invariant_coords(to_plane(x, PlaneSide::Right), 4));
  }
  Q q;
  const auto x = rep(q, 2, 2, 1, {1, 0, 0, 2}, {0, 1, 0, 0}, {1, 0, 0, 1}, {1, 1}, {0, 0});
  EXPECT_EQ(invariant_coords(to_plane(x, PlaneSide::Left), 3), invariant_coords(to_plane(x, PlaneSide::Right), 3));
}

TEST(Plane, InvariantCoordinatesAreOrbitInvariant) {
  GF f(3);
  std::mt19937 rng(47);
  for (int t = 0; t < 30; ++t) {
    const auto x = random_flat_rep(f, Dims{2, 2, 1}, rng);
    const auto a = to_plane(x, PlaneSide::Right);
    const auto g = random_invertible(f, 2, rng);
    const auto gi = *inverse(g);
    const PlaneADHM<GF> b{f, 2, 1, g * a.B1 * gi, g * a.B2 * gi, g * a.i, a.j * gi};
    EXPECT_EQ(invariant_coords(a, 3), invariant_coords(b, 3));
    const auto h = find_plane_isomorphism(a, b);
    ASSERT_TRUE(h.has_value());
    const auto hi = *inverse(*h);
    EXPECT_EQ(*h * a.B1 * hi, b.B1);
    EXPECT_EQ(*h * a.i, b.i);
  }
}

TEST(C1Zero, LiftExamples) {
  GF f(2);
  const auto a = plane(f, 1, 1, {1}, {0}, {1}, {0});
  const auto x = c1zero_lift(a);
  EXPECT_EQ(x.dims(), (Dims{1, 1, 1}));
  EXPECT_EQ(x.d, Matrix<GF>::identity(f, 1));
  EXPECT_TRUE(c1zero_roundtrip(a));
  EXPECT_TRUE(d_surjectivity_check(x));

  const auto empty = PlaneADHM<GF>::zero(f, 0, 1);
  const auto e = c1zero_lift(empty);
  EXPECT_EQ(e.dims(), (Dims{0, 0, 1}));
  EXPECT_TRUE(c1zero_roundtrip(empty));

  EXPECT_ADHM_ERROR(c1zero_lift(plane(f, 1, 1, {0}, {0}, {0}, {1})), ErrorCode::NotStable);
  EXPECT_ADHM_ERROR(c1zero_lift(plane(f, 2, 1, {0, 1, 0, 0}, {0, 0, 1, 0}, {1, 0}, {0, 0})),
                    ErrorCode::PreconditionViolated);
  EXPECT_FALSE(d_surjectivity_check(rep(f, 1, 1, 1, {0}, {0}, {0}, {1}, {0})));
}

TEST(C1Zero, StableInZeroChamberForcesInvertibleD) {
  GF f(2);
  for (std::size_t n = 1; n <= 2; ++n) {
    visit_reps<GF>(Dims{n, n, 1}, f, true, [&](const BlowupRep<GF>& x) {
      if (!zeta_semistable(x, zero_chamber_param()).is_stable()) return true;
      EXPECT_TRUE(is_invertible(x.d)) << rep_to_json(x).dump();
      EXPECT_TRUE(plane_stability(to_plane(x, PlaneSide::Left), PlaneCondition::Stable).holds);
      return true;
    });
  }
}

TEST(C1Zero, OrbitBijection) {
  // Rational points of the Hilbert scheme of the affine plane over F2: 4 for n = 1, 24 for n = 2.
  GF f(2);
  const std::map<std::size_t, std::size_t> hilb = {{1, 4}, {2, 24}};
  for (const auto& [n, expected] : hilb) {
    const auto gl = general_linear_group(f, n);
    std::map<std::string, PlaneADHM<GF>> plane_classes;
    visit_plane_data<GF>(f, n, 1, true, [&](const PlaneADHM<GF>& a) {
      if (!plane_stability(a, PlaneCondition::Stable).holds) return true;
      EXPECT_TRUE(c1zero_roundtrip(a));
      plane_classes.emplace(plane_orbit_key(a, gl), a);
      return true;
    });
    EXPECT_EQ(plane_classes.size(), expected) << n;

    std::set<std::string> blowup_classes, images;
    visit_reps<GF>(Dims{n, n, 1}, f, true, [&](const BlowupRep<GF>& x) {
      if (!zeta_semistable(x, zero_chamber_param()).is_stable()) return true;
      blowup_classes.insert(blowup_orbit_key(x, gl, gl));
      images.insert(plane_orbit_key(to_plane(x, PlaneSide::Left), gl));
      return true;
    });
    EXPECT_EQ(blowup_classes.size(), plane_classes.size()) << n;
    EXPECT_EQ(images.size(), plane_classes.size()) << n;
    std::set<std::string> lifted;
    for (const auto& [key, a] : plane_classes) {
      const auto x = c1zero_lift(a);
      lifted.insert(blowup_orbit_key(x, gl, gl));
      EXPECT_EQ(plane_orbit_key(to_plane(x, PlaneSide::Left), gl), key);
    }
    EXPECT_EQ(lifted, blowup_classes) << n;
  }
}

}  // namespace
}  // namespace adhm::testing
