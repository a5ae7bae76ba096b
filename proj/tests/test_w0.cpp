#include "support.hpp"

namespace adhm::testing {
namespace {

// Isomorphism classes of stable flat W = 0 data by brute force over all tuples.
template <class F>
std::size_t brute_stable_classes(const F& f, std::size_t n0, std::size_t n1, const StabilityParam& zeta) {
  std::vector<BlowupRep<F>> classes;
  visit_reps<F>(Dims{n0, n1, 0}, f, true, [&](const BlowupRep<F>& x) {
    if (!zeta_exhaustive(x, zeta).is_stable()) return true;
    for (const auto& c : classes)
      if (find_isomorphism(c, x, false)) return true;
    classes.push_back(x);
    return true;
  });
  return classes.size();
}

std::vector<StabilityParam> balanced_params(std::size_t n0, std::size_t n1) {
  std::vector<StabilityParam> out = {StabilityParam(0, 0)};
  for (long t : {-2, -1, 1, 3}) out.emplace_back(t * static_cast<long>(n1), -t * static_cast<long>(n0));
  return out;
}

TEST(ClassifyW0, Examples) {
  const auto c = classify_W0(1, 2, StabilityParam(-2, 1));
  EXPECT_EQ(c.kind, W0Kind::UniqueCm);
  EXPECT_EQ(c.m, 1u);
  EXPECT_EQ(c.class_count(2), 1u);

  const auto e = classify_W0(2, 2, StabilityParam(-1, 1));
  EXPECT_EQ(e.kind, W0Kind::Empty);
  EXPECT_FALSE(e.note.empty());

  EXPECT_EQ(classify_W0(0, 1, StabilityParam(1, 0)).kind, W0Kind::Point);
  EXPECT_EQ(classify_W0(3, 2, StabilityParam(-2, 3)).kind, W0Kind::UniqueAm);
  EXPECT_EQ(classify_W0(1, 1, StabilityParam(-1, 1)).kind, W0Kind::BlownUpPlane);
  EXPECT_EQ(classify_W0(1, 1, StabilityParam(1, -1)).kind, W0Kind::Plane);
  EXPECT_EQ(classify_W0(1, 1, StabilityParam(0, 0)).kind, W0Kind::PuncturedPlane);
  EXPECT_EQ(classify_W0(0, 0, StabilityParam(0, 0)).kind, W0Kind::Empty);
  EXPECT_EQ(classify_W0(1, 1, StabilityParam(-1, 1)).class_count(3), 12u);
  EXPECT_ADHM_ERROR(classify_W0(1, 2, StabilityParam(-1, -1)), ErrorCode::PreconditionViolated);
}

TEST(ClassifyW0, ClosedPointCounts) {
  // Degree-2 points: (N(q^2) - N(q)) / 2.
  EXPECT_EQ(W0Classification::closed_points(W0Kind::BlownUpPlane, 2, 2), 7u);
  EXPECT_EQ(W0Classification::closed_points(W0Kind::Plane, 2, 2), 6u);
  EXPECT_EQ(W0Classification::closed_points(W0Kind::PuncturedPlane, 2, 2), 6u);
  EXPECT_EQ(W0Classification::closed_points(W0Kind::Plane, 3, 2), 36u);
  EXPECT_EQ(W0Classification::closed_points(W0Kind::BlownUpPlane, 2, 3), 22u);
  EXPECT_EQ(W0Classification::closed_points(W0Kind::Plane, 2, 4), (256u - 16u) / 4u);
  EXPECT_EQ(W0Classification::closed_points(W0Kind::Plane, 2, 1), 4u);

  const auto c = classify_W0(2, 2, StabilityParam(-1, 1));
  EXPECT_EQ(c.kind, W0Kind::Empty);
  ASSERT_TRUE(c.surface.has_value());
  EXPECT_EQ(*c.surface, W0Kind::BlownUpPlane);
  EXPECT_EQ(c.class_count(2), 7u);
  EXPECT_FALSE(classify_W0(2, 3, StabilityParam(-3, 2)).surface.has_value());
}

TEST(ClassifyW0, DegreeThreePointsOverGF2) {
  GF f(2);
  EXPECT_EQ(w0_stable_classes(f, 3, 3, StabilityParam(-1, 1)).size(), 22u);
}

TEST(ClassifyW0, UniqueClassIsCm) {
  GF f(2);
  for (std::size_t m = 0; m <= 2; ++m) {
    const auto classes = w0_stable_classes(f, m, m + 1, wall_point(m));
    ASSERT_EQ(classes.size(), 1u) << m;
    EXPECT_TRUE(find_isomorphism(classes[0], cm_data(m, f), false)) << m;
  }
}

struct W0Case {
  unsigned p;
  std::size_t n0, n1;
};

class ClassifyW0Sweep : public ::testing::TestWithParam<W0Case> {};

TEST_P(ClassifyW0Sweep, CountsMatchOrbitRepsAndBruteForce) {
  const auto [p, n0, n1] = GetParam();
  GF f(p);
  for (const auto& zeta : balanced_params(n0, n1)) {
    const auto c = classify_W0(n0, n1, zeta);
    const auto reps = w0_stable_classes(f, n0, n1, zeta).size();
    EXPECT_EQ(reps, c.class_count(p)) << "dims " << n0 << "," << n1 << " zeta " << zeta.to_string() << " kind "
                                      << to_string(c.kind);
    if (std::pow(p, 3 * n0 * n1) > 5000) continue;
    EXPECT_EQ(brute_stable_classes(f, n0, n1, zeta), reps) << "dims " << n0 << "," << n1 << " zeta "
                                                            << zeta.to_string();
  }
}

INSTANTIATE_TEST_SUITE_P(Small, ClassifyW0Sweep,
                         ::testing::Values(W0Case{2, 0, 1}, W0Case{2, 1, 0}, W0Case{2, 1, 1}, W0Case{2, 1, 2},
                                           W0Case{2, 2, 1}, W0Case{2, 2, 2}, W0Case{3, 1, 1}, W0Case{3, 1, 2}, W0Case{3, 2, 2},
                                           W0Case{2, 0, 2}),
                         [](const auto& info) {
                           return "GF" + std::to_string(info.param.p) + "_" + std::to_string(info.param.n0) + "_" +
                                  std::to_string(info.param.n1);
                         });

TEST(BlownUpPlane, Examples) {
  GF f(5);
  const auto p = blowup_point_forward(f, f.from_int(1), f.from_int(0), f.from_int(3));
  EXPECT_EQ(p.z1, f.from_int(3));
  EXPECT_EQ(p.z2, f.zero());
  EXPECT_EQ(p.z, f.one());
  EXPECT_EQ(p.w, f.zero());
  const auto q = blowup_point_forward(f, f.from_int(0), f.from_int(1), f.from_int(0));
  EXPECT_EQ(q.z1, f.zero());
  EXPECT_EQ(q.z2, f.zero());
  EXPECT_EQ(q.z, f.zero());
  EXPECT_EQ(q.w, f.one());
  EXPECT_ADHM_ERROR(blowup_point_forward(f, f.zero(), f.zero(), f.one()), ErrorCode::NotS0Stable);
  EXPECT_ADHM_ERROR(blowup_point_backward(f, BlownUpPoint<GF>{f.one(), f.one(), f.zero(), f.zero()}),
                    ErrorCode::InvalidPoint);
  EXPECT_ADHM_ERROR(blowup_point_backward(f, BlownUpPoint<GF>{f.one(), f.zero(), f.zero(), f.one()}),
                    ErrorCode::InvalidPoint);
}

TEST(BlownUpPlane, TorusOrbitsOverGF3) {
  GF f(3);
  std::set<std::tuple<GF::Elem, GF::Elem, GF::Elem, GF::Elem>> images;
  std::size_t triples = 0;
  for (GF::Elem b1 = 0; b1 < 3; ++b1)
    for (GF::Elem b2 = 0; b2 < 3; ++b2)
      for (GF::Elem d = 0; d < 3; ++d) {
        if (b1 == 0 && b2 == 0) continue;
        ++triples;
        const auto p = blowup_point_forward(f, b1, b2, d);
        images.insert({p.z1, p.z2, p.z, p.w});
        // Torus invariance: (t B, d / t).
        const auto t = f.from_int(2);
        const auto pt = blowup_point_forward(f, f.mul(t, b1), f.mul(t, b2), f.div(d, t));
        EXPECT_EQ(std::make_tuple(pt.z1, pt.z2, pt.z, pt.w), std::make_tuple(p.z1, p.z2, p.z, p.w));
      }
  EXPECT_EQ(triples, 24u);
  EXPECT_EQ(images.size(), 12u);

  const auto points = blown_up_plane_points(f);
  ASSERT_EQ(points.size(), 12u);
  for (const auto& pt : points) {
    EXPECT_TRUE(images.count({pt.z1, pt.z2, pt.z, pt.w}));
    const auto [b1, b2, d] = blowup_point_backward(f, pt);
    const auto back = blowup_point_forward(f, b1, b2, d);
    EXPECT_EQ(std::make_tuple(back.z1, back.z2, back.z, back.w), std::make_tuple(pt.z1, pt.z2, pt.z, pt.w));
  }
}

TEST(BlownUpPlane, PointCountIsQSquaredPlusQ) {
  for (unsigned p : {2u, 3u, 5u, 7u}) {
    GF f(p);
    EXPECT_EQ(blown_up_plane_points(f).size(), p * p + p);
  }
  GF f4(2, 2);
  EXPECT_EQ(blown_up_plane_points(f4).size(), 20u);
}

ChernData chern(long r, long k, long n) { return ChernData{r, k, Rational(n)}; }

TEST(Walls, CandidateExamples) {
  EXPECT_EQ(candidate_walls(chern(1, 0, 4)), (std::vector<std::size_t>{0, 1, 2, 3}));
  EXPECT_EQ(candidate_walls(chern(1, 0, 2)), (std::vector<std::size_t>{0, 1}));
  EXPECT_EQ(candidate_walls(chern(2, 0, 1)), (std::vector<std::size_t>{0}));
  EXPECT_EQ(candidate_walls(chern(1, 1, 0)), (std::vector<std::size_t>{0}));
  EXPECT_TRUE(candidate_walls(chern(1, 0, 0)).empty());
  EXPECT_EQ(chern(2, 2, 0).dims(), (std::pair<std::size_t, std::size_t>{0, 2}));
  EXPECT_ADHM_ERROR(candidate_walls(chern(2, 1, 0)), ErrorCode::InvalidChernData);
  EXPECT_ADHM_ERROR(candidate_walls(chern(0, 0, 1)), ErrorCode::InvalidChernData);
  EXPECT_ADHM_ERROR(candidate_walls(chern(1, 0, -1)), ErrorCode::InvalidChernData);
}

TEST(Walls, ChamberRepresentatives) {
  const auto walls = candidate_walls(chern(1, 0, 4));
  EXPECT_EQ(chamber_rep(0, walls).zeta1, Rational(-1, 2));
  EXPECT_EQ(chamber_rep(1, walls).zeta1, Rational(1, 4));
  EXPECT_EQ(chamber_rep(2, walls).zeta1, Rational(7, 12));
  for (std::size_t m = 0; m <= 4; ++m) {
    const auto z = chamber_rep(m, walls);
    EXPECT_EQ(z.zeta0, Rational(-1));
    for (std::size_t other = 0; other <= 4; ++other) EXPECT_EQ(in_chamber(z, other, walls), other == m);
    const auto signs = wall_signs(z, walls);
    for (std::size_t t = 0; t < walls.size(); ++t) EXPECT_EQ(signs[t], walls[t] < m ? 1 : -1);
  }
  EXPECT_ADHM_ERROR(chamber_rep(5, walls), ErrorCode::PreconditionViolated);
  EXPECT_EQ(chamber_rep(0, {}).zeta1, Rational(-1, 2));
}

TEST(Walls, WallPointsLieOnTheirWall) {
  for (std::size_t m = 0; m <= 5; ++m) {
    const auto z = wall_point(m);
    EXPECT_EQ(z.wall_form(m), 0);
    EXPECT_LT(z.zeta0, 0);
    EXPECT_LT(z.zeta0 + z.zeta1, 0);
    for (std::size_t other = 0; other <= 5; ++other)
      if (other != m) {
        EXPECT_NE(z.wall_form(other), 0);
      }
  }
}

TEST(Walls, WitnessesOnActualWalls) {
  GF f(2);
  for (const auto& [c, m] : {std::pair{chern(1, 0, 1), std::size_t{0}}, std::pair{chern(1, 0, 2), std::size_t{1}}}) {
    const auto x = wall_witness(c, m, f);
    ASSERT_TRUE(x.has_value()) << m;
    EXPECT_TRUE(is_flat(*x));
    EXPECT_EQ(zeta_exhaustive(*x, wall_point(m)).status, VerdictStatus::StrictlySemistable);
  }
}

}  // namespace
}  // namespace adhm::testing
