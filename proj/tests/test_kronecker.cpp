#include "support.hpp"

namespace adhm::testing {
namespace {

template <class F>
std::vector<KroneckerBlock<F>> sorted(const F& f, std::vector<KroneckerBlock<F>> blocks) {
  std::stable_sort(blocks.begin(), blocks.end(),
                   [&](const auto& a, const auto& b) { return block_less(f, a, b); });
  return blocks;
}

template <class F>
bool same_multiset(const F& f, const std::vector<KroneckerBlock<F>>& a, const std::vector<KroneckerBlock<F>>& b) {
  if (a.size() != b.size()) return false;
  const auto sa = sorted(f, a), sb = sorted(f, b);
  for (std::size_t k = 0; k < sa.size(); ++k)
    if (!same_block(f, sa[k], sb[k])) return false;
  return true;
}

template <class F>
std::string describe(const F& f, const std::vector<KroneckerBlock<F>>& blocks) {
  std::string s;
  for (const auto& b : blocks) s += b.to_string(f) + " ";
  return s;
}

template <class F>
void expect_valid(const Matrix<F>& b1, const Matrix<F>& b2, const KroneckerDecomposition<F>& d) {
  ASSERT_TRUE(is_invertible(d.P));
  ASSERT_TRUE(is_invertible(d.Q));
  const auto [e1, e2] = assemble_blocks(b1.field(), d.blocks);
  EXPECT_EQ(d.P * b1 * d.Q, e1);
  EXPECT_EQ(d.P * b2 * d.Q, e2);
}

template <class F>
std::vector<KroneckerBlock<F>> random_blocks(std::mt19937& rng, const std::vector<typename F::Elem>& eigs) {
  std::vector<KroneckerBlock<F>> blocks;
  const std::size_t count = 1 + rng() % 4;
  for (std::size_t t = 0; t < count; ++t) {
    switch (rng() % 4) {
      case 0: blocks.push_back({KroneckerKind::A, rng() % 3, std::nullopt, {}}); break;
      case 1: blocks.push_back({KroneckerKind::B, rng() % 3, std::nullopt, {}}); break;
      case 2: blocks.push_back({KroneckerKind::C, 1 + rng() % 2, std::nullopt, {}}); break;
      default: blocks.push_back({KroneckerKind::D, 1 + rng() % 2, eigs[rng() % eigs.size()], {}}); break;
    }
  }
  return blocks;
}

template <class F>
void roundtrip_random(const F& f, const std::vector<typename F::Elem>& eigs, int trials, unsigned seed) {
  std::mt19937 rng(seed);
  for (int t = 0; t < trials; ++t) {
    const auto blocks = random_blocks<F>(rng, eigs);
    const auto [c1, c2] = assemble_blocks(f, blocks);
    const auto g0 = random_invertible(f, c1.rows(), rng), g1 = random_invertible(f, c1.cols(), rng);
    const Matrix<F> b1 = g0 * c1 * g1, b2 = g0 * c2 * g1;
    const auto d = kronecker_decompose(b1, b2);
    expect_valid(b1, b2, d);
    EXPECT_TRUE(same_multiset(f, d.blocks, blocks)) << "in: " << describe(f, blocks) << " out: " << describe(f, d.blocks);
  }
}

TEST(Kronecker, CmIsSingleB) {
  for (std::size_t m = 0; m <= 5; ++m) {
    Q q;
    const auto x = cm_data(m, q);
    const auto d = kronecker_decompose(x.B1, x.B2);
    ASSERT_EQ(d.blocks.size(), 1u);
    EXPECT_EQ(d.blocks[0].kind, KroneckerKind::B);
    EXPECT_EQ(d.blocks[0].m, m);
    expect_valid(x.B1, x.B2, d);
    GF f(3);
    const auto y = cm_data(m, f);
    EXPECT_EQ(kronecker_decompose(y.B1, y.B2).blocks.size(), 1u);
  }
}

TEST(Kronecker, Examples) {
  Q q;
  const auto c = kronecker_decompose(mat(q, 1, 1, {1}), mat(q, 1, 1, {0}));
  ASSERT_EQ(c.blocks.size(), 1u);
  EXPECT_EQ(c.blocks[0].kind, KroneckerKind::C);
  EXPECT_EQ(c.blocks[0].m, 1u);

  const auto z = kronecker_decompose(Matrix<Q>(q, 0, 2), Matrix<Q>(q, 0, 2));
  ASSERT_EQ(z.blocks.size(), 2u);
  for (const auto& b : z.blocks) {
    EXPECT_EQ(b.kind, KroneckerKind::B);
    EXPECT_EQ(b.m, 0u);
  }

  const auto a = kronecker_decompose(Matrix<Q>(q, 2, 0), Matrix<Q>(q, 2, 0));
  ASSERT_EQ(a.blocks.size(), 2u);
  EXPECT_EQ(a.blocks[0].kind, KroneckerKind::A);

  // (I, A) with A = J_2(2) ⊕ (−1/2).
  auto a2 = mat(q, 3, 3, {2, 1, 0, 0, 2, 0, 0, 0, 0});
  a2(2, 2) = q.parse("-1/2");
  const auto b1 = Matrix<Q>::identity(q, 3);
  const auto pen = kronecker_decompose(b1, a2);
  expect_valid(b1, a2, pen);
  const std::vector<KroneckerBlock<Q>> want = {{KroneckerKind::D, 1, q.parse("-2"), {}},
                                               {KroneckerKind::D, 2, q.parse("1/2"), {}}};
  EXPECT_TRUE(same_multiset(q, pen.blocks, want)) << describe(q, pen.blocks);
}

TEST(Kronecker, OutputIsCanonicallyOrdered) {
  GF f(3);
  std::mt19937 rng(5);
  for (int t = 0; t < 40; ++t) {
    const auto b1 = Matrix<GF>::random(f, 3, 4, rng), b2 = Matrix<GF>::random(f, 3, 4, rng);
    const auto d = kronecker_decompose(b1, b2);
    expect_valid(b1, b2, d);
    for (std::size_t k = 0; k + 1 < d.blocks.size(); ++k)
      EXPECT_FALSE(block_less(f, d.blocks[k + 1], d.blocks[k]));
  }
}

TEST(Kronecker, RandomRoundTripRationals) {
  Q q;
  roundtrip_random(q, {q.parse("0"), q.parse("1"), q.parse("-3/2"), q.parse("5")}, 60, 11);
}

TEST(Kronecker, RandomRoundTripGF3) {
  GF f(3);
  roundtrip_random(f, {f.from_int(0), f.from_int(1), f.from_int(2)}, 60, 12);
}

TEST(Kronecker, RandomRoundTripGF4) {
  GF f(2, 2);
  std::vector<GF::Elem> all;
  for (unsigned c0 = 0; c0 < 2; ++c0)
    for (unsigned c1 = 0; c1 < 2; ++c1) all.push_back(f.from_coefficients({c0, c1}));
  roundtrip_random(f, all, 60, 13);
}

TEST(Kronecker, IrreducibleCompanionOverGF2) {
  GF f(2);
  const KroneckerBlock<GF> blk{KroneckerKind::DGeneralized, 2, std::nullopt, {f.one(), f.one(), f.one()}};
  const auto [c1, c2] = assemble_blocks(f, {blk});
  std::mt19937 rng(3);
  const auto g0 = random_invertible(f, 2, rng), g1 = random_invertible(f, 2, rng);
  const Matrix<GF> b1 = g0 * c1 * g1, b2 = g0 * c2 * g1;
  const auto d = kronecker_decompose(b1, b2);
  expect_valid(b1, b2, d);
  ASSERT_EQ(d.blocks.size(), 1u);
  EXPECT_TRUE(same_block(f, d.blocks[0], blk)) << describe(f, d.blocks);
}

TEST(Kronecker, IrreducibleCompanionOverRationals) {
  Q q;
  const KroneckerBlock<Q> blk{KroneckerKind::DGeneralized, 2, std::nullopt, {q.parse("-2"), q.zero(), q.one()}};
  const std::vector<KroneckerBlock<Q>> in = {blk, {KroneckerKind::B, 1, std::nullopt, {}}};
  const auto [c1, c2] = assemble_blocks(q, in);
  std::mt19937 rng(4);
  const auto g0 = random_invertible(q, c1.rows(), rng), g1 = random_invertible(q, c1.cols(), rng);
  const Matrix<Q> b1 = g0 * c1 * g1, b2 = g0 * c2 * g1;
  const auto d = kronecker_decompose(b1, b2);
  expect_valid(b1, b2, d);
  EXPECT_TRUE(same_multiset(q, d.blocks, in)) << describe(q, d.blocks);
}

TEST(Kronecker, SizesAddUp) {
  Q q;
  std::mt19937 rng(8);
  for (int t = 0; t < 30; ++t) {
    const std::size_t r = rng() % 4, c = rng() % 4;
    const auto b1 = random_matrix(q, r, c, rng), b2 = random_matrix(q, r, c, rng);
    const auto d = kronecker_decompose(b1, b2);
    std::size_t rows = 0, cols = 0;
    for (const auto& b : d.blocks) {
      rows += b.rows();
      cols += b.cols();
    }
    EXPECT_EQ(rows, r);
    EXPECT_EQ(cols, c);
    expect_valid(b1, b2, d);
  }
}

}  // namespace
}  // namespace adhm::testing
