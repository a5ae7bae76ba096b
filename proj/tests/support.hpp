#pragma once

#include <gtest/gtest.h>

#include <cctype>
#include <random>

#include "adhm/adhm.hpp"

namespace adhm::testing {

using GF = GaloisField;
using Q = Rationals;

#define EXPECT_ADHM_ERROR(stmt, expected_code)                                 \
  do {                                                                         \
    try {                                                                      \
      stmt;                                                                    \
      ADD_FAILURE() << "expected " << ::adhm::to_string(expected_code);        \
    } catch (const ::adhm::Error& e) {                                         \
      EXPECT_EQ(e.code(), expected_code) << e.what();                          \
    }                                                                          \
  } while (0)

/// Parameterized test names: '-' becomes 'm', other punctuation '_'.
inline std::string test_name(std::string s) {
  for (auto& c : s) c = c == '-' ? 'm' : std::isalnum(static_cast<unsigned char>(c)) ? c : '_';
  return s;
}

template <class F>
Matrix<F> mat(const F& f, std::size_t rows, std::size_t cols, std::vector<long long> v) {
  return Matrix<F>::from_ints(f, rows, cols, v);
}

/// Representation from integer entries, row-major per matrix.
template <class F>
BlowupRep<F> rep(const F& f, std::size_t n0, std::size_t n1, std::size_t r, std::vector<long long> b1,
                 std::vector<long long> b2, std::vector<long long> d, std::vector<long long> i,
                 std::vector<long long> j) {
  return BlowupRep<F>{f,
                      n0,
                      n1,
                      r,
                      mat(f, n0, n1, std::move(b1)),
                      mat(f, n0, n1, std::move(b2)),
                      mat(f, n1, n0, std::move(d)),
                      mat(f, n0, r, std::move(i)),
                      mat(f, r, n1, std::move(j))};
}

/// The dims-(1,1,1) example with B = 0, d = 1, i = 1, j = 0.
template <class F>
BlowupRep<F> stable_111(const F& f, long long d = 1) {
  return rep(f, 1, 1, 1, {0}, {0}, {d}, {1}, {0});
}

/// O(-C)-type data: n0 = r = 1, n1 = 0, i = 1.
template <class F>
BlowupRep<F> line_bundle_data(const F& f) {
  return rep(f, 1, 0, 1, {}, {}, {}, {1}, {});
}

template <class F>
Matrix<F> random_matrix(const F& f, std::size_t rows, std::size_t cols, std::mt19937& rng) {
  return Matrix<F>::random(f, rows, cols, rng);
}

/// Random flat representation over a finite field: random B, i, d and then j
/// chosen so that μ = 0 when possible; falls back to rejection.
template <class F>
BlowupRep<F> random_flat_rep(const F& f, Dims dims, std::mt19937& rng) {
  while (true) {
    BlowupRep<F> x = BlowupRep<F>::zero(f, dims);
    x.B1 = Matrix<F>::random(f, dims.n0, dims.n1, rng);
    x.B2 = Matrix<F>::random(f, dims.n0, dims.n1, rng);
    x.d = Matrix<F>::random(f, dims.n1, dims.n0, rng);
    x.i = Matrix<F>::random(f, dims.n0, dims.r, rng);
    x.j = Matrix<F>::random(f, dims.r, dims.n1, rng);
    if (is_flat(x)) return x;
    // Zeroing j or i keeps many samples flat when [B, d] terms vanish.
    x.j = Matrix<F>(f, dims.r, dims.n1);
    x.d = Matrix<F>(f, dims.n1, dims.n0);
    if (is_flat(x)) return x;
  }
}

}  // namespace adhm::testing
