#include "kcone/exact_matrix.hpp"

#include "generators.hpp"

#include <gtest/gtest.h>

using namespace kcone;
using kcone::testgen::Gen;

namespace {

ExactMatrix dense(std::vector<std::vector<long>> rows) {
  std::vector<Vector> v;
  for (auto& r : rows) {
    Vector row;
    for (long x : r) row.emplace_back(x);
    v.push_back(row);
  }
  return ExactMatrix::from_dense(v);
}

}  // namespace

TEST(ExactMatrix, RankOfSmallExamples) {
  EXPECT_EQ(rank(dense({{1, 2}, {2, 4}})), 1u);
  EXPECT_EQ(rank(dense({{1, 2}, {3, 4}})), 2u);
  EXPECT_EQ(rank(dense({{0, 0, 0}, {0, 0, 0}})), 0u);
  EXPECT_EQ(rank(ExactMatrix(0, 5)), 0u);
  // Entries that cancel only over Q, not in floating point.
  std::vector<Vector> rows = {{Scalar(1, 3), Scalar(1, 7)}, {Scalar(7, 1), Scalar(3, 1)}};
  EXPECT_EQ(rank(ExactMatrix::from_dense(rows)), 1u);
}

TEST(ExactMatrix, KernelOfRankOneMatrix) {
  const ExactMatrix m = dense({{1, 2, 3}, {2, 4, 6}});
  const auto k = kernel_basis(m);
  ASSERT_EQ(k.size(), 2u);
  for (const auto& v : k) EXPECT_TRUE(testgen::is_zero_vector(m.apply(v)));
}

TEST(ExactMatrix, RowReduceIsCanonical) {
  const auto rs = row_reduce(dense({{2, 4, 6}, {1, 1, 1}}));
  ASSERT_EQ(rs.rank(), 2u);
  EXPECT_EQ(rs.pivot_columns(), (std::vector<std::size_t>{0, 1}));
  EXPECT_EQ(rs.free_columns(), (std::vector<std::size_t>{2}));
  // Rows: (1, 0, -1) and (0, 1, 2).
  EXPECT_EQ(to_dense(rs.pivot_row(0), 3), (Vector{1, 0, -1}));
  EXPECT_EQ(to_dense(rs.pivot_row(1), 3), (Vector{0, 1, 2}));
}

TEST(ExactMatrix, RejectsMalformedInput) {
  EXPECT_THROW(ExactMatrix::from_dense({{1, 2}, {1}}), std::invalid_argument);
  ExactMatrix m(2, 2);
  EXPECT_THROW(m.set_row(0, {{1, Scalar(1)}, {0, Scalar(1)}}), std::invalid_argument);
  EXPECT_THROW(m.set_row(0, {{0, Scalar(0)}}), std::invalid_argument);
  EXPECT_THROW(m.apply(Vector(3)), std::invalid_argument);
  EXPECT_THROW(ExactMatrix(2, 3) * ExactMatrix(2, 3), std::invalid_argument);
}

TEST(ExactMatrixProperty, RankPlusNullityIsColumnCount) {
  Gen g(101);
  for (int trial = 0; trial < 60; ++trial) {
    const std::size_t r = g.integer(1, 9), c = g.integer(1, 9);
    const ExactMatrix m = g.coin(0.5) ? g.matrix(r, c, 0.4) : g.low_rank(r, c, g.integer(1, 3));
    const auto k = kernel_basis(m);
    EXPECT_EQ(rank(m) + k.size(), c);
    for (const auto& v : k) EXPECT_TRUE(testgen::is_zero_vector(m.apply(v)));
    EXPECT_EQ(span_rank(k, c), k.size());
  }
}

TEST(ExactMatrixProperty, RankOfTransposeAgrees) {
  Gen g(202);
  for (int trial = 0; trial < 60; ++trial) {
    const ExactMatrix m = g.low_rank(g.integer(1, 10), g.integer(1, 10), g.integer(0, 4));
    EXPECT_EQ(rank(m), rank(m.transpose()));
  }
}

TEST(ExactMatrixProperty, RowPermutationInvariance) {
  Gen g(303);
  for (int trial = 0; trial < 40; ++trial) {
    const ExactMatrix m = g.matrix(g.integer(1, 8), g.integer(1, 8), 0.5);
    const ExactMatrix p = testgen::permute_rows(m, g.permutation(m.rows()));
    EXPECT_EQ(rank(m), rank(p));
    // Same row space, so the same canonical RREF.
    const auto a = row_reduce(m), b = row_reduce(p);
    ASSERT_EQ(a.rank(), b.rank());
    for (std::size_t i = 0; i < a.rank(); ++i) EXPECT_EQ(a.pivot_row(i), b.pivot_row(i));
  }
}

TEST(ExactMatrixProperty, SparseEliminationMatchesBareiss) {
  Gen g(404);
  for (int trial = 0; trial < 80; ++trial) {
    const std::size_t r = g.integer(1, 12), c = g.integer(1, 12);
    const ExactMatrix m = g.coin(0.5) ? g.matrix(r, c, 0.3) : g.low_rank(r, c, g.integer(0, 5));
    EXPECT_EQ(rank(m), bareiss_rank(m)) << "trial " << trial;
  }
}

TEST(ExactMatrixProperty, QuotientCoordinatesSparseAndDenseAgree) {
  Gen g(505);
  for (int trial = 0; trial < 40; ++trial) {
    const std::size_t c = g.integer(2, 10);
    const auto rs = row_reduce(g.matrix(g.integer(1, 6), c, 0.4));
    for (int k = 0; k < 5; ++k) {
      Vector v(c);
      for (auto& x : v) {
        if (g.coin(0.5)) x = g.rational();
      }
      const Vector dense_q = rs.quotient_coordinates(v);
      EXPECT_EQ(to_sparse(dense_q), rs.sparse_quotient_coordinates(to_sparse(v)));
      // v - (lift of its coordinates) lies in the row space.
      Vector lift(c);
      for (std::size_t i = 0; i < rs.free_columns().size(); ++i) lift[rs.free_columns()[i]] = dense_q[i];
      Vector diff(c);
      for (std::size_t i = 0; i < c; ++i) diff[i] = v[i] - lift[i];
      EXPECT_TRUE(rs.contains(diff));
    }
  }
}

TEST(ExactMatrixProperty, SpanDimsFollowInclusionExclusion) {
  Gen g(606);
  for (int trial = 0; trial < 40; ++trial) {
    const std::size_t len = g.integer(2, 8);
    std::vector<Vector> a, b;
    for (int i = g.integer(0, 4); i > 0; --i) {
      Vector v(len);
      for (auto& x : v) x = g.rational(2);
      a.push_back(v);
    }
    for (int i = g.integer(0, 4); i > 0; --i) {
      Vector v(len);
      for (auto& x : v) x = g.rational(2);
      b.push_back(g.coin(0.3) && !a.empty() ? a[0] : v);
    }
    const SpanDims d = span_dims(a, b);
    EXPECT_EQ(d.a + d.b, d.sum + d.intersection);
    std::vector<Vector> both = a;
    both.insert(both.end(), b.begin(), b.end());
    EXPECT_EQ(d.sum, span_rank(both, len));
  }
}

TEST(ExactMatrixProperty, ProductRankBound) {
  Gen g(707);
  for (int trial = 0; trial < 30; ++trial) {
    const ExactMatrix a = g.matrix(g.integer(1, 7), 5, 0.5);
    const ExactMatrix b = g.matrix(5, g.integer(1, 7), 0.5);
    EXPECT_LE(rank(a * b), std::min(rank(a), rank(b)));
  }
}
