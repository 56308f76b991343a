#include <gtest/gtest.h>

#include "lopcut/facet_engine.hpp"
#include "support/oracles.hpp"

using namespace lopcut;

namespace {

std::vector<int> fence_i() { return {1, 2, 3}; }
std::vector<int> fence_j() { return {4, 5, 6}; }

}  // namespace

TEST(BuildBn, SmallSizes) {
  const auto b3 = build_bn(3);
  EXPECT_EQ(b3.dim(), 3u);
  EXPECT_EQ(b3.triangle_row_count(), 1u);
  EXPECT_EQ(b3.box_row_count(), 3u);
  const auto& tri = b3.row(3);
  EXPECT_EQ(tri.coeffs, (RationalVector{1, -1, 1}));  // x12 - x13 + x23
  EXPECT_EQ(tri.lower, Rational(0));
  EXPECT_EQ(tri.upper, Rational(1));
  EXPECT_EQ(b3.triangle_triple(3), (std::array<int, 3>{1, 2, 3}));

  EXPECT_EQ(build_bn(4).dim(), 6u);
  EXPECT_EQ(build_bn(4).triangle_row_count(), 4u);
  EXPECT_EQ(build_bn(6).dim(), 15u);
  EXPECT_EQ(build_bn(6).triangle_row_count(), 20u);
  EXPECT_THROW(build_bn(1), DomainError);
}

TEST(BuildBn, CountsFollowClosedForms) {
  for (int n = 2; n <= 10; ++n) {
    const auto sys = build_bn(n);
    const auto d = static_cast<std::size_t>(n * (n - 1) / 2);
    const auto triples = static_cast<std::size_t>(n * (n - 1) * (n - 2) / 6);
    EXPECT_EQ(sys.dim(), d);
    EXPECT_EQ(sys.box_row_count(), d);
    EXPECT_EQ(sys.triangle_row_count(), triples);
    EXPECT_EQ(sys.row_count(), d + triples);
  }
}

TEST(BuildBn, EveryOrderingIsFeasible) {
  for (int n = 2; n <= 6; ++n) {
    const auto sys = build_bn(n);
    for_each_permutation(n, [&](const std::vector<int>& order) {
      EXPECT_TRUE(is_feasible(sys, embed_permutation(Permutation{order}, n)));
    });
  }
}

TEST(BuildBn, ReducedTrianglesMatchBothOrientations) {
  // x_ij + x_jk - x_ik in [0, 1] for every ordered triple, evaluated through
  // pair values, agrees with feasibility of the reduced rows.
  std::mt19937_64 engine(3);
  const int n = 5;
  const auto sys = build_bn(n);
  const VarIndex index(n);
  for (int trial = 0; trial < 300; ++trial) {
    RationalVector x(index.size());
    for (auto& v : x) v = Rational(static_cast<std::int64_t>(ref::uniform_below(engine, 3)), 2);
    bool all_ordered_ok = true;
    for (int i = 1; i <= n; ++i) {
      for (int j = 1; j <= n; ++j) {
        for (int k = 1; k <= n; ++k) {
          if (i == j || j == k || i == k) continue;
          const Rational v = index.value(x, i, j) + index.value(x, j, k) - index.value(x, i, k);
          if (v < Rational(0) || v > Rational(1)) all_ordered_ok = false;
        }
      }
    }
    EXPECT_EQ(is_feasible(sys, x), all_ordered_ok);
  }
}

TEST(Embed, Examples) {
  EXPECT_EQ(embed_permutation(Permutation::identity(4), 4), RationalVector(6, Rational(1)));
  EXPECT_EQ(embed_permutation(Permutation::identity(4).reversed(), 4), RationalVector(6, Rational(0)));
  EXPECT_EQ(embed_permutation(Permutation{{2, 1, 3}}, 3), (RationalVector{0, 1, 1}));
}

TEST(Evaluate, TriangleRowsAtOrderingsAreZeroOrOne) {
  const auto sys = build_bn(5);
  for_each_permutation(5, [&](const std::vector<int>& order) {
    const auto x = embed_permutation(Permutation{order}, 5);
    for (std::size_t r = sys.dim(); r < sys.row_count(); ++r) {
      const Rational v = evaluate(sys.row(r), x);
      EXPECT_TRUE(v == Rational(0) || v == Rational(1));
    }
  });
  EXPECT_THROW(evaluate(sys.row(0), RationalVector(3)), ShapeError);
}

TEST(Evaluate, FenceCutAtFencePointAndAdjacentOrdering) {
  const auto cut = fence_inequality(fence_i(), fence_j(), 6);
  EXPECT_EQ(evaluate(cut, fence_point(fence_i(), fence_j(), 6)), Rational(3, 2));
  // j2 j3 i1 j1 i2 i3
  EXPECT_EQ(evaluate(cut, embed_permutation(Permutation{{5, 6, 1, 4, 2, 3}}, 6)), Rational(1));
}

TEST(PairExpression, SubstitutesReversedPairs) {
  PairExpression e(3);
  e.add(2, 1, Rational(3));  // 3 x21 = 3 - 3 x12
  e.add(1, 3, Rational(1));
  EXPECT_EQ(e.coeffs(), (RationalVector{-3, 1, 0}));
  EXPECT_EQ(e.constant(), Rational(3));
  EXPECT_EQ(e.evaluate(RationalVector{1, 1, 1}), Rational(1));
}

TEST(AddCut, IdempotentAndNormalizing) {
  auto sys = build_bn(6);
  const auto cut = fence_inequality(fence_i(), fence_j(), 6);
  sys = add_cut(sys, cut);
  sys = add_cut(sys, cut);
  EXPECT_EQ(sys.cut_pool().size(), 1u);

  auto scaled = cut;
  for (auto& c : scaled.coeffs) c *= Rational(3);
  *scaled.upper *= Rational(3);
  sys = add_cut(sys, scaled);
  EXPECT_EQ(sys.cut_pool().size(), 1u);
  EXPECT_EQ(sys.row_count(), sys.base_row_count() + 1);
  EXPECT_TRUE(sys.is_cut_row(sys.base_row_count()));

  EXPECT_FALSE(is_feasible(sys, fence_point(fence_i(), fence_j(), 6)));
  EXPECT_TRUE(is_feasible(sys.without_cuts(), fence_point(fence_i(), fence_j(), 6)));
}

TEST(AddCut, RejectsDegenerateAndMismatchedCuts) {
  const auto sys = build_bn(4);
  EXPECT_THROW(add_cut(sys, LinearInequality::make(RationalVector(6), Rational(0), Rational(0), RowOrigin::hull_cut)),
               DegenerateCutError);
  EXPECT_THROW(add_cut(sys, LinearInequality::at_most(RationalVector{1, 1}, Rational(1), RowOrigin::hull_cut)),
               ShapeError);
  EXPECT_THROW(LinearInequality::make(RationalVector{1}, Rational(2), Rational(1), RowOrigin::aux), DomainError);
  EXPECT_THROW(LinearInequality::make(RationalVector{1}, std::nullopt, std::nullopt, RowOrigin::aux), DomainError);
}

TEST(AddCut, ScalesFractionalCutsToIntegers) {
  auto sys = build_bn(3);
  sys = add_cut(sys, LinearInequality::make(RationalVector{Rational(1, 2), Rational(-1, 3), 0}, Rational(-1, 6),
                                            Rational(1, 2), RowOrigin::aux));
  const auto& pooled = sys.cut_pool().front();
  EXPECT_EQ(pooled.coeffs, (RationalVector{3, -2, 0}));
  EXPECT_EQ(pooled.lower, Rational(-1));
  EXPECT_EQ(pooled.upper, Rational(3));
  const auto& ir = sys.integer_row(sys.base_row_count());
  EXPECT_EQ(ir.coeffs, (std::vector<std::int64_t>{3, -2, 0}));
}

TEST(TightRows, FencePoint) {
  const auto sys = build_bn(6);
  const auto x = fence_point(fence_i(), fence_j(), 6);
  const auto tight = tight_rows(sys, x);
  for (const auto& t : tight) {
    const auto& row = sys.row(t.row);
    EXPECT_EQ(evaluate(row, x), t.side == Side::upper ? *row.upper : *row.lower);
  }
  EXPECT_EQ(tight.size(), 18u);
}
