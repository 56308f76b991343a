#include <gtest/gtest.h>

#include "lopcut/facet_engine.hpp"
#include "lopcut/oracle.hpp"
#include "support/oracles.hpp"

using namespace lopcut;

namespace {

LopInstance small_instance() {
  // c12 = 5, c13 = 1, c23 = 4, c31 = 2.
  return LopInstance(3, {0, 5, 1, 0, 0, 4, 2, 0, 0});
}

/// Maximum by reverse-lexicographic enumeration, keeping the smallest order
/// among ties.
std::pair<std::int64_t, std::vector<int>> reverse_scan(const LopInstance& inst) {
  const int n = inst.n();
  std::vector<int> order(static_cast<std::size_t>(n));
  for (int k = 0; k < n; ++k) order[static_cast<std::size_t>(k)] = n - k;
  std::int64_t best = std::numeric_limits<std::int64_t>::min();
  std::vector<int> arg;
  do {
    const auto v = ref::reference_value(inst.costs(), n, order);
    if (v > best || (v == best && order < arg)) {
      best = v;
      arg = order;
    }
  } while (std::prev_permutation(order.begin(), order.end()));
  return {best, arg};
}

}  // namespace

TEST(BruteForce, SmallInstance) {
  const auto result = brute_force_opt(small_instance());
  EXPECT_EQ(result.best_value, 10);
  EXPECT_EQ(result.best_permutation, (Permutation{{1, 2, 3}}));
}

TEST(BruteForce, TieGoesToSmallestOrdering) {
  const auto result = brute_force_opt(LopInstance(2, {0, 3, 3, 0}));
  EXPECT_EQ(result.best_value, 3);
  EXPECT_EQ(result.best_permutation, (Permutation{{1, 2}}));
  EXPECT_EQ(result.tight_count, std::optional<std::size_t>(2));
}

TEST(BruteForce, IndependentOfEnumerationOrder) {
  for (std::uint64_t seed = 0; seed < 30; ++seed) {
    const auto inst = random_instance(6, seed, -3, 3);
    const auto result = brute_force_opt(inst);
    const auto [value, order] = reverse_scan(inst);
    EXPECT_EQ(result.best_value, value);
    EXPECT_EQ(result.best_permutation.order, order);
  }
}

TEST(BruteForce, BoundedByTheRelaxation) {
  for (int n = 3; n <= 7; ++n) {
    for (std::uint64_t seed = 0; seed < 6; ++seed) {
      const auto inst = random_instance(n, seed, -20, 20);
      const auto lp = lp_solve(build_bn(n), lop_objective(inst));
      EXPECT_LE(Rational(brute_force_opt(inst).best_value), lp.objective);
    }
  }
}

TEST(BruteForce, ScaleLimit) {
  EXPECT_THROW(brute_force_opt(random_instance(11, 1, 0, 9)), ScaleError);
}

TEST(Validate, FenceCut) {
  const auto result = validate_inequality(fence_inequality({1, 2, 3}, {4, 5, 6}, 6), 6);
  EXPECT_TRUE(result.valid);
  EXPECT_EQ(result.max_lhs, Rational(1));
  EXPECT_EQ(result.min_lhs, Rational(-4));
  EXPECT_EQ(result.tight_count, 18u);
  EXPECT_EQ(result.scanned, 720u);
  EXPECT_EQ(result.mode, ScanMode::exhaustive);
}

TEST(Validate, TriangleRow) {
  const auto sys = build_bn(4);
  const auto& row = sys.row(sys.dim());
  const auto result = validate_inequality(LinearInequality::at_most(row.coeffs, Rational(1), RowOrigin::triangle), 4);
  EXPECT_TRUE(result.valid);
  EXPECT_GT(result.tight_count, 0u);
}

TEST(Validate, WrongCutIsRejected) {
  auto cut = fence_inequality({1, 2, 3}, {4, 5, 6}, 6);
  cut.upper = Rational(0);
  const auto result = validate_inequality(cut, 6);
  EXPECT_FALSE(result.valid);
  EXPECT_EQ(result.max_lhs, Rational(1));
}

TEST(Validate, SampledBeyondEight) {
  const auto result = validate_inequality(fence_inequality({1, 2, 3}, {4, 5, 6}, 9), 9, 500, 7);
  EXPECT_EQ(result.mode, ScanMode::sampled);
  EXPECT_EQ(result.scanned, 500u);
  EXPECT_TRUE(result.valid);
}

TEST(Validate, LowerBoundedRows) {
  const VarIndex index(4);
  RationalVector coeffs(index.size());
  coeffs[index.column(1, 2)] = Rational(1);
  coeffs[index.column(3, 4)] = Rational(1);
  const auto ok = validate_inequality(LinearInequality::make(coeffs, Rational(0), std::nullopt, RowOrigin::hull_cut), 4);
  EXPECT_TRUE(ok.valid);
  const auto bad = validate_inequality(LinearInequality::make(coeffs, Rational(1), std::nullopt, RowOrigin::hull_cut), 4);
  EXPECT_FALSE(bad.valid);
  EXPECT_EQ(bad.min_lhs, Rational(0));
}

TEST(FacetDimension, FenceIsAFacet) {
  const auto dim = facet_dimension(fence_inequality({1, 2, 3}, {4, 5, 6}, 6), 6);
  EXPECT_EQ(dim.dimension, 14u);
  EXPECT_TRUE(dim.is_facet);
  EXPECT_EQ(dim.tight_count, 18u);
}

TEST(FacetDimension, TrivialFacetOfThreeNodes) {
  const auto dim = facet_dimension(LinearInequality::at_most({Rational(1), Rational(0), Rational(0)}, Rational(1),
                                                             RowOrigin::bound),
                                   3);
  EXPECT_EQ(dim.dimension, 2u);
  EXPECT_TRUE(dim.is_facet);
  EXPECT_EQ(dim.tight_count, 3u);
}

TEST(FacetDimension, DegenerateZeroRow) {
  const auto dim = facet_dimension(LinearInequality::at_most(RationalVector(3), Rational(0), RowOrigin::hull_cut), 3);
  EXPECT_EQ(dim.dimension, 3u);
  EXPECT_FALSE(dim.is_facet);
}

TEST(FacetDimension, Errors) {
  EXPECT_THROW(facet_dimension(LinearInequality::at_most(RationalVector(3), Rational(5), RowOrigin::hull_cut), 3),
               PreconditionError);
  EXPECT_THROW(facet_dimension(fence_inequality({1, 2, 3}, {4, 5, 6}, 9), 9), ScaleError);
}

TEST(FacetDimension, MFourFence) {
  const auto dim = facet_dimension(fence_inequality({1, 2, 3, 4}, {5, 6, 7, 8}, 8), 8);
  EXPECT_EQ(dim.dimension, 27u);
  EXPECT_EQ(dim.tight_count, 192u);
}

TEST(RandomPermutation, UniformAndValid) {
  std::mt19937_64 engine(11);
  std::vector<int> first_counts(5, 0);
  for (int trial = 0; trial < 5000; ++trial) {
    const auto p = random_permutation(4, engine);
    ASSERT_TRUE(p.valid());
    ++first_counts[static_cast<std::size_t>(p.order[0])];
  }
  for (int v = 1; v <= 4; ++v) {
    EXPECT_GT(first_counts[static_cast<std::size_t>(v)], 1100);
    EXPECT_LT(first_counts[static_cast<std::size_t>(v)], 1400);
  }
}
