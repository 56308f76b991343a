#include <gtest/gtest.h>

#include <set>

#include "lopcut/facet_engine.hpp"
#include "support/oracles.hpp"

using namespace lopcut;

namespace {

std::set<std::vector<int>> as_set(const std::vector<Permutation>& perms) {
  std::set<std::vector<int>> out;
  for (const auto& p : perms) out.insert(p.order);
  return out;
}

RationalVector point(std::initializer_list<int> values) {
  RationalVector v;
  for (int x : values) v.emplace_back(x);
  return v;
}

std::size_t tight_orderings(const LinearInequality& cut, int n) {
  std::size_t count = 0;
  for_each_permutation(n, [&](const std::vector<int>& order) {
    if (evaluate(cut, embed_permutation(Permutation{order}, n)) == *cut.upper) ++count;
  });
  return count;
}

}  // namespace

TEST(TripleExpression, ReducedForm) {
  const int n = 4;
  const VarIndex index(n);
  std::mt19937_64 engine(3);
  for (int trial = 0; trial < 20; ++trial) {
    const auto x = embed_permutation(random_permutation(n, engine), n);
    for (const TripleExpression t : {TripleExpression{1, 2, 3}, TripleExpression{3, 1, 4}, TripleExpression{4, 2, 1}}) {
      const auto expr = to_pair_expression(t, n);
      EXPECT_EQ(expr.evaluate(x), index.value(x, t.i, t.j) + index.value(x, t.j, t.k) - index.value(x, t.i, t.k));
    }
    // The artificial node n+1 turns x(i, j, n+1) into x_ij.
    EXPECT_EQ(to_pair_expression({1, 3, n + 1}, n).evaluate(x), index.value(x, 1, 3));
    EXPECT_EQ(to_pair_expression({n + 1, 2, 4}, n).evaluate(x), index.value(x, 2, 4));
  }
}

TEST(FenceInequality, CoefficientsAndSeparation) {
  const auto cut = fence_inequality({1, 2, 3}, {4, 5, 6}, 6);
  const VarIndex index(6);
  EXPECT_EQ(*cut.upper, Rational(1));
  EXPECT_FALSE(cut.lower.has_value());
  EXPECT_EQ(cut.coeffs[index.column(1, 4)], Rational(1));
  EXPECT_EQ(cut.coeffs[index.column(1, 5)], Rational(-1));
  EXPECT_EQ(cut.coeffs[index.column(1, 2)], Rational(0));
  EXPECT_EQ(evaluate(cut, fence_point({1, 2, 3}, {4, 5, 6}, 6)), Rational(3, 2));
  for (int m = 3; m <= 5; ++m) {
    std::vector<int> is, js;
    for (int l = 1; l <= m; ++l) {
      is.push_back(l);
      js.push_back(m + l);
    }
    EXPECT_EQ(evaluate(fence_inequality(is, js, 2 * m), fence_point(is, js, 2 * m)), Rational(m, 2));
  }
}

TEST(FenceInequality, RejectsBadInput) {
  EXPECT_THROW(fence_inequality({1, 2}, {3, 4}, 4), PreconditionError);
  EXPECT_THROW(fence_inequality({1, 2, 3}, {3, 4, 5}, 6), PreconditionError);
  EXPECT_THROW(fence_inequality({1, 2, 3}, {4, 5, 7}, 6), PreconditionError);
  EXPECT_THROW(fence_inequality({1, 2, 3}, {4, 5}, 6), PreconditionError);
}

TEST(FenceInequality, ValidAndTightOnTheExplicitFamilies) {
  for (int m : {3, 4}) {
    std::vector<int> is, js;
    for (int l = 1; l <= m; ++l) {
      is.push_back(l);
      js.push_back(m + l);
    }
    const auto cut = fence_inequality(is, js, 2 * m);
    const auto families = ref::fence_families(is, js);
    std::set<std::vector<int>> tight;
    for_each_permutation(2 * m, [&](const std::vector<int>& order) {
      const auto v = evaluate(cut, embed_permutation(Permutation{order}, 2 * m));
      EXPECT_LE(v, Rational(1));
      if (v == Rational(1)) tight.insert(order);
    });
    EXPECT_EQ(tight, families) << "m=" << m;
  }
  // m((m-1)!)^2 + m(m-1)((m-2)!)^2 with ordered (k, p).
  EXPECT_EQ(tight_orderings(fence_inequality({1, 2, 3}, {4, 5, 6}, 6), 6), 18u);
}

TEST(FenceInequality, LiftedIntoLargerN) {
  const auto cut = fence_inequality({2, 4, 6}, {1, 3, 5}, 7);
  const auto result = validate_inequality(cut, 7);
  EXPECT_TRUE(result.valid);
  EXPECT_EQ(result.max_lhs, Rational(1));
}

TEST(AdjacentIntegerVertices, FenceThreeMatchesExplicitFamilies) {
  const auto sys = build_bn(6);
  const auto adjacent = adjacent_integer_vertices(sys, fence_point({1, 2, 3}, {4, 5, 6}, 6));
  EXPECT_EQ(adjacent.size(), 18u);
  EXPECT_EQ(as_set(adjacent), ref::fence_families({1, 2, 3}, {4, 5, 6}));
  EXPECT_TRUE(std::is_sorted(adjacent.begin(), adjacent.end()));
}

TEST(AdjacentIntegerVertices, FenceFourContainsExplicitFamilies) {
  const std::vector<int> is{1, 2, 3, 4}, js{5, 6, 7, 8};
  const auto sys = build_bn(8);
  const auto x = fence_point(is, js, 8);
  const auto adjacent = as_set(adjacent_integer_vertices(sys, x));
  const auto families = ref::fence_families(is, js);
  EXPECT_EQ(families.size(), 192u);
  EXPECT_EQ(adjacent.size(), 216u);
  EXPECT_TRUE(std::includes(adjacent.begin(), adjacent.end(), families.begin(), families.end()));
  const auto cut = fence_inequality(is, js, 8);
  for (const auto& order : adjacent) {
    if (families.count(order) != 0) continue;
    EXPECT_EQ(evaluate(cut, embed_permutation(Permutation{order}, 8)), Rational(0));
    EXPECT_TRUE(adjacent_vertex_test(sys, x, embed_permutation(Permutation{order}, 8)));
  }
}

TEST(AdjacentIntegerVertices, AgreesWithReferenceRank) {
  const auto sys = build_bn(6);
  const auto x = fence_point({1, 2, 3}, {4, 5, 6}, 6);
  const auto x_tight = tight_rows(sys, x);
  const auto adjacent = as_set(adjacent_integer_vertices(sys, x));
  for_each_permutation(6, [&](const std::vector<int>& order) {
    const auto y = embed_permutation(Permutation{order}, 6);
    std::vector<std::vector<mpq_class>> common;
    for (const auto& t : tight_rows(sys, y)) {
      if (std::find(x_tight.begin(), x_tight.end(), t) == x_tight.end()) continue;
      std::vector<mpq_class> row;
      for (const auto& c : sys.row(t.row).coeffs) row.push_back(c.raw());
      common.push_back(std::move(row));
    }
    EXPECT_EQ(ref::reference_rank(common) == sys.dim() - 1, adjacent.count(order) == 1);
  });
}

TEST(AdjacentIntegerVertices, Preconditions) {
  const auto sys = build_bn(6);
  EXPECT_THROW(adjacent_integer_vertices(sys, embed_permutation(Permutation::identity(6), 6)), PreconditionError);
  EXPECT_THROW(adjacent_integer_vertices(build_bn(9), RationalVector(36, Rational(1, 2))), ScaleError);
}

TEST(HyperplanesThrough, FenceAdjacentVerticesGiveTheFence) {
  const auto sys = build_bn(6);
  std::vector<RationalVector> points;
  for (const auto& p : adjacent_integer_vertices(sys, fence_point({1, 2, 3}, {4, 5, 6}, 6))) {
    points.push_back(embed_permutation(p, 6));
  }
  const auto planes = hyperplanes_through(points, sys.dim());
  ASSERT_EQ(planes.size(), 1u);
  const auto cut = fence_inequality({1, 2, 3}, {4, 5, 6}, 6);
  EXPECT_EQ(planes[0], normalized(LinearEquality{cut.coeffs, *cut.upper}));
  EXPECT_EQ(affine_hull(points, sys.dim()).dimension, 14u);
}

TEST(HyperplanesThrough, UnitSquareHasNone) {
  EXPECT_THROW(hyperplanes_through({point({0, 0}), point({1, 0}), point({0, 1}), point({1, 1})}, 2),
               NoHyperplaneError);
}

TEST(HyperplanesThrough, TwoPlantedClusters) {
  std::vector<RationalVector> points;
  for (int side : {0, 1}) {
    for (const auto& rest : {point({0, 0}), point({1, 0}), point({0, 1}), point({2, 3}), point({5, 1})}) {
      points.push_back({Rational(side), rest[0], rest[1]});
    }
  }
  auto planes = hyperplanes_through(points, 3);
  ASSERT_EQ(planes.size(), 2u);
  std::sort(planes.begin(), planes.end(), [](const auto& a, const auto& b) { return a.rhs < b.rhs; });
  EXPECT_EQ(planes[0], (LinearEquality{point({1, 0, 0}), Rational(0)}));
  EXPECT_EQ(planes[1], (LinearEquality{point({1, 0, 0}), Rational(1)}));
}

TEST(HyperplanesThrough, LowerDimensionalHullReturnsEqualities) {
  const auto planes = hyperplanes_through({point({1, 0, 0}), point({1, 1, 0})}, 3);
  EXPECT_EQ(planes.size(), 2u);
  for (const auto& eq : planes) {
    EXPECT_EQ(eq.coeffs[1], Rational(0));
  }
  EXPECT_THROW(hyperplanes_through({}, 3), PreconditionError);
}

TEST(StandardMatrices, PlantedBlock) {
  auto basis = RationalMatrix::identity(5);
  const auto block = minimal_standard_matrix();
  for (std::size_t r = 0; r < 3; ++r) {
    for (std::size_t c = 0; c < 3; ++c) basis(r + 1, c + 1) = block(r, c);
  }
  const auto witnesses = find_standard_matrices(basis);
  ASSERT_EQ(witnesses.size(), 1u);
  EXPECT_EQ(witnesses[0].rows, (std::vector<std::size_t>{1, 2, 3}));
  EXPECT_EQ(witnesses[0].cols, (std::vector<std::size_t>{1, 2, 3}));
  EXPECT_EQ(witnesses[0].pattern, StandardPattern::minimal_3x3);
  EXPECT_EQ(determinant(block), Rational(2));
}

TEST(StandardMatrices, IdentityHasNone) {
  EXPECT_TRUE(find_standard_matrices(RationalMatrix::identity(6)).empty());
}

TEST(StandardMatrices, SignAndPermutationEquivalents) {
  auto block = minimal_standard_matrix();
  RationalMatrix shuffled(3, 3);
  const std::size_t rows[3] = {2, 0, 1};
  const std::size_t cols[3] = {1, 2, 0};
  for (std::size_t r = 0; r < 3; ++r) {
    for (std::size_t c = 0; c < 3; ++c) shuffled(r, c) = block(rows[r], cols[c]) * Rational(r == 1 ? -1 : 1);
  }
  EXPECT_EQ(find_standard_matrices(shuffled).size(), 1u);
}

TEST(StandardMatrices, FenceBasisHasAWitness) {
  const auto sys = build_bn(6);
  const auto fence = fence_point({1, 2, 3}, {4, 5, 6}, 6);
  const auto basis = independent_rows(sys, tight_rows(sys, fence));
  ASSERT_EQ(basis.size(), 15u);
  const auto matrix = row_matrix(sys, basis);
  const auto det = determinant(matrix);
  EXPECT_NE(det * det, Rational(1));
  const auto witnesses = find_standard_matrices(matrix);
  ASSERT_FALSE(witnesses.empty());
  EXPECT_EQ(witnesses[0].pattern, StandardPattern::pivoted);
  EXPECT_EQ(witnesses[0].rows.size(), 3u);
}

TEST(StandardMatrices, CombinedRecogniser) {
  const auto combined = combined_standard_matrix();
  EXPECT_TRUE(matches_combined_standard(combined));
  auto flipped = combined;
  for (std::size_t c = 0; c < 5; ++c) flipped(3, c) = -flipped(3, c);
  EXPECT_TRUE(matches_combined_standard(flipped));
  EXPECT_FALSE(matches_combined_standard(RationalMatrix::identity(5)));
  const auto witnesses = find_standard_matrices(combined);
  EXPECT_TRUE(std::any_of(witnesses.begin(), witnesses.end(),
                          [](const auto& w) { return w.pattern == StandardPattern::chained && w.blocks >= 2; }));
}

TEST(FacetCuts, FenceVertexGivesTheFenceFacet) {
  const auto sys = build_bn(6);
  const auto x = fence_point({1, 2, 3}, {4, 5, 6}, 6);
  const auto bundle = facet_cuts_for_vertex(sys, x);
  ASSERT_EQ(bundle.cuts.size(), 1u);
  EXPECT_EQ(bundle.provenance, CutProvenance::fence);
  EXPECT_TRUE(bundle.verified_valid);
  EXPECT_EQ(bundle.verified_facet_dim, std::optional<std::size_t>(14));
  const auto& cut = bundle.cuts[0];
  EXPECT_EQ(canonical_form(cut.cut), canonical_form(fence_inequality({1, 2, 3}, {4, 5, 6}, 6)));
  EXPECT_EQ(cut.value_at_source, Rational(3, 2));
  EXPECT_EQ(cut.max_lhs, Rational(1));
  EXPECT_EQ(cut.validity_mode, ScanMode::exhaustive);
}

TEST(FacetCuts, TwoFenceComplexVertex) {
  const int n = 12;
  const VarIndex index(n), small(6);
  RationalVector x(index.size(), Rational(1));
  const auto a = fence_point({1, 2, 3}, {4, 5, 6}, 6);
  for (int i = 1; i <= 6; ++i) {
    for (int j = i + 1; j <= 6; ++j) {
      x[index.column(i, j)] = a[small.column(i, j)];
      x[index.column(i + 6, j + 6)] = a[small.column(i, j)];
    }
  }
  CutOptions options;
  options.oracle_budget = 2000;
  const auto bundle = facet_cuts_for_vertex(build_bn(n), x, options);
  ASSERT_EQ(bundle.cuts.size(), 2u);
  for (std::size_t c = 0; c < 2; ++c) {
    const auto& cut = bundle.cuts[c];
    EXPECT_TRUE(cut.valid);
    EXPECT_GT(cut.value_at_source, *cut.cut.upper);
    for (std::size_t col = 0; col < index.size(); ++col) {
      const auto [i, j] = index.pair(col);
      const bool inside = std::find(cut.component.begin(), cut.component.end(), i) != cut.component.end() &&
                          std::find(cut.component.begin(), cut.component.end(), j) != cut.component.end();
      if (!inside) EXPECT_EQ(cut.cut.coeffs[col], Rational(0));
    }
  }
  EXPECT_NE(bundle.cuts[0].component, bundle.cuts[1].component);
}

TEST(FacetCuts, IntegralVertexIsRejected) {
  EXPECT_THROW(facet_cuts_for_vertex(build_bn(5), embed_permutation(Permutation::identity(5), 5)), PreconditionError);
}

TEST(FacetCuts, SampledVerticesGetSafeSeparatingCuts) {
  int cut_vertices = 0;
  for (std::uint64_t seed = 0; seed < 60 && cut_vertices < 6; ++seed) {
    const auto inst = ref::fence_noise_instance(7, seed);
    const auto sys = build_bn(7);
    const auto sol = lp_solve(sys, lop_objective(inst));
    const auto profile = classify_vertex(sys, sol.x);
    if (profile.integral() || profile.max_denominator() > 2) continue;
    CutBundle bundle;
    try {
      bundle = facet_cuts_for_vertex(sys, sol.x);
    } catch (const NotSeparatedError&) {
      continue;
    }
    ++cut_vertices;
    for (const auto& cut : bundle.cuts) {
      EXPECT_GT(evaluate(cut.cut, sol.x), *cut.cut.upper);
      for_each_permutation(7, [&](const std::vector<int>& order) {
        EXPECT_TRUE(cut.cut.satisfied_by(embed_permutation(Permutation{order}, 7)));
      });
    }
  }
  EXPECT_GT(cut_vertices, 0);
}

TEST(FacetCuts, DependentChainClustersAreBounded) {
  for (std::uint64_t seed = 0; seed < 300; ++seed) {
    const auto sys = build_bn(7);
    const auto sol = lp_solve(sys, lop_objective(ref::fence_noise_instance(7, seed)));
    const auto profile = classify_vertex(sys, sol.x);
    if (profile.integral() || profile.tau != 1 || !profile.fences.empty() || profile.max_denominator() > 2) continue;
    try {
      const auto bundle = facet_cuts_for_vertex(sys, sol.x);
      EXPECT_LE(bundle.cuts.size(), 2u);
    } catch (const NotSeparatedError&) {
      EXPECT_TRUE(true);
    }
    return;
  }
  GTEST_SKIP() << "no fence-free vertex with one dependent length-3 chain in the sample";
}

TEST(OrientAndVerify, OrientsTowardOrderings) {
  const auto cut = fence_inequality({1, 2, 3}, {4, 5, 6}, 6);
  const auto x = fence_point({1, 2, 3}, {4, 5, 6}, 6);
  RationalVector negated;
  for (const auto& c : cut.coeffs) negated.push_back(-c);
  const auto verified = orient_and_verify(LinearEquality{negated, Rational(-1)}, 6, x, CutProvenance::affine_hull, {});
  ASSERT_TRUE(verified.has_value());
  EXPECT_EQ(verified->cut.coeffs, cut.coeffs);
  EXPECT_EQ(verified->cut.upper, cut.upper);
  EXPECT_EQ(verified->cut.origin, RowOrigin::hull_cut);
  EXPECT_EQ(verified->facet_dim, std::optional<std::size_t>(14));

  // x_12 <= 1 is valid but does not cut off the fence point.
  const VarIndex index(6);
  RationalVector box(index.size());
  box[0] = Rational(1);
  std::string reason;
  EXPECT_FALSE(orient_and_verify(LinearEquality{box, Rational(1)}, 6, x, CutProvenance::affine_hull, {}, &reason));
  EXPECT_FALSE(reason.empty());
}

TEST(EdgeEndpoints, FenceBasisEdgesStayFeasible) {
  const auto sys = build_bn(6);
  const auto x = fence_point({1, 2, 3}, {4, 5, 6}, 6);
  const auto basis = independent_rows(sys, tight_rows(sys, x));
  const auto adjacent = as_set(adjacent_integer_vertices(sys, x));
  const auto ends = edge_endpoints(sys, x, basis);
  ASSERT_EQ(ends.size(), basis.size());
  std::size_t walked = 0;
  for (const auto& end : ends) {
    if (!end) continue;
    ++walked;
    EXPECT_TRUE(is_feasible(sys, *end));
    EXPECT_TRUE(is_vertex(sys, *end));
    EXPECT_NE(*end, x);
    if (profile_point(6, *end).integral()) {
      std::vector<int> order;
      // Decode by out-degree.
      std::vector<std::pair<int, int>> degree;
      const VarIndex index(6);
      for (int i = 1; i <= 6; ++i) {
        int d = 0;
        for (int j = 1; j <= 6; ++j) d += (i != j && index.value(*end, i, j) == Rational(1)) ? 1 : 0;
        degree.emplace_back(-d, i);
      }
      std::sort(degree.begin(), degree.end());
      for (const auto& [d, i] : degree) order.push_back(i);
      EXPECT_EQ(adjacent.count(order), 1u);
    }
  }
  EXPECT_GT(walked, 0u);
}

TEST(ReduceDenominator, RejectsHalfIntegralInput) {
  const auto sys = build_bn(6);
  EXPECT_THROW(reduce_denominator(sys, fence_point({1, 2, 3}, {4, 5, 6}, 6)), PreconditionError);
  EXPECT_THROW(reduce_denominator(sys, embed_permutation(Permutation::identity(6), 6)), PreconditionError);
}

TEST(ReduceDenominator, SampledDenominatorThreeVertices) {
  for (int n : {7, 8}) {
    const auto sys = build_bn(n);
    for (std::uint64_t seed = 0; seed < 60; ++seed) {
      const auto sol = lp_solve(sys, lop_objective(ref::fence_noise_instance(n, seed)));
      const auto profile = classify_vertex(sys, sol.x);
      if (profile.max_denominator() < 3) continue;
      const auto step = reduce_denominator(sys, sol.x);
      EXPECT_LT(step.to_denominator, step.from_denominator);
      EXPECT_TRUE(adjacent_vertex_test(sys, sol.x, step.vertex));
      return;
    }
  }
  GTEST_SKIP() << "no vertex with a denominator of 3 or more in the sample";
}

TEST(ReduceDenominator, CutPoolVertexWithDenominatorThree) {
  // A cut with coefficient 3 on x_12 creates the vertex x_12 = 1/3 in a box.
  auto sys = build_bn(3);
  RationalVector coeffs(3);
  coeffs[0] = Rational(3);
  sys = add_cut(sys, LinearInequality::at_most(coeffs, Rational(1), RowOrigin::hull_cut));
  const auto sol = lp_solve(sys, LinearObjective{point({1, 0, 0}), Rational(0)});
  ASSERT_EQ(sol.x[0], Rational(1, 3));
  const auto step = reduce_denominator(sys, sol.x);
  EXPECT_EQ(step.from_denominator, 3);
  EXPECT_LT(step.to_denominator, 3);
  EXPECT_TRUE(adjacent_vertex_test(sys, sol.x, step.vertex));
}
