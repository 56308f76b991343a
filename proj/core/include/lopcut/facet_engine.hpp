#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "lopcut/oracle.hpp"
#include "lopcut/vertex_analysis.hpp"

namespace lopcut {

/// x(i, j, k) = x_ij + x_jk - x_ik. A node equal to n+1 denotes the
/// artificial node with x(a, n+1) = 0 and x(n+1, a) = 1, which turns the
/// bound x_ij = 0 into the triple expression x(i, j, n+1).
struct TripleExpression {
  int i;
  int j;
  int k;

  friend bool operator==(const TripleExpression&, const TripleExpression&) = default;
};

/// Reduced-variable form of a triple expression on n real nodes.
PairExpression to_pair_expression(const TripleExpression& t, int n);

/// minimal_3x3: a literal 3x3 block. chained: overlapping minimal blocks.
/// pivoted: after unimodular pivots on every other row and column the
/// remaining 3x3 block is the minimal matrix.
enum class StandardPattern { minimal_3x3, chained, pivoted };

/// Rows/columns (indices into the basis) of a non-unimodular block.
struct StandardMatrixWitness {
  std::vector<std::size_t> rows;
  std::vector<std::size_t> cols;
  StandardPattern pattern = StandardPattern::minimal_3x3;
  std::size_t blocks = 1;  // number of 3x3 witnesses combined

  friend bool operator==(const StandardMatrixWitness&, const StandardMatrixWitness&) = default;
};

/// The 3x3 block (1,-1,0),(1,0,-1),(0,1,1) with determinant 2.
RationalMatrix minimal_standard_matrix();
/// The 5x5 combination of two minimal blocks.
RationalMatrix combined_standard_matrix();

/// True iff `m` equals combined_standard_matrix() up to row/column
/// permutations and sign changes of rows and columns.
bool matches_combined_standard(const RationalMatrix& m);

/// All 3x3 row/column selections equivalent to the minimal standard matrix
/// (up to permutation and signs), followed by one chained witness per group
/// of two or more minimal witnesses that share rows. When no literal block
/// exists and |det| > 1, a seeded search over unimodular pivot orders may
/// add one pivoted witness.
std::vector<StandardMatrixWitness> find_standard_matrices(const RationalMatrix& basis);

enum class CutProvenance { fence, affine_hull, reduced, aux };

std::string to_string(CutProvenance p);

/// A cut with its oracle checks.
struct VerifiedCut {
  LinearInequality cut;
  CutProvenance provenance = CutProvenance::fence;
  std::vector<int> component;  // nodes of the vertex component it targets
  bool valid = false;
  /// "exhaustive" when every ordering was checked (possibly on the cut's
  /// support nodes, which decides validity exactly), "sampled" otherwise.
  ScanMode validity_mode = ScanMode::exhaustive;
  Rational max_lhs;
  std::size_t tight_count = 0;
  std::optional<std::size_t> facet_dim;
  std::size_t facet_space_dim = 0;  // ambient dimension the facet check ran in
  Rational value_at_source;
};

struct DiscardedCut {
  LinearInequality cut;
  std::string reason;
};

struct CutBundle {
  int n = 0;
  std::vector<VerifiedCut> cuts;
  CutProvenance provenance = CutProvenance::fence;
  RationalVector source_vertex;
  bool verified_valid = false;
  std::optional<std::size_t> verified_facet_dim;
  std::vector<DiscardedCut> discarded;
};

/// No verified cut separating the vertex could be built.
class NotSeparatedError : public Error {
 public:
  NotSeparatedError(const std::string& what, std::vector<DiscardedCut> discarded)
      : Error(what), discarded_(std::move(discarded)) {}
  const std::vector<DiscardedCut>& discarded() const noexcept { return discarded_; }

 private:
  std::vector<DiscardedCut> discarded_;
};

/// No adjacent vertex with a smaller maximum denominator exists among the
/// examined edges. census maps max-denominator to neighbour count.
class ReductionStuckError : public Error {
 public:
  ReductionStuckError(const std::string& what, std::map<std::int64_t, std::size_t> census)
      : Error(what), census_(std::move(census)) {}
  const std::map<std::int64_t, std::size_t>& census() const noexcept { return census_; }

 private:
  std::map<std::int64_t, std::size_t> census_;
};

class NoHyperplaneError : public Error {
 public:
  using Error::Error;
};

/// 2 sum_l x(i_l, j_l) - sum_{l,q} x(i_l, j_q) <= 1 over reduced variables.
/// Throws PreconditionError for m < 3 or invalid node lists.
LinearInequality fence_inequality(const std::vector<int>& i_list, const std::vector<int>& j_list, int n);

/// Orderings adjacent to the fractional vertex x. Exhaustive for n <= 8;
/// ScaleError above. PreconditionError for integral or non-vertex x.
std::vector<Permutation> adjacent_integer_vertices(const ConstraintSystem& sys, std::span<const Rational> x);

/// Hyperplanes through `points`: the affine hull if it is a hyperplane, the
/// hull's equality basis if it is lower dimensional, otherwise a greedy
/// cover by hyperplanes each holding more than `dim` of the points.
/// Throws NoHyperplaneError when no such cover exists.
std::vector<LinearEquality> hyperplanes_through(const std::vector<RationalVector>& points, std::size_t dim);

struct CutOptions {
  /// Permutation samples for validity checks beyond n = 8.
  std::size_t oracle_budget = kDefaultSampleBudget;
  /// Require denominators within {2} (the public entry point does).
  bool require_half_integral = true;
  /// Run the facet-dimension check when the cut's space allows it.
  bool check_facet_dimension = true;
  /// Seed of the sampled validity scans.
  std::uint64_t seed = 0x10b5eed;
};

/// Cuts for a fractional vertex, one family per fractional component:
/// fence inequalities where a fence is present, otherwise oriented
/// hyperplanes through the component's adjacent orderings. Every cut is
/// oracle-validated and separates x. Throws NotSeparatedError if none do.
CutBundle facet_cuts_for_vertex(const ConstraintSystem& sys, std::span<const Rational> x,
                                std::size_t oracle_budget = kDefaultSampleBudget);
CutBundle facet_cuts_for_vertex(const ConstraintSystem& sys, std::span<const Rational> x, const CutOptions& options);

/// Orients `eq` so that every ordering satisfies it and verifies the
/// result; returns nullopt (with a reason) if that fails.
std::optional<VerifiedCut> orient_and_verify(const LinearEquality& eq, int n, std::span<const Rational> source,
                                             CutProvenance provenance, const CutOptions& options,
                                             std::string* reason = nullptr);

/// Other endpoints of the edges leaving x along `basis_rows` (one per
/// dropped row); nullopt for a dropped row whose edge is blocked at x.
std::vector<std::optional<RationalVector>> edge_endpoints(const ConstraintSystem& sys, std::span<const Rational> x,
                                                          const std::vector<std::size_t>& basis_rows);

struct ReductionStep {
  RationalVector vertex;
  std::int64_t from_denominator = 0;
  std::int64_t to_denominator = 0;
  std::size_t dropped_row = 0;
};

/// Walks one edge from x (max denominator >= 3) to an adjacent vertex with a
/// strictly smaller maximum denominator, preferring fractional neighbours.
/// Throws PreconditionError or ReductionStuckError.
ReductionStep reduce_denominator(const ConstraintSystem& sys, std::span<const Rational> x);

}  // namespace lopcut
