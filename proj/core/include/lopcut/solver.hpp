#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "lopcut/facet_engine.hpp"

namespace lopcut {

struct SolverConfig {
  std::size_t max_iterations = 50;
  /// Facet-dimension checks on generated cuts; unset means on for n <= 8.
  std::optional<bool> oracle_verification;
  bool reduction_enabled = true;
  std::uint64_t seed = 0;
};

enum class SolveStatus { optimal, cuts_exhausted, iteration_limit, reduction_stuck };

std::string to_string(SolveStatus status);

struct IterationRecord {
  Rational lp_value;
  RationalVector vertex;
  bool integral = false;
  std::vector<std::int64_t> denominators;
  std::size_t reduction_steps = 0;
  std::size_t cuts_added = 0;
  std::vector<CutProvenance> provenance;
};

struct SolveReport {
  SolveStatus status = SolveStatus::iteration_limit;
  /// Smallest LP optimum seen; an upper bound on the best ordering value.
  Rational best_bound;
  std::optional<Permutation> incumbent;
  std::optional<std::int64_t> incumbent_value;
  std::vector<IterationRecord> iterations;
  std::vector<LinearInequality> cut_pool;
  std::string detail;  // reason for a non-optimal status
};

/// Runs the cutting-plane loop on inst. Failure modes are statuses.
SolveReport solve(const LopInstance& inst, const SolverConfig& config = {});

/// A cut row f(x) <= f_high of the current vertex together with a lower
/// bound f_low over all orderings.
struct TightCut {
  LinearInequality cut;
  Rational f_low;
  Rational f_high;
};

/// Maximizes sum x(t) over the triples plus sum (f - f_low)/(f_high - f_low)
/// over the cuts, on B_n without the pool but with each listed cut kept as
/// the row f_low <= f <= f_high. PreconditionError when both lists are empty
/// or a cut has f_low >= f_high.
BasicSolution auxiliary_problem(const ConstraintSystem& sys, const std::vector<TripleExpression>& triples,
                                const std::vector<TightCut>& cuts);

/// The ordering whose embedding is x. PreconditionError unless x is 0/1;
/// InvariantViolation when x is intransitive.
Permutation decode_integer_vertex(std::span<const Rational> x, int n);

}  // namespace lopcut
