#pragma once

#include <cstddef>
#include <vector>

#include "lopcut/relaxation.hpp"

namespace lopcut {

class UnboundedError : public Error {
 public:
  using Error::Error;
};

class InfeasibleError : public Error {
 public:
  using Error::Error;
};

enum class Direction { maximize, minimize };

/// coeffs . x + offset over reduced columns.
struct LinearObjective {
  RationalVector coeffs;
  Rational offset;

  Rational value(std::span<const Rational> x) const;
};

/// The LOP objective sum_{i != j} c_ij x_ij rewritten over reduced columns.
LinearObjective lop_objective(const LopInstance& inst);

/// A basic feasible solution. `tight_rows` lists every row attained with
/// equality; `basis_rows` is the lexicographically first maximal
/// independent subset of them and `basis_certificate` the corresponding
/// dim x dim coefficient matrix.
struct BasicSolution {
  RationalVector x;
  Rational objective;
  std::vector<TightRow> tight_rows;
  std::vector<std::size_t> basis_rows;
  RationalMatrix basis_certificate;
  std::size_t pivots = 0;

  friend bool operator==(const BasicSolution&, const BasicSolution&) = default;
};

/// Exact bounded-variable primal simplex with Bland's rule. The start point
/// is x = 0; rows violated there get artificial variables and a phase-one
/// pass. Throws InfeasibleError or UnboundedError.
BasicSolution lp_solve(const ConstraintSystem& sys, const LinearObjective& objective,
                       Direction direction = Direction::maximize);

/// Rank of the rows tight at x. Throws PreconditionError if x is infeasible.
std::size_t tight_rank(const ConstraintSystem& sys, std::span<const Rational> x);

bool is_vertex(const ConstraintSystem& sys, std::span<const Rational> x);

/// True iff u != v and the rows tight at both (on the same side) have rank
/// dim - 1. Throws PreconditionError unless both points are vertices.
bool adjacent_vertex_test(const ConstraintSystem& sys, std::span<const Rational> u,
                          std::span<const Rational> v);

/// Greedy lowest-index maximal independent subset of `rows`.
std::vector<std::size_t> independent_rows(const ConstraintSystem& sys, const std::vector<TightRow>& rows);

RationalMatrix row_matrix(const ConstraintSystem& sys, const std::vector<std::size_t>& rows);

}  // namespace lopcut
