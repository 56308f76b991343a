#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "lopcut/rational.hpp"

namespace lopcut {

using RationalVector = std::vector<Rational>;

/// Dense row-major matrix of exact rationals.
class RationalMatrix {
 public:
  RationalMatrix() = default;
  RationalMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}
  /// Builds from a list of equally long rows; throws ShapeError otherwise.
  static RationalMatrix from_rows(const std::vector<RationalVector>& rows);
  static RationalMatrix identity(std::size_t n);

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }

  Rational& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const Rational& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  std::span<const Rational> row(std::size_t r) const { return {data_.data() + r * cols_, cols_}; }
  std::span<Rational> row(std::size_t r) { return {data_.data() + r * cols_, cols_}; }

  RationalMatrix transpose() const;

  friend bool operator==(const RationalMatrix&, const RationalMatrix&) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Rational> data_;
};

/// a . x = rhs, stored with coprime integer coefficients and a positive
/// leading nonzero coefficient so that equal hyperplanes compare equal.
struct LinearEquality {
  RationalVector coeffs;
  Rational rhs;

  friend bool operator==(const LinearEquality&, const LinearEquality&) = default;
};

/// Scales (coeffs, rhs) jointly to coprime integers. When `positive_leading`
/// is set the first nonzero coefficient is made positive. Returns the factor
/// applied (negative when the sign was flipped); zero vectors are untouched
/// and yield factor 1.
Rational normalize_integral(RationalVector& coeffs, Rational& rhs, bool positive_leading);

LinearEquality normalized(LinearEquality eq);

std::size_t rank(const RationalMatrix& m);

/// Exact determinant. Gaussian elimination below 12x12, fraction-free
/// Bareiss elimination from 12x12 upward. Throws ShapeError if not square.
Rational determinant(const RationalMatrix& m);

/// Unique solution of m . x = rhs. Throws ShapeError / SingularMatrixError.
RationalVector solve_linear(const RationalMatrix& m, std::span<const Rational> rhs);

/// Inverse of a square nonsingular matrix.
RationalMatrix inverse(const RationalMatrix& m);

struct AffineHull {
  std::size_t dimension = 0;
  std::vector<LinearEquality> equalities;
};

/// Dimension of the affine hull of `points` and a basis of the affine
/// equalities every point satisfies. Throws PreconditionError on an empty
/// list or ShapeError on a length mismatch.
AffineHull affine_hull(const std::vector<RationalVector>& points, std::size_t dim);

/// Reduced row echelon form computed in place; returns the pivot columns.
std::vector<std::size_t> row_reduce(RationalMatrix& m);

/// Incremental row echelon basis over the integers with overflow-checked
/// fraction-free updates. Used by hot rank tests on small 0/+-1 systems.
class IntegerEchelon {
 public:
  explicit IntegerEchelon(std::size_t cols) : cols_(cols) {}

  /// Adds a row; returns true if it increased the rank. Throws
  /// std::overflow_error if an intermediate value leaves int64 range.
  bool insert(std::span<const std::int64_t> row);

  std::size_t rank() const noexcept { return rows_.size(); }
  std::size_t cols() const noexcept { return cols_; }

 private:
  std::size_t cols_;
  std::vector<std::vector<std::int64_t>> rows_;
  std::vector<std::size_t> pivots_;
};

/// Rank of an integer matrix given as rows; falls back to exact rational
/// elimination if the integer path overflows.
std::size_t integer_rank(const std::vector<std::vector<std::int64_t>>& rows, std::size_t cols);

}  // namespace lopcut
