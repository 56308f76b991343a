#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "lopcut/error.hpp"
#include "lopcut/instance.hpp"
#include "lopcut/linalg.hpp"

namespace lopcut {

/// Raised when a cut with an all-zero coefficient vector is offered.
class DegenerateCutError : public Error {
 public:
  using Error::Error;
};

/// Column numbering of the reduced variables x_ij, i < j. The value of x_ji
/// for i < j is implicitly 1 - x_ij.
class VarIndex {
 public:
  explicit VarIndex(int n = 0) : n_(n) {}

  int n() const noexcept { return n_; }
  std::size_t size() const noexcept { return static_cast<std::size_t>(n_ * (n_ - 1) / 2); }

  /// Column of the pair (i, j), 1 <= i < j <= n; pairs are ordered
  /// (1,2), (1,3), ..., (1,n), (2,3), ...
  std::size_t column(int i, int j) const {
    return static_cast<std::size_t>((i - 1) * (2 * n_ - i) / 2 + (j - i - 1));
  }
  std::pair<int, int> pair(std::size_t column) const;

  /// Value of x_ij for any ordered pair i != j.
  Rational value(std::span<const Rational> x, int i, int j) const {
    return i < j ? x[column(i, j)] : Rational(1) - x[column(j, i)];
  }

  friend bool operator==(const VarIndex&, const VarIndex&) = default;

 private:
  int n_;
};

enum class RowOrigin { triangle, bound, fence, hull_cut, aux };

std::string to_string(RowOrigin origin);
RowOrigin row_origin_from_string(const std::string& s);

/// lower <= coeffs . x <= upper over reduced columns; a missing bound is
/// infinite.
struct LinearInequality {
  RationalVector coeffs;
  std::optional<Rational> lower;
  std::optional<Rational> upper;
  RowOrigin origin = RowOrigin::hull_cut;

  /// Validates lower <= upper and that at least one bound is finite.
  static LinearInequality make(RationalVector coeffs, std::optional<Rational> lower,
                               std::optional<Rational> upper, RowOrigin origin);

  /// Convenience for coeffs . x <= rhs.
  static LinearInequality at_most(RationalVector coeffs, Rational rhs, RowOrigin origin) {
    return make(std::move(coeffs), std::nullopt, std::move(rhs), origin);
  }

  bool satisfied_by(std::span<const Rational> x) const;

  friend bool operator==(const LinearInequality&, const LinearInequality&) = default;
};

/// Integer form of a row, used by enumeration hot paths.
struct IntegerRow {
  std::vector<std::int64_t> coeffs;
  std::optional<std::int64_t> lower;
  std::optional<std::int64_t> upper;
};

/// Affine expression written over ordered pairs x_ij (any i != j) and
/// rewritten into reduced columns plus a constant.
class PairExpression {
 public:
  explicit PairExpression(int n) : index_(n), coeffs_(index_.size()) {}

  void add(int i, int j, const Rational& coef);
  void add_constant(const Rational& c) { constant_ += c; }

  const VarIndex& index() const noexcept { return index_; }
  const RationalVector& coeffs() const noexcept { return coeffs_; }
  const Rational& constant() const noexcept { return constant_; }
  Rational evaluate(std::span<const Rational> x) const;

 private:
  VarIndex index_;
  RationalVector coeffs_;
  Rational constant_;
};

/// Which side of a row is attained with equality.
enum class Side { lower, upper };

struct TightRow {
  std::size_t row;
  Side side;

  friend bool operator==(const TightRow&, const TightRow&) = default;
};

/// The relaxation B_n over reduced variables plus appended cuts. Rows are
/// numbered: box rows 0..dim-1 (row k bounds column k), then one triangle
/// row per triple i<j<k (lexicographic), then the cut pool in insertion
/// order. The system is an immutable value; add_cut returns a new one.
class ConstraintSystem {
 public:
  int n() const noexcept { return index_.n(); }
  const VarIndex& columns() const noexcept { return index_; }
  std::size_t dim() const noexcept { return index_.size(); }

  std::size_t box_row_count() const noexcept { return dim(); }
  std::size_t triangle_row_count() const noexcept { return triples_.size(); }
  std::size_t base_row_count() const noexcept { return rows_.size(); }
  std::size_t row_count() const noexcept { return rows_.size() + cut_pool_.size(); }

  const std::vector<LinearInequality>& base_rows() const noexcept { return rows_; }
  const std::vector<LinearInequality>& cut_pool() const noexcept { return cut_pool_; }
  const LinearInequality& row(std::size_t k) const {
    return k < rows_.size() ? rows_[k] : cut_pool_[k - rows_.size()];
  }
  const IntegerRow& integer_row(std::size_t k) const { return int_rows_[k]; }

  bool is_triangle_row(std::size_t k) const { return k >= dim() && k < rows_.size(); }
  bool is_cut_row(std::size_t k) const { return k >= rows_.size(); }
  /// Nodes (i, j, k), i<j<k, of a triangle row x_ij + x_jk - x_ik.
  std::array<int, 3> triangle_triple(std::size_t k) const { return triples_.at(k - dim()); }

  /// Same system without the cut pool.
  ConstraintSystem without_cuts() const;

  friend ConstraintSystem build_bn(int n);
  friend ConstraintSystem add_cut(const ConstraintSystem& sys, LinearInequality cut);

 private:
  VarIndex index_;
  std::vector<LinearInequality> rows_;
  std::vector<LinearInequality> cut_pool_;
  std::vector<IntegerRow> int_rows_;
  std::vector<std::array<int, 3>> triples_;
};

/// B_n: n(n-1)/2 columns, box rows and one two-sided triangle row per
/// unordered triple. Throws DomainError for n < 2.
ConstraintSystem build_bn(int n);

/// Dot product coeffs . x; ShapeError on a length mismatch.
Rational evaluate(const LinearInequality& ineq, std::span<const Rational> x);

RationalVector embed_permutation(const Permutation& p, int n);
/// 0/1 integer characteristic vector (same layout as embed_permutation).
std::vector<std::int64_t> embed_permutation_i64(const Permutation& p, int n);

/// Canonical coprime-integer form used for duplicate detection: leading
/// coefficient positive, bounds swapped and negated when flipped.
LinearInequality canonical_form(const LinearInequality& ineq);

/// Appends `cut` (scaled to coprime integers, orientation kept) to the
/// pool. A cut equal in canonical form to one already pooled is ignored.
/// Throws DegenerateCutError on an all-zero cut and ShapeError on a
/// dimension mismatch.
ConstraintSystem add_cut(const ConstraintSystem& sys, LinearInequality cut);

bool is_feasible(const ConstraintSystem& sys, std::span<const Rational> x);

/// Rows attained with equality at x (a row tight at both sides, possible
/// only when lower == upper, is reported once as upper).
std::vector<TightRow> tight_rows(const ConstraintSystem& sys, std::span<const Rational> x);

/// Integer row form; throws DomainError if a coefficient or bound is not
/// an integer that fits in 64 bits.
IntegerRow to_integer_row(const LinearInequality& ineq);

}  // namespace lopcut
