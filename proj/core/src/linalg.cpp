#include "lopcut/linalg.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

#include "lopcut/error.hpp"

namespace lopcut {

namespace {

constexpr std::size_t kBareissThreshold = 12;

std::int64_t checked_mul(std::int64_t a, std::int64_t b) {
  std::int64_t r;
  if (__builtin_mul_overflow(a, b, &r)) throw std::overflow_error("integer echelon overflow");
  return r;
}

std::int64_t checked_sub(std::int64_t a, std::int64_t b) {
  std::int64_t r;
  if (__builtin_sub_overflow(a, b, &r)) throw std::overflow_error("integer echelon overflow");
  return r;
}

RationalMatrix to_rational(const std::vector<std::vector<std::int64_t>>& rows, std::size_t cols) {
  RationalMatrix m(rows.size(), cols);
  for (std::size_t r = 0; r < rows.size(); ++r) {
    for (std::size_t c = 0; c < cols; ++c) m(r, c) = Rational(rows[r][c]);
  }
  return m;
}

Rational gauss_determinant(RationalMatrix a) {
  const std::size_t n = a.rows();
  Rational det(1);
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t pivot = col;
    while (pivot < n && a(pivot, col).is_zero()) ++pivot;
    if (pivot == n) return Rational(0);
    if (pivot != col) {
      for (std::size_t c = 0; c < n; ++c) std::swap(a(pivot, c), a(col, c));
      det = -det;
    }
    det *= a(col, col);
    for (std::size_t r = col + 1; r < n; ++r) {
      if (a(r, col).is_zero()) continue;
      const Rational f = a(r, col) / a(col, col);
      for (std::size_t c = col; c < n; ++c) a(r, c) -= f * a(col, c);
    }
  }
  return det;
}

Rational bareiss_determinant(RationalMatrix a) {
  const std::size_t n = a.rows();
  Rational prev(1);
  int sign = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (a(k, k).is_zero()) {
      std::size_t swap_row = k + 1;
      while (swap_row < n && a(swap_row, k).is_zero()) ++swap_row;
      if (swap_row == n) return Rational(0);
      for (std::size_t c = 0; c < n; ++c) std::swap(a(k, c), a(swap_row, c));
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j) {
        a(i, j) = (a(i, j) * a(k, k) - a(i, k) * a(k, j)) / prev;
      }
    }
    prev = a(k, k);
  }
  const Rational det = a(n - 1, n - 1);
  return sign > 0 ? det : -det;
}

}  // namespace

RationalMatrix RationalMatrix::from_rows(const std::vector<RationalVector>& rows) {
  if (rows.empty()) return {};
  RationalMatrix m(rows.size(), rows.front().size());
  for (std::size_t r = 0; r < rows.size(); ++r) {
    if (rows[r].size() != m.cols()) throw ShapeError("ragged rows in matrix literal");
    std::copy(rows[r].begin(), rows[r].end(), m.row(r).begin());
  }
  return m;
}

RationalMatrix RationalMatrix::identity(std::size_t n) {
  RationalMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = Rational(1);
  return m;
}

RationalMatrix RationalMatrix::transpose() const {
  RationalMatrix t(cols_, rows_);
  for (std::size_t r = 0; r < rows_; ++r) {
    for (std::size_t c = 0; c < cols_; ++c) t(c, r) = (*this)(r, c);
  }
  return t;
}

Rational normalize_integral(RationalVector& coeffs, Rational& rhs, bool positive_leading) {
  if (std::all_of(coeffs.begin(), coeffs.end(), [](const Rational& c) { return c.is_zero(); })) {
    return Rational(1);
  }
  mpz_class lcm_den = rhs.denominator();
  for (const auto& c : coeffs) lcm_den = lcm(lcm_den, c.denominator());
  mpz_class g = 0;
  for (const auto& c : coeffs) g = gcd(g, mpz_class(c.numerator() * (lcm_den / c.denominator())));
  g = gcd(g, mpz_class(rhs.numerator() * (lcm_den / rhs.denominator())));

  Rational factor(mpq_class(lcm_den, g));
  if (positive_leading) {
    auto lead = std::find_if(coeffs.begin(), coeffs.end(), [](const Rational& c) { return !c.is_zero(); });
    if (lead->sign() < 0) factor = -factor;
  }
  for (auto& c : coeffs) c *= factor;
  rhs *= factor;
  return factor;
}

LinearEquality normalized(LinearEquality eq) {
  normalize_integral(eq.coeffs, eq.rhs, true);
  return eq;
}

std::vector<std::size_t> row_reduce(RationalMatrix& m) {
  std::vector<std::size_t> pivots;
  std::size_t lead_row = 0;
  for (std::size_t col = 0; col < m.cols() && lead_row < m.rows(); ++col) {
    std::size_t pivot = lead_row;
    while (pivot < m.rows() && m(pivot, col).is_zero()) ++pivot;
    if (pivot == m.rows()) continue;
    if (pivot != lead_row) {
      for (std::size_t c = 0; c < m.cols(); ++c) std::swap(m(pivot, c), m(lead_row, c));
    }
    const Rational inv = Rational(1) / m(lead_row, col);
    for (std::size_t c = col; c < m.cols(); ++c) m(lead_row, c) *= inv;
    for (std::size_t r = 0; r < m.rows(); ++r) {
      if (r == lead_row || m(r, col).is_zero()) continue;
      const Rational f = m(r, col);
      for (std::size_t c = col; c < m.cols(); ++c) m(r, c) -= f * m(lead_row, c);
    }
    pivots.push_back(col);
    ++lead_row;
  }
  return pivots;
}

std::size_t rank(const RationalMatrix& m) {
  bool integral = true;
  for (std::size_t r = 0; r < m.rows() && integral; ++r) {
    for (const auto& v : m.row(r)) {
      if (!v.is_integer() || !v.numerator_i64()) {
        integral = false;
        break;
      }
    }
  }
  if (integral) {
    try {
      IntegerEchelon ech(m.cols());
      std::vector<std::int64_t> row(m.cols());
      for (std::size_t r = 0; r < m.rows(); ++r) {
        for (std::size_t c = 0; c < m.cols(); ++c) row[c] = *m(r, c).numerator_i64();
        ech.insert(row);
      }
      return ech.rank();
    } catch (const std::overflow_error&) {
      // exact rational path below
    }
  }
  RationalMatrix copy = m;
  return row_reduce(copy).size();
}

Rational determinant(const RationalMatrix& m) {
  if (m.rows() != m.cols()) throw ShapeError("determinant of a non-square matrix");
  if (m.rows() == 0) return Rational(1);
  return m.rows() < kBareissThreshold ? gauss_determinant(m) : bareiss_determinant(m);
}

RationalVector solve_linear(const RationalMatrix& m, std::span<const Rational> rhs) {
  const std::size_t n = m.rows();
  if (m.cols() != n) throw ShapeError("solve_linear needs a square matrix");
  if (rhs.size() != n) throw ShapeError("solve_linear rhs length mismatch");
  RationalMatrix aug(n, n + 1);
  for (std::size_t r = 0; r < n; ++r) {
    for (std::size_t c = 0; c < n; ++c) aug(r, c) = m(r, c);
    aug(r, n) = rhs[r];
  }
  const auto pivots = row_reduce(aug);
  if (pivots.size() < n || pivots.back() >= n) throw SingularMatrixError("matrix is singular");
  RationalVector x(n);
  for (std::size_t r = 0; r < n; ++r) x[r] = aug(r, n);
  return x;
}

RationalMatrix inverse(const RationalMatrix& m) {
  const std::size_t n = m.rows();
  if (m.cols() != n) throw ShapeError("inverse of a non-square matrix");
  RationalMatrix aug(n, 2 * n);
  for (std::size_t r = 0; r < n; ++r) {
    for (std::size_t c = 0; c < n; ++c) aug(r, c) = m(r, c);
    aug(r, n + r) = Rational(1);
  }
  const auto pivots = row_reduce(aug);
  if (pivots.size() < n || pivots[n - 1] >= n) throw SingularMatrixError("matrix is singular");
  RationalMatrix inv(n, n);
  for (std::size_t r = 0; r < n; ++r) {
    for (std::size_t c = 0; c < n; ++c) inv(r, c) = aug(r, n + c);
  }
  return inv;
}

AffineHull affine_hull(const std::vector<RationalVector>& points, std::size_t dim) {
  if (points.empty()) throw PreconditionError("affine_hull of an empty point set");
  // Unknowns (a_1..a_dim, b) with a . p - b = 0 for every point p.
  RationalMatrix m(points.size(), dim + 1);
  for (std::size_t r = 0; r < points.size(); ++r) {
    if (points[r].size() != dim) throw ShapeError("point length differs from dim");
    for (std::size_t c = 0; c < dim; ++c) m(r, c) = points[r][c];
    m(r, dim) = Rational(-1);
  }
  const auto pivots = row_reduce(m);
  AffineHull hull;
  hull.dimension = pivots.size() - 1;

  std::vector<bool> is_pivot(dim + 1, false);
  for (auto p : pivots) is_pivot[p] = true;
  for (std::size_t free = 0; free <= dim; ++free) {
    if (is_pivot[free]) continue;
    RationalVector z(dim + 1);
    z[free] = Rational(1);
    for (std::size_t r = 0; r < pivots.size(); ++r) z[pivots[r]] = -m(r, free);
    LinearEquality eq;
    eq.coeffs.assign(z.begin(), z.begin() + static_cast<std::ptrdiff_t>(dim));
    eq.rhs = z[dim];
    hull.equalities.push_back(normalized(std::move(eq)));
  }
  return hull;
}

bool IntegerEchelon::insert(std::span<const std::int64_t> input) {
  if (input.size() != cols_) throw ShapeError("IntegerEchelon row length mismatch");
  if (rows_.size() == cols_) return false;
  std::vector<std::int64_t> v(input.begin(), input.end());
  for (std::size_t k = 0; k < rows_.size(); ++k) {
    const std::size_t pc = pivots_[k];
    if (v[pc] == 0) continue;
    const auto& b = rows_[k];
    const std::int64_t vp = v[pc];
    const std::int64_t bp = b[pc];
    std::int64_t g = 0;
    for (std::size_t c = 0; c < cols_; ++c) {
      v[c] = checked_sub(checked_mul(v[c], bp), checked_mul(b[c], vp));
      g = std::gcd(g, v[c]);
    }
    if (g > 1) {
      for (auto& x : v) x /= g;
    }
  }
  auto lead = std::find_if(v.begin(), v.end(), [](std::int64_t x) { return x != 0; });
  if (lead == v.end()) return false;
  pivots_.push_back(static_cast<std::size_t>(lead - v.begin()));
  rows_.push_back(std::move(v));
  return true;
}

std::size_t integer_rank(const std::vector<std::vector<std::int64_t>>& rows, std::size_t cols) {
  try {
    IntegerEchelon ech(cols);
    for (const auto& r : rows) {
      ech.insert(r);
      if (ech.rank() == cols) break;
    }
    return ech.rank();
  } catch (const std::overflow_error&) {
    RationalMatrix m = to_rational(rows, cols);
    return row_reduce(m).size();
  }
}

}  // namespace lopcut
