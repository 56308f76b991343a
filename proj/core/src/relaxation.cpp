#include "lopcut/relaxation.hpp"

#include <algorithm>

namespace lopcut {

std::pair<int, int> VarIndex::pair(std::size_t column) const {
  std::size_t base = 0;
  for (int i = 1; i < n_; ++i) {
    const std::size_t row_len = static_cast<std::size_t>(n_ - i);
    if (column < base + row_len) return {i, i + 1 + static_cast<int>(column - base)};
    base += row_len;
  }
  throw ShapeError("column index out of range");
}

std::string to_string(RowOrigin origin) {
  switch (origin) {
    case RowOrigin::triangle: return "triangle";
    case RowOrigin::bound: return "bound";
    case RowOrigin::fence: return "fence";
    case RowOrigin::hull_cut: return "hull_cut";
    case RowOrigin::aux: return "aux";
  }
  return "unknown";
}

RowOrigin row_origin_from_string(const std::string& s) {
  if (s == "triangle") return RowOrigin::triangle;
  if (s == "bound") return RowOrigin::bound;
  if (s == "fence") return RowOrigin::fence;
  if (s == "hull_cut") return RowOrigin::hull_cut;
  if (s == "aux") return RowOrigin::aux;
  throw DomainError("unknown row origin '" + s + "'");
}

LinearInequality LinearInequality::make(RationalVector coeffs, std::optional<Rational> lower,
                                        std::optional<Rational> upper, RowOrigin origin) {
  if (!lower && !upper) throw DomainError("inequality needs at least one finite bound");
  if (lower && upper && *lower > *upper) throw DomainError("inequality with lower > upper");
  return LinearInequality{std::move(coeffs), std::move(lower), std::move(upper), origin};
}

bool LinearInequality::satisfied_by(std::span<const Rational> x) const {
  const Rational v = evaluate(*this, x);
  return (!lower || v >= *lower) && (!upper || v <= *upper);
}

void PairExpression::add(int i, int j, const Rational& coef) {
  if (i == j) throw DomainError("pair expression on a diagonal pair");
  if (i < j) {
    coeffs_[index_.column(i, j)] += coef;
  } else {
    coeffs_[index_.column(j, i)] -= coef;
    constant_ += coef;
  }
}

Rational PairExpression::evaluate(std::span<const Rational> x) const {
  if (x.size() != coeffs_.size()) throw ShapeError("pair expression dimension mismatch");
  Rational v = constant_;
  for (std::size_t c = 0; c < x.size(); ++c) {
    if (!coeffs_[c].is_zero()) v += coeffs_[c] * x[c];
  }
  return v;
}

IntegerRow to_integer_row(const LinearInequality& ineq) {
  auto as_int = [](const Rational& r) {
    if (!r.is_integer()) throw DomainError("row is not integral");
    auto v = r.numerator_i64();
    if (!v) throw DomainError("row coefficient exceeds 64 bits");
    return *v;
  };
  IntegerRow out;
  out.coeffs.reserve(ineq.coeffs.size());
  for (const auto& c : ineq.coeffs) out.coeffs.push_back(as_int(c));
  if (ineq.lower) out.lower = as_int(*ineq.lower);
  if (ineq.upper) out.upper = as_int(*ineq.upper);
  return out;
}

ConstraintSystem ConstraintSystem::without_cuts() const {
  ConstraintSystem s = *this;
  s.cut_pool_.clear();
  s.int_rows_.resize(rows_.size());
  return s;
}

ConstraintSystem build_bn(int n) {
  if (n < 2) throw DomainError("B_n needs n >= 2, got " + std::to_string(n));
  ConstraintSystem sys;
  sys.index_ = VarIndex(n);
  const std::size_t dim = sys.index_.size();
  for (std::size_t c = 0; c < dim; ++c) {
    RationalVector coeffs(dim);
    coeffs[c] = Rational(1);
    sys.rows_.push_back(LinearInequality::make(std::move(coeffs), Rational(0), Rational(1), RowOrigin::bound));
  }
  for (int i = 1; i <= n; ++i) {
    for (int j = i + 1; j <= n; ++j) {
      for (int k = j + 1; k <= n; ++k) {
        RationalVector coeffs(dim);
        coeffs[sys.index_.column(i, j)] = Rational(1);
        coeffs[sys.index_.column(j, k)] = Rational(1);
        coeffs[sys.index_.column(i, k)] = Rational(-1);
        sys.rows_.push_back(
            LinearInequality::make(std::move(coeffs), Rational(0), Rational(1), RowOrigin::triangle));
        sys.triples_.push_back({i, j, k});
      }
    }
  }
  for (const auto& r : sys.rows_) sys.int_rows_.push_back(to_integer_row(r));
  return sys;
}

Rational evaluate(const LinearInequality& ineq, std::span<const Rational> x) {
  if (ineq.coeffs.size() != x.size()) throw ShapeError("inequality dimension mismatch");
  Rational v;
  for (std::size_t c = 0; c < x.size(); ++c) {
    if (!ineq.coeffs[c].is_zero() && !x[c].is_zero()) v += ineq.coeffs[c] * x[c];
  }
  return v;
}

RationalVector embed_permutation(const Permutation& p, int n) {
  const auto v = embed_permutation_i64(p, n);
  return RationalVector(v.begin(), v.end());
}

std::vector<std::int64_t> embed_permutation_i64(const Permutation& p, int n) {
  if (p.size() != static_cast<std::size_t>(n) || !p.valid()) {
    throw PreconditionError("permutation " + to_string(p) + " is not an ordering of 1.." + std::to_string(n));
  }
  const VarIndex index(n);
  const auto pos = p.positions();
  std::vector<std::int64_t> x(index.size());
  for (int i = 1; i <= n; ++i) {
    for (int j = i + 1; j <= n; ++j) x[index.column(i, j)] = pos[static_cast<std::size_t>(i)] < pos[static_cast<std::size_t>(j)] ? 1 : 0;
  }
  return x;
}

LinearInequality canonical_form(const LinearInequality& ineq) {
  LinearInequality c = ineq;
  Rational scratch;
  const Rational factor = normalize_integral(c.coeffs, scratch, true);
  if (c.lower) *c.lower *= factor;
  if (c.upper) *c.upper *= factor;
  if (factor.sign() < 0) std::swap(c.lower, c.upper);
  return c;
}

namespace {

/// Coprime integer scaling of coefficients and finite bounds together,
/// orientation preserved.
LinearInequality scaled_integral(LinearInequality ineq) {
  RationalVector all = ineq.coeffs;
  if (ineq.lower) all.push_back(*ineq.lower);
  if (ineq.upper) all.push_back(*ineq.upper);
  Rational zero;
  const Rational factor = normalize_integral(all, zero, false);
  for (auto& c : ineq.coeffs) c *= factor;
  if (ineq.lower) *ineq.lower *= factor;
  if (ineq.upper) *ineq.upper *= factor;
  return ineq;
}

bool same_rows(const LinearInequality& a, const LinearInequality& b) {
  const auto ca = canonical_form(a);
  const auto cb = canonical_form(b);
  return ca.coeffs == cb.coeffs && ca.lower == cb.lower && ca.upper == cb.upper;
}

}  // namespace

ConstraintSystem add_cut(const ConstraintSystem& sys, LinearInequality cut) {
  if (cut.coeffs.size() != sys.dim()) throw ShapeError("cut dimension does not match the system");
  if (std::all_of(cut.coeffs.begin(), cut.coeffs.end(), [](const Rational& c) { return c.is_zero(); })) {
    throw DegenerateCutError("cut has an all-zero coefficient vector");
  }
  cut = scaled_integral(std::move(cut));
  for (const auto& existing : sys.cut_pool_) {
    if (same_rows(existing, cut)) return sys;
  }
  ConstraintSystem out = sys;
  out.int_rows_.push_back(to_integer_row(cut));
  out.cut_pool_.push_back(std::move(cut));
  return out;
}

bool is_feasible(const ConstraintSystem& sys, std::span<const Rational> x) {
  if (x.size() != sys.dim()) throw ShapeError("point dimension does not match the system");
  for (std::size_t k = 0; k < sys.row_count(); ++k) {
    if (!sys.row(k).satisfied_by(x)) return false;
  }
  return true;
}

std::vector<TightRow> tight_rows(const ConstraintSystem& sys, std::span<const Rational> x) {
  if (x.size() != sys.dim()) throw ShapeError("point dimension does not match the system");
  std::vector<TightRow> tight;
  for (std::size_t k = 0; k < sys.row_count(); ++k) {
    const auto& row = sys.row(k);
    const Rational v = evaluate(row, x);
    if (row.upper && v == *row.upper) {
      tight.push_back({k, Side::upper});
    } else if (row.lower && v == *row.lower) {
      tight.push_back({k, Side::lower});
    }
  }
  return tight;
}

}  // namespace lopcut
