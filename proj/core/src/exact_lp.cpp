#include "lopcut/exact_lp.hpp"

#include <algorithm>
#include <optional>

namespace lopcut {

Rational LinearObjective::value(std::span<const Rational> x) const {
  if (x.size() != coeffs.size()) throw ShapeError("objective dimension mismatch");
  Rational v = offset;
  for (std::size_t c = 0; c < x.size(); ++c) {
    if (!coeffs[c].is_zero()) v += coeffs[c] * x[c];
  }
  return v;
}

LinearObjective lop_objective(const LopInstance& inst) {
  PairExpression expr(inst.n());
  for (int i = 1; i <= inst.n(); ++i) {
    for (int j = 1; j <= inst.n(); ++j) {
      if (i != j && inst.cost(i, j) != 0) expr.add(i, j, Rational(inst.cost(i, j)));
    }
  }
  return LinearObjective{expr.coeffs(), expr.constant()};
}

namespace {

/// Dense simplex tableau. Each row i encodes sum_j T[i][j] v_j = 0 with
/// T[i][basic[i]] = 1; columns are structurals, slacks, then artificials.
class Tableau {
 public:
  Tableau(const ConstraintSystem& sys) : dim_(sys.dim()), rows_(sys.row_count()) {
    const std::size_t m = rows_;
    // x = 0 start; find rows violated there.
    std::vector<std::optional<Rational>> violated_bound(m);
    std::size_t artificials = 0;
    for (std::size_t r = 0; r < m; ++r) {
      const auto& row = sys.row(r);
      if (row.lower && row.lower->sign() > 0) {
        violated_bound[r] = *row.lower;
        ++artificials;
      } else if (row.upper && row.upper->sign() < 0) {
        violated_bound[r] = *row.upper;
        ++artificials;
      }
    }
    cols_ = dim_ + m + artificials;
    table_.assign(m, RationalVector(cols_));
    lower_.assign(cols_, std::nullopt);
    upper_.assign(cols_, std::nullopt);
    value_.assign(cols_, Rational(0));
    basic_.assign(m, 0);
    is_basic_.assign(cols_, false);
    phase_one_cost_.assign(cols_, Rational(0));

    for (std::size_t c = 0; c < dim_; ++c) {
      lower_[c] = Rational(0);
      upper_[c] = Rational(1);
    }
    std::size_t next_art = dim_ + m;
    for (std::size_t r = 0; r < m; ++r) {
      const auto& row = sys.row(r);
      const std::size_t slack = dim_ + r;
      lower_[slack] = row.lower;
      upper_[slack] = row.upper;
      auto& t = table_[r];
      if (!violated_bound[r]) {
        // -a.x + s = 0, slack basic.
        for (std::size_t c = 0; c < dim_; ++c) t[c] = -row.coeffs[c];
        t[slack] = Rational(1);
        basic_[r] = slack;
        value_[slack] = Rational(0);
      } else {
        // a.x - s + w = 0, artificial basic, slack parked at the bound.
        const std::size_t art = next_art++;
        for (std::size_t c = 0; c < dim_; ++c) t[c] = row.coeffs[c];
        t[slack] = Rational(-1);
        t[art] = Rational(1);
        basic_[r] = art;
        value_[slack] = *violated_bound[r];
        value_[art] = *violated_bound[r];
        if (violated_bound[r]->sign() > 0) {
          lower_[art] = Rational(0);
          phase_one_cost_[art] = Rational(-1);
        } else {
          upper_[art] = Rational(0);
          phase_one_cost_[art] = Rational(1);
        }
      }
      is_basic_[basic_[r]] = true;
    }
    artificial_begin_ = dim_ + m;
  }

  bool needs_phase_one() const { return cols_ > artificial_begin_; }

  void run_phase_one() {
    set_costs(phase_one_cost_);
    optimize();
    Rational infeasibility;
    for (std::size_t c = artificial_begin_; c < cols_; ++c) infeasibility += phase_one_cost_[c] * value_[c];
    if (infeasibility.sign() < 0) throw InfeasibleError("constraint system is infeasible");
    for (std::size_t c = artificial_begin_; c < cols_; ++c) {
      lower_[c] = Rational(0);
      upper_[c] = Rational(0);
    }
  }

  void run_phase_two(const RationalVector& structural_costs) {
    RationalVector costs(cols_);
    std::copy(structural_costs.begin(), structural_costs.end(), costs.begin());
    set_costs(costs);
    optimize();
  }

  RationalVector structural_values() const { return {value_.begin(), value_.begin() + static_cast<std::ptrdiff_t>(dim_)}; }
  std::size_t pivots() const { return pivots_; }

 private:
  void set_costs(const RationalVector& costs) {
    reduced_ = costs;
    for (std::size_t i = 0; i < rows_; ++i) {
      const Rational& cb = costs[basic_[i]];
      if (cb.is_zero()) continue;
      const auto& t = table_[i];
      for (std::size_t c = 0; c < cols_; ++c) {
        if (!t[c].is_zero()) reduced_[c] -= cb * t[c];
      }
    }
  }

  bool can_increase(std::size_t c) const { return !upper_[c] || value_[c] < *upper_[c]; }
  bool can_decrease(std::size_t c) const { return !lower_[c] || value_[c] > *lower_[c]; }

  void optimize() {
    for (;;) {
      // Bland: lowest-index improving nonbasic column.
      std::size_t entering = cols_;
      int dir = 0;
      for (std::size_t c = 0; c < cols_; ++c) {
        if (is_basic_[c]) continue;
        const int s = reduced_[c].sign();
        if (s > 0 && can_increase(c)) {
          entering = c;
          dir = 1;
          break;
        }
        if (s < 0 && can_decrease(c)) {
          entering = c;
          dir = -1;
          break;
        }
      }
      if (entering == cols_) return;

      std::optional<Rational> best;
      std::size_t leave_row = rows_;
      for (std::size_t i = 0; i < rows_; ++i) {
        const Rational& te = table_[i][entering];
        if (te.is_zero()) continue;
        const std::size_t b = basic_[i];
        // delta v_b = alpha * t
        const Rational alpha = dir > 0 ? -te : te;
        std::optional<Rational> limit;
        if (alpha.sign() > 0 && upper_[b]) limit = (*upper_[b] - value_[b]) / alpha;
        if (alpha.sign() < 0 && lower_[b]) limit = (*lower_[b] - value_[b]) / alpha;
        if (!limit) continue;
        if (!best || *limit < *best || (*limit == *best && b < basic_[leave_row])) {
          best = *limit;
          leave_row = i;
        }
      }
      std::optional<Rational> flip;
      if (lower_[entering] && upper_[entering]) flip = *upper_[entering] - *lower_[entering];
      if (!best && !flip) throw UnboundedError("objective is unbounded over the system");

      if (flip && (!best || *flip <= *best)) {
        apply_step(entering, dir, *flip);
        continue;
      }
      apply_step(entering, dir, *best);
      pivot(leave_row, entering);
    }
  }

  void apply_step(std::size_t entering, int dir, const Rational& t) {
    if (t.is_zero()) return;
    value_[entering] += dir > 0 ? t : -t;
    for (std::size_t i = 0; i < rows_; ++i) {
      const Rational& te = table_[i][entering];
      if (te.is_zero()) continue;
      const Rational alpha = dir > 0 ? -te : te;
      value_[basic_[i]] += alpha * t;
    }
  }

  void pivot(std::size_t r, std::size_t entering) {
    ++pivots_;
    auto& prow = table_[r];
    const Rational inv = Rational(1) / prow[entering];
    std::vector<std::size_t> nz;
    for (std::size_t c = 0; c < cols_; ++c) {
      if (prow[c].is_zero()) continue;
      prow[c] *= inv;
      nz.push_back(c);
    }
    for (std::size_t i = 0; i < rows_; ++i) {
      if (i == r) continue;
      auto& row = table_[i];
      if (row[entering].is_zero()) continue;
      const Rational f = row[entering];
      for (std::size_t c : nz) row[c] -= f * prow[c];
    }
    if (!reduced_[entering].is_zero()) {
      const Rational f = reduced_[entering];
      for (std::size_t c : nz) reduced_[c] -= f * prow[c];
    }
    is_basic_[basic_[r]] = false;
    basic_[r] = entering;
    is_basic_[entering] = true;
  }

  std::size_t dim_;
  std::size_t rows_;
  std::size_t cols_ = 0;
  std::size_t artificial_begin_ = 0;
  std::vector<RationalVector> table_;
  std::vector<std::optional<Rational>> lower_;
  std::vector<std::optional<Rational>> upper_;
  RationalVector value_;
  RationalVector reduced_;
  RationalVector phase_one_cost_;
  std::vector<std::size_t> basic_;
  std::vector<bool> is_basic_;
  std::size_t pivots_ = 0;
};

}  // namespace

std::vector<std::size_t> independent_rows(const ConstraintSystem& sys, const std::vector<TightRow>& rows) {
  std::vector<std::size_t> chosen;
  IntegerEchelon ech(sys.dim());
  try {
    for (const auto& t : rows) {
      if (ech.insert(sys.integer_row(t.row).coeffs)) chosen.push_back(t.row);
      if (ech.rank() == sys.dim()) break;
    }
    return chosen;
  } catch (const std::overflow_error&) {
    chosen.clear();
  }
  // Exact rational fallback.
  RationalMatrix acc(0, sys.dim());
  std::size_t current_rank = 0;
  std::vector<RationalVector> kept;
  for (const auto& t : rows) {
    kept.push_back(sys.row(t.row).coeffs);
    const std::size_t r = rank(RationalMatrix::from_rows(kept));
    if (r > current_rank) {
      current_rank = r;
      chosen.push_back(t.row);
    } else {
      kept.pop_back();
    }
    if (current_rank == sys.dim()) break;
  }
  return chosen;
}

RationalMatrix row_matrix(const ConstraintSystem& sys, const std::vector<std::size_t>& rows) {
  RationalMatrix m(rows.size(), sys.dim());
  for (std::size_t r = 0; r < rows.size(); ++r) {
    const auto& coeffs = sys.row(rows[r]).coeffs;
    std::copy(coeffs.begin(), coeffs.end(), m.row(r).begin());
  }
  return m;
}

BasicSolution lp_solve(const ConstraintSystem& sys, const LinearObjective& objective, Direction direction) {
  if (objective.coeffs.size() != sys.dim()) throw ShapeError("objective dimension does not match the system");
  Tableau tableau(sys);
  if (tableau.needs_phase_one()) tableau.run_phase_one();
  RationalVector costs = objective.coeffs;
  if (direction == Direction::minimize) {
    for (auto& c : costs) c = -c;
  }
  tableau.run_phase_two(costs);

  BasicSolution sol;
  sol.x = tableau.structural_values();
  sol.objective = objective.value(sol.x);
  sol.tight_rows = tight_rows(sys, sol.x);
  sol.basis_rows = independent_rows(sys, sol.tight_rows);
  if (sol.basis_rows.size() != sys.dim()) {
    throw InvariantViolation("simplex returned a point that is not a vertex");
  }
  sol.basis_certificate = row_matrix(sys, sol.basis_rows);
  sol.pivots = tableau.pivots();
  return sol;
}

std::size_t tight_rank(const ConstraintSystem& sys, std::span<const Rational> x) {
  if (!is_feasible(sys, x)) throw PreconditionError("point is not feasible for the system");
  return independent_rows(sys, tight_rows(sys, x)).size();
}

bool is_vertex(const ConstraintSystem& sys, std::span<const Rational> x) { return tight_rank(sys, x) == sys.dim(); }

bool adjacent_vertex_test(const ConstraintSystem& sys, std::span<const Rational> u, std::span<const Rational> v) {
  if (!is_vertex(sys, u) || !is_vertex(sys, v)) throw PreconditionError("adjacency test needs two vertices");
  if (std::equal(u.begin(), u.end(), v.begin(), v.end())) return false;
  const auto tu = tight_rows(sys, u);
  const auto tv = tight_rows(sys, v);
  std::vector<TightRow> common;
  for (const auto& t : tu) {
    if (std::find(tv.begin(), tv.end(), t) != tv.end()) common.push_back(t);
  }
  return independent_rows(sys, common).size() + 1 == sys.dim();
}

}  // namespace lopcut
