#include "lopcut/facet_engine.hpp"

#include <algorithm>
#include <numeric>
#include <random>
#include <set>

namespace lopcut {

namespace {

/// Incremental echelon basis over the rationals.
class RationalEchelon {
 public:
  explicit RationalEchelon(std::size_t cols) : cols_(cols) {}

  bool insert(RationalVector v) {
    for (std::size_t k = 0; k < rows_.size(); ++k) {
      const std::size_t pc = pivots_[k];
      if (v[pc].is_zero()) continue;
      const Rational f = v[pc];
      const auto& b = rows_[k];
      for (std::size_t c = 0; c < cols_; ++c) {
        if (!b[c].is_zero()) v[c] -= f * b[c];
      }
    }
    auto lead = std::find_if(v.begin(), v.end(), [](const Rational& x) { return !x.is_zero(); });
    if (lead == v.end()) return false;
    const Rational inv = Rational(1) / *lead;
    for (auto& x : v) {
      if (!x.is_zero()) x *= inv;
    }
    pivots_.push_back(static_cast<std::size_t>(lead - v.begin()));
    rows_.push_back(std::move(v));
    return true;
  }

  std::size_t rank() const { return rows_.size(); }

 private:
  std::size_t cols_;
  std::vector<RationalVector> rows_;
  std::vector<std::size_t> pivots_;
};

Rational dot(std::span<const Rational> a, std::span<const Rational> b) {
  Rational v;
  for (std::size_t c = 0; c < a.size(); ++c) {
    if (!a[c].is_zero() && !b[c].is_zero()) v += a[c] * b[c];
  }
  return v;
}

std::vector<std::size_t> shuffled(std::vector<std::size_t> v, std::mt19937_64& engine) {
  for (std::size_t k = v.size(); k > 1; --k) {
    const std::uint64_t span = k;
    const std::uint64_t limit = (~std::uint64_t{0} / span) * span;
    std::uint64_t r;
    do {
      r = engine();
    } while (r >= limit);
    std::swap(v[k - 1], v[static_cast<std::size_t>(r % span)]);
  }
  return v;
}

/// Nodes touched by a nonzero coefficient, ascending.
std::vector<int> support_nodes(const LinearInequality& ineq, int n) {
  const VarIndex index(n);
  std::set<int> nodes;
  for (std::size_t c = 0; c < ineq.coeffs.size(); ++c) {
    if (ineq.coeffs[c].is_zero()) continue;
    const auto [i, j] = index.pair(c);
    nodes.insert(i);
    nodes.insert(j);
  }
  return {nodes.begin(), nodes.end()};
}

/// The inequality seen on the ordered node subset `nodes` (which must
/// contain its support).
LinearInequality restrict_to(const LinearInequality& ineq, int n, const std::vector<int>& nodes) {
  const VarIndex full(n);
  const int k = static_cast<int>(nodes.size());
  const VarIndex sub(k);
  LinearInequality out = ineq;
  out.coeffs.assign(sub.size(), Rational(0));
  for (int a = 1; a <= k; ++a) {
    for (int b = a + 1; b <= k; ++b) {
      out.coeffs[sub.column(a, b)] =
          ineq.coeffs[full.column(nodes[static_cast<std::size_t>(a - 1)], nodes[static_cast<std::size_t>(b - 1)])];
    }
  }
  return out;
}

/// Zero-lifts an inequality on the ordered node subset `nodes` to B_n.
LinearInequality lift_from(const LinearInequality& ineq, const std::vector<int>& nodes, int n) {
  const VarIndex full(n);
  const int k = static_cast<int>(nodes.size());
  const VarIndex sub(k);
  LinearInequality out = ineq;
  out.coeffs.assign(full.size(), Rational(0));
  for (int a = 1; a <= k; ++a) {
    for (int b = a + 1; b <= k; ++b) {
      out.coeffs[full.column(nodes[static_cast<std::size_t>(a - 1)], nodes[static_cast<std::size_t>(b - 1)])] =
          ineq.coeffs[sub.column(a, b)];
    }
  }
  return out;
}

RationalVector restrict_point(std::span<const Rational> x, int n, const std::vector<int>& nodes) {
  const VarIndex full(n);
  const int k = static_cast<int>(nodes.size());
  const VarIndex sub(k);
  RationalVector y(sub.size());
  for (int a = 1; a <= k; ++a) {
    for (int b = a + 1; b <= k; ++b) {
      y[sub.column(a, b)] = x[full.column(nodes[static_cast<std::size_t>(a - 1)], nodes[static_cast<std::size_t>(b - 1)])];
    }
  }
  return y;
}

/// a . x <= b side of the hyperplane holding the first ordering off it.
std::optional<LinearInequality> orient(const LinearEquality& eq, int n, RowOrigin origin) {
  std::optional<LinearInequality> out;
  for_each_permutation(n, [&](const std::vector<int>& order) {
    const auto p = embed_permutation(Permutation{order}, n);
    const Rational v = dot(eq.coeffs, p);
    if (v == eq.rhs) return true;
    if (v < eq.rhs) {
      out = LinearInequality::at_most(eq.coeffs, eq.rhs, origin);
    } else {
      RationalVector neg = eq.coeffs;
      for (auto& c : neg) c = -c;
      out = LinearInequality::at_most(std::move(neg), -eq.rhs, origin);
    }
    return false;
  });
  return out;
}

std::optional<VerifiedCut> verify_cut(const LinearInequality& cut, int n, std::span<const Rational> source,
                                      CutProvenance provenance, std::vector<int> component,
                                      const CutOptions& options, std::string* reason) {
  auto fail = [&](std::string why) -> std::optional<VerifiedCut> {
    if (reason) *reason = std::move(why);
    return std::nullopt;
  };
  VerifiedCut vc;
  vc.cut = cut;
  vc.provenance = provenance;
  vc.component = std::move(component);
  vc.value_at_source = evaluate(cut, source);
  if (!cut.upper || vc.value_at_source <= *cut.upper) {
    return fail("does not separate the source vertex (lhs " + vc.value_at_source.to_string() + ")");
  }

  const auto support = support_nodes(cut, n);
  const bool support_small = static_cast<int>(support.size()) <= kExhaustiveMaxN;
  ValidityResult validity;
  if (n <= kExhaustiveMaxN) {
    validity = validate_inequality(cut, n);
  } else if (support_small && support.size() >= 2) {
    // The lhs only depends on the relative order of the support nodes.
    validity = validate_inequality(restrict_to(cut, n, support), static_cast<int>(support.size()));
    if (validity.valid) {
      const auto sampled = validate_inequality(cut, n, options.oracle_budget, options.seed);
      if (!sampled.valid) {
        throw InvariantViolation("support-exhaustive and sampled validity checks disagree");
      }
    }
  } else {
    validity = validate_inequality(cut, n, options.oracle_budget, options.seed);
  }
  vc.valid = validity.valid;
  vc.validity_mode = validity.mode;
  vc.max_lhs = validity.max_lhs;
  vc.tight_count = validity.tight_count;
  if (!validity.valid) {
    return fail("violated by an ordering (max lhs " + validity.max_lhs.to_string() + " > rhs " +
                cut.upper->to_string() + ")");
  }

  if (options.check_facet_dimension) {
    if (n <= kExhaustiveMaxN) {
      vc.facet_dim = facet_dimension(cut, n).dimension;
      vc.facet_space_dim = VarIndex(n).size();
    } else if (support_small && support.size() >= 2) {
      const int k = static_cast<int>(support.size());
      vc.facet_dim = facet_dimension(restrict_to(cut, n, support), k).dimension;
      vc.facet_space_dim = VarIndex(k).size();
    }
  }
  return vc;
}

bool is_pm_one_cycle_block(const RationalMatrix& basis, const std::array<std::size_t, 3>& rows,
                           const std::array<std::size_t, 3>& cols) {
  RationalMatrix block(3, 3);
  std::array<int, 3> col_count{0, 0, 0};
  for (std::size_t r = 0; r < 3; ++r) {
    int row_count = 0;
    for (std::size_t c = 0; c < 3; ++c) {
      const Rational& v = basis(rows[r], cols[c]);
      if (v.is_zero()) continue;
      if (v != Rational(1) && v != Rational(-1)) return false;
      ++row_count;
      ++col_count[c];
      block(r, c) = v;
    }
    if (row_count != 2) return false;
  }
  if (col_count != std::array<int, 3>{2, 2, 2}) return false;
  return determinant(block).abs() == Rational(2);
}

/// Searches seeded orders of unimodular pivots (Schur complements on +-1
/// entries, which keep the matrix integral and |det| unchanged) for one that
/// leaves a 3x3 remainder equal to the minimal standard matrix up to signs
/// and permutations. Returns the surviving basis rows and columns.
std::optional<StandardMatrixWitness> pivot_to_minimal(const RationalMatrix& basis, std::size_t trials) {
  const std::size_t n = basis.rows();
  std::mt19937_64 engine(0x5714d);
  const std::array<std::size_t, 3> first{0, 1, 2};
  for (std::size_t trial = 0; trial < trials; ++trial) {
    std::vector<RationalVector> a(n);
    for (std::size_t r = 0; r < n; ++r) a[r].assign(basis.row(r).begin(), basis.row(r).end());
    std::vector<std::size_t> rows(n), cols(n);
    std::iota(rows.begin(), rows.end(), 0);
    std::iota(cols.begin(), cols.end(), 0);
    while (rows.size() > 3) {
      std::vector<std::size_t> candidates;
      for (std::size_t r = 0; r < rows.size(); ++r) {
        for (std::size_t c = 0; c < cols.size(); ++c) {
          if (a[r][c].abs() == Rational(1)) candidates.push_back(r * cols.size() + c);
        }
      }
      if (candidates.empty()) break;
      const std::size_t pick = trial == 0 ? candidates.front() : shuffled(candidates, engine).front();
      const std::size_t pr = pick / cols.size();
      const std::size_t pc = pick % cols.size();
      const Rational p = a[pr][pc];
      std::vector<RationalVector> next;
      for (std::size_t r = 0; r < rows.size(); ++r) {
        if (r == pr) continue;
        RationalVector row;
        const Rational f = a[r][pc] / p;
        for (std::size_t c = 0; c < cols.size(); ++c) {
          if (c == pc) continue;
          row.push_back(f.is_zero() ? a[r][c] : a[r][c] - f * a[pr][c]);
        }
        next.push_back(std::move(row));
      }
      a = std::move(next);
      rows.erase(rows.begin() + static_cast<std::ptrdiff_t>(pr));
      cols.erase(cols.begin() + static_cast<std::ptrdiff_t>(pc));
    }
    if (rows.size() != 3) continue;
    const auto remainder = RationalMatrix::from_rows(a);
    if (is_pm_one_cycle_block(remainder, first, first)) {
      return StandardMatrixWitness{rows, cols, StandardPattern::pivoted, 1};
    }
  }
  return std::nullopt;
}

/// Is there a choice of row signs r_i and column signs c_j with
/// r_i c_j a_ij == p_ij on the (shared) support? Sign propagation over the
/// bipartite support graph.
bool sign_equivalent(const RationalMatrix& a, const RationalMatrix& p) {
  const std::size_t n = a.rows();
  std::vector<int> rs(n, 0), cs(n, 0);
  for (std::size_t start = 0; start < n; ++start) {
    if (rs[start] != 0) continue;
    rs[start] = 1;
    std::vector<std::pair<bool, std::size_t>> stack{{true, start}};
    while (!stack.empty()) {
      auto [is_row, idx] = stack.back();
      stack.pop_back();
      for (std::size_t o = 0; o < n; ++o) {
        const std::size_t r = is_row ? idx : o;
        const std::size_t c = is_row ? o : idx;
        if (a(r, c).is_zero()) continue;
        const int ratio = a(r, c) == p(r, c) ? 1 : (a(r, c) == -p(r, c) ? -1 : 0);
        if (ratio == 0) return false;
        if (is_row) {
          const int want = ratio * rs[r];
          if (cs[c] == 0) {
            cs[c] = want;
            stack.push_back({false, c});
          } else if (cs[c] != want) {
            return false;
          }
        } else {
          const int want = ratio * cs[c];
          if (rs[r] == 0) {
            rs[r] = want;
            stack.push_back({true, r});
          } else if (rs[r] != want) {
            return false;
          }
        }
      }
    }
  }
  return true;
}

}  // namespace

PairExpression to_pair_expression(const TripleExpression& t, int n) {
  const int art = n + 1;
  for (int v : {t.i, t.j, t.k}) {
    if (v < 1 || v > art) throw PreconditionError("triple node out of range");
  }
  if (t.i == t.j || t.j == t.k || t.i == t.k) throw PreconditionError("triple nodes must be distinct");
  PairExpression e(n);
  auto term = [&](int a, int b, int sign) {
    if (a == art) {
      e.add_constant(Rational(sign));  // x(n+1, b) = 1
    } else if (b != art) {
      e.add(a, b, Rational(sign));
    }  // x(a, n+1) = 0
  };
  term(t.i, t.j, 1);
  term(t.j, t.k, 1);
  term(t.i, t.k, -1);
  return e;
}

std::string to_string(CutProvenance p) {
  switch (p) {
    case CutProvenance::fence: return "fence";
    case CutProvenance::affine_hull: return "affine_hull";
    case CutProvenance::reduced: return "reduced";
    case CutProvenance::aux: return "aux";
  }
  return "unknown";
}

RationalMatrix minimal_standard_matrix() {
  return RationalMatrix::from_rows({{1, -1, 0}, {1, 0, -1}, {0, 1, 1}});
}

RationalMatrix combined_standard_matrix() {
  return RationalMatrix::from_rows({
      {1, -1, 0, -1, 0},
      {1, 0, -1, 0, 0},
      {0, 1, 1, 0, 0},
      {1, 0, 0, 0, -1},
      {0, 0, 0, 1, 1},
  });
}

bool matches_combined_standard(const RationalMatrix& m) {
  const RationalMatrix pattern = combined_standard_matrix();
  if (m.rows() != 5 || m.cols() != 5) return false;
  std::array<std::size_t, 5> rp{0, 1, 2, 3, 4};
  do {
    std::array<std::size_t, 5> cp{0, 1, 2, 3, 4};
    do {
      RationalMatrix permuted(5, 5);
      bool support_ok = true;
      for (std::size_t r = 0; r < 5 && support_ok; ++r) {
        for (std::size_t c = 0; c < 5; ++c) {
          permuted(r, c) = m(rp[r], cp[c]);
          if (permuted(r, c).is_zero() != pattern(r, c).is_zero()) {
            support_ok = false;
            break;
          }
        }
      }
      if (support_ok && sign_equivalent(permuted, pattern)) return true;
    } while (std::next_permutation(cp.begin(), cp.end()));
  } while (std::next_permutation(rp.begin(), rp.end()));
  return false;
}

std::vector<StandardMatrixWitness> find_standard_matrices(const RationalMatrix& basis) {
  if (basis.rows() != basis.cols()) throw ShapeError("basis must be square");
  const std::size_t n = basis.rows();
  std::vector<std::vector<std::size_t>> support(n);
  for (std::size_t r = 0; r < n; ++r) {
    for (std::size_t c = 0; c < n; ++c) {
      if (!basis(r, c).is_zero()) support[r].push_back(c);
    }
  }
  std::vector<std::size_t> candidates;
  for (std::size_t r = 0; r < n; ++r) {
    if (support[r].size() >= 2) candidates.push_back(r);
  }

  std::vector<StandardMatrixWitness> minimal;
  for (std::size_t a = 0; a < candidates.size(); ++a) {
    for (std::size_t b = a + 1; b < candidates.size(); ++b) {
      for (std::size_t c = b + 1; c < candidates.size(); ++c) {
        const std::array<std::size_t, 3> rows{candidates[a], candidates[b], candidates[c]};
        std::set<std::size_t> cols_union;
        for (auto r : rows) cols_union.insert(support[r].begin(), support[r].end());
        const std::vector<std::size_t> cols(cols_union.begin(), cols_union.end());
        for (std::size_t x = 0; x < cols.size(); ++x) {
          for (std::size_t y = x + 1; y < cols.size(); ++y) {
            for (std::size_t z = y + 1; z < cols.size(); ++z) {
              const std::array<std::size_t, 3> sel{cols[x], cols[y], cols[z]};
              if (is_pm_one_cycle_block(basis, rows, sel)) {
                minimal.push_back({{rows.begin(), rows.end()}, {sel.begin(), sel.end()}, StandardPattern::minimal_3x3, 1});
              }
            }
          }
        }
      }
    }
  }

  // Group minimal witnesses that share rows.
  std::vector<std::size_t> parent(minimal.size());
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](std::size_t v) {
    while (parent[v] != v) v = parent[v] = parent[parent[v]];
    return v;
  };
  for (std::size_t u = 0; u < minimal.size(); ++u) {
    for (std::size_t v = u + 1; v < minimal.size(); ++v) {
      const auto& ru = minimal[u].rows;
      const auto& rv = minimal[v].rows;
      const bool share = std::any_of(ru.begin(), ru.end(), [&](std::size_t r) {
        return std::find(rv.begin(), rv.end(), r) != rv.end();
      });
      if (share) parent[find(u)] = find(v);
    }
  }
  std::map<std::size_t, std::vector<std::size_t>> groups;
  for (std::size_t u = 0; u < minimal.size(); ++u) groups[find(u)].push_back(u);

  std::vector<StandardMatrixWitness> out = minimal;
  if (minimal.empty() && n >= 3) {
    const Rational det = determinant(basis).abs();
    if (det.is_integer() && det > Rational(1)) {
      if (auto w = pivot_to_minimal(basis, 256)) out.push_back(std::move(*w));
    }
  }
  for (const auto& [root, members] : groups) {
    if (members.size() < 2) continue;
    std::set<std::size_t> rows, cols;
    for (auto u : members) {
      rows.insert(minimal[u].rows.begin(), minimal[u].rows.end());
      cols.insert(minimal[u].cols.begin(), minimal[u].cols.end());
    }
    out.push_back({{rows.begin(), rows.end()}, {cols.begin(), cols.end()}, StandardPattern::chained, members.size()});
  }
  return out;
}

LinearInequality fence_inequality(const std::vector<int>& i_list, const std::vector<int>& j_list, int n) {
  const std::size_t m = i_list.size();
  if (m != j_list.size()) throw PreconditionError("fence lists must have equal length");
  if (m < 3) throw PreconditionError("fence inequalities need m >= 3 (m = 2 is implied by triangle rows)");
  std::vector<int> seen(static_cast<std::size_t>(n + 1), 0);
  for (const auto* list : {&i_list, &j_list}) {
    for (int v : *list) {
      if (v < 1 || v > n || seen[static_cast<std::size_t>(v)]++) {
        throw PreconditionError("fence nodes must be distinct and within 1..n");
      }
    }
  }
  PairExpression f(n);
  for (std::size_t l = 0; l < m; ++l) {
    f.add(i_list[l], j_list[l], Rational(2));
    for (std::size_t q = 0; q < m; ++q) f.add(i_list[l], j_list[q], Rational(-1));
  }
  return LinearInequality::at_most(f.coeffs(), Rational(1) - f.constant(), RowOrigin::fence);
}

std::vector<Permutation> adjacent_integer_vertices(const ConstraintSystem& sys, std::span<const Rational> x) {
  const int n = sys.n();
  if (n > kExhaustiveMaxN) {
    throw ScaleError("adjacent orderings are enumerated exhaustively only for n <= " +
                     std::to_string(kExhaustiveMaxN));
  }
  if (!is_vertex(sys, x)) throw PreconditionError("adjacent_integer_vertices needs a vertex");
  if (std::all_of(x.begin(), x.end(), [](const Rational& v) { return v.is_integer(); })) {
    throw PreconditionError("adjacent_integer_vertices needs a fractional vertex");
  }
  const std::size_t dim = sys.dim();
  const auto tight = tight_rows(sys, x);
  std::vector<const IntegerRow*> rows;
  std::vector<std::int64_t> bound;
  for (const auto& t : tight) {
    const auto& r = sys.integer_row(t.row);
    rows.push_back(&r);
    bound.push_back(t.side == Side::upper ? *r.upper : *r.lower);
  }

  std::vector<Permutation> adjacent;
  std::vector<std::size_t> common;
  for_each_permutation(n, [&](const std::vector<int>& order) {
    const auto p = embed_permutation_i64(Permutation{order}, n);
    common.clear();
    for (std::size_t k = 0; k < rows.size(); ++k) {
      std::int64_t v = 0;
      const auto& coeffs = rows[k]->coeffs;
      for (std::size_t c = 0; c < dim; ++c) {
        if (coeffs[c] != 0 && p[c] != 0) v += coeffs[c];
      }
      if (v == bound[k]) common.push_back(k);
    }
    if (common.size() + 1 < dim) return;
    // x != p, so the common rows have rank at most dim - 1.
    std::vector<std::vector<std::int64_t>> mat;
    mat.reserve(common.size());
    for (auto k : common) mat.push_back(rows[k]->coeffs);
    if (integer_rank(mat, dim) + 1 == dim) adjacent.push_back(Permutation{order});
  });
  return adjacent;
}

std::vector<LinearEquality> hyperplanes_through(const std::vector<RationalVector>& points, std::size_t dim) {
  const AffineHull hull = affine_hull(points, dim);
  if (hull.dimension + 1 == dim) return hull.equalities;
  if (hull.dimension + 1 < dim) return hull.equalities;

  constexpr std::size_t kTrials = 48;
  std::mt19937_64 engine(0x68797065);
  std::vector<std::size_t> remaining(points.size());
  std::iota(remaining.begin(), remaining.end(), 0);
  std::vector<LinearEquality> found;

  while (remaining.size() > dim) {
    std::optional<LinearEquality> best;
    std::vector<std::size_t> best_cover;
    for (std::size_t trial = 0; trial < kTrials; ++trial) {
      const auto order = trial == 0 ? remaining : shuffled(remaining, engine);
      const RationalVector& anchor = points[order.front()];
      std::vector<RationalVector> seed{anchor};
      RationalEchelon ech(dim);
      for (std::size_t k = 1; k < order.size() && ech.rank() + 1 < dim; ++k) {
        RationalVector d = points[order[k]];
        for (std::size_t c = 0; c < dim; ++c) d[c] -= anchor[c];
        if (ech.insert(std::move(d))) seed.push_back(points[order[k]]);
      }
      if (ech.rank() + 1 < dim) continue;
      const auto eq = affine_hull(seed, dim).equalities.front();
      std::vector<std::size_t> cover;
      for (auto idx : remaining) {
        if (dot(eq.coeffs, points[idx]) == eq.rhs) cover.push_back(idx);
      }
      if (cover.size() > best_cover.size()) {
        best = eq;
        best_cover = std::move(cover);
        if (best_cover.size() == remaining.size()) break;
      }
    }
    if (!best || best_cover.size() <= dim) break;
    found.push_back(*best);
    std::vector<std::size_t> rest;
    std::set_difference(remaining.begin(), remaining.end(), best_cover.begin(), best_cover.end(),
                        std::back_inserter(rest));
    remaining = std::move(rest);
  }
  if (found.empty()) throw NoHyperplaneError("points span the whole space and no hyperplane holds more than dim of them");
  return found;
}

std::optional<VerifiedCut> orient_and_verify(const LinearEquality& eq, int n, std::span<const Rational> source,
                                             CutProvenance provenance, const CutOptions& options,
                                             std::string* reason) {
  const auto oriented = orient(eq, n, provenance == CutProvenance::aux ? RowOrigin::aux : RowOrigin::hull_cut);
  if (!oriented) {
    if (reason) *reason = "hyperplane contains every ordering";
    return std::nullopt;
  }
  std::vector<int> all(static_cast<std::size_t>(n));
  std::iota(all.begin(), all.end(), 1);
  return verify_cut(*oriented, n, source, provenance, all, options, reason);
}

namespace {

void hull_cuts_for_component(const ConstraintSystem& sys, std::span<const Rational> x, const std::vector<int>& comp,
                             std::vector<LinearInequality>& candidates,
                             std::vector<DiscardedCut>& discarded) {
  const int n = sys.n();
  const int k = static_cast<int>(comp.size());
  std::vector<int> nodes = comp;
  RationalVector y;
  bool use_sub = false;
  if (k < n) {
    y = restrict_point(x, n, comp);
    use_sub = is_vertex(build_bn(k), y);
  }
  if (!use_sub) {
    y.assign(x.begin(), x.end());
    nodes.resize(static_cast<std::size_t>(n));
    std::iota(nodes.begin(), nodes.end(), 1);
  }
  ConstraintSystem work = use_sub ? build_bn(k) : sys.without_cuts();
  if (!use_sub && !is_vertex(work, y)) work = sys;
  const int wn = work.n();
  if (wn > kExhaustiveMaxN) {
    discarded.push_back({LinearInequality{}, "component on " + std::to_string(wn) +
                                                 " nodes is too large for exhaustive adjacency"});
    return;
  }
  const auto perms = adjacent_integer_vertices(work, y);
  if (perms.empty()) {
    discarded.push_back({LinearInequality{}, "no adjacent orderings"});
    return;
  }
  std::vector<RationalVector> points;
  points.reserve(perms.size());
  for (const auto& p : perms) points.push_back(embed_permutation(p, wn));
  std::vector<LinearEquality> planes;
  try {
    planes = hyperplanes_through(points, work.dim());
  } catch (const NoHyperplaneError& e) {
    discarded.push_back({LinearInequality{}, e.what()});
    return;
  }
  for (const auto& eq : planes) {
    const auto oriented = orient(eq, wn, RowOrigin::hull_cut);
    if (!oriented) {
      discarded.push_back({LinearInequality::make(eq.coeffs, eq.rhs, eq.rhs, RowOrigin::hull_cut),
                           "hyperplane contains every ordering"});
      continue;
    }
    candidates.push_back(use_sub ? lift_from(*oriented, nodes, n) : *oriented);
  }
}

}  // namespace

CutBundle facet_cuts_for_vertex(const ConstraintSystem& sys, std::span<const Rational> x, std::size_t oracle_budget) {
  CutOptions options;
  options.oracle_budget = oracle_budget;
  return facet_cuts_for_vertex(sys, x, options);
}

CutBundle facet_cuts_for_vertex(const ConstraintSystem& sys, std::span<const Rational> x, const CutOptions& options) {
  const VertexProfile profile = classify_vertex(sys, x);
  if (profile.integral()) throw PreconditionError("facet_cuts_for_vertex needs a fractional vertex");
  if (options.require_half_integral && profile.max_denominator() != 2) {
    throw PreconditionError("vertex has denominators above 2; reduce it first");
  }
  const int n = sys.n();
  CutBundle bundle;
  bundle.n = n;
  bundle.source_vertex.assign(x.begin(), x.end());

  std::vector<LinearInequality> accepted_forms;
  auto consider = [&](const LinearInequality& cut, CutProvenance prov, const std::vector<int>& comp) {
    const auto canon = canonical_form(cut);
    if (std::find(accepted_forms.begin(), accepted_forms.end(), canon) != accepted_forms.end()) return;
    std::string reason;
    auto vc = verify_cut(cut, n, x, prov, comp, options, &reason);
    if (!vc) {
      bundle.discarded.push_back({cut, reason});
      return;
    }
    accepted_forms.push_back(canon);
    bundle.cuts.push_back(std::move(*vc));
  };

  for (const auto& comp : profile.components) {
    std::vector<const FenceStructure*> fences;
    for (const auto& f : profile.fences) {
      const bool inside = std::all_of(f.i_list.begin(), f.i_list.end(), [&](int v) {
        return std::binary_search(comp.begin(), comp.end(), v);
      });
      if (inside) fences.push_back(&f);
    }
    if (!fences.empty()) {
      for (const auto* f : fences) consider(fence_inequality(f->i_list, f->j_list, n), CutProvenance::fence, comp);
      continue;
    }
    std::vector<LinearInequality> candidates;
    hull_cuts_for_component(sys, x, comp, candidates, bundle.discarded);
    for (const auto& c : candidates) consider(c, CutProvenance::affine_hull, comp);
  }

  if (bundle.cuts.empty()) {
    throw NotSeparatedError("no verified cut separates the vertex", bundle.discarded);
  }
  bundle.provenance = bundle.cuts.front().provenance;
  bundle.verified_valid = std::all_of(bundle.cuts.begin(), bundle.cuts.end(), [](const VerifiedCut& c) { return c.valid; });
  bundle.verified_facet_dim = bundle.cuts.front().facet_dim;
  return bundle;
}

std::vector<std::optional<RationalVector>> edge_endpoints(const ConstraintSystem& sys, std::span<const Rational> x,
                                                          const std::vector<std::size_t>& basis_rows) {
  const std::size_t dim = sys.dim();
  if (basis_rows.size() != dim) throw ShapeError("basis must have dim rows");
  const RationalMatrix inv = inverse(row_matrix(sys, basis_rows));

  std::vector<Rational> row_value(sys.row_count());
  for (std::size_t r = 0; r < sys.row_count(); ++r) row_value[r] = evaluate(sys.row(r), x);

  std::vector<std::optional<RationalVector>> out;
  for (std::size_t k = 0; k < dim; ++k) {
    const auto& dropped = sys.row(basis_rows[k]);
    const Rational& val = row_value[basis_rows[k]];
    if (dropped.lower && dropped.upper && *dropped.lower == *dropped.upper) {
      out.emplace_back(std::nullopt);
      continue;
    }
    const Rational sigma = (dropped.upper && val == *dropped.upper) ? Rational(-1) : Rational(1);
    RationalVector delta(dim);
    for (std::size_t c = 0; c < dim; ++c) delta[c] = sigma * inv(c, k);

    std::optional<Rational> step;
    for (std::size_t r = 0; r < sys.row_count(); ++r) {
      const auto& ir = sys.integer_row(r);
      Rational g;
      for (std::size_t c = 0; c < dim; ++c) {
        if (ir.coeffs[c] != 0 && !delta[c].is_zero()) g += Rational(ir.coeffs[c]) * delta[c];
      }
      std::optional<Rational> limit;
      if (g.sign() > 0 && ir.upper) limit = (Rational(*ir.upper) - row_value[r]) / g;
      if (g.sign() < 0 && ir.lower) limit = (Rational(*ir.lower) - row_value[r]) / g;
      if (limit && (!step || *limit < *step)) step = limit;
    }
    if (!step) throw InvariantViolation("edge direction is unbounded");
    if (step->is_zero()) {
      out.emplace_back(std::nullopt);
      continue;
    }
    RationalVector y(x.begin(), x.end());
    for (std::size_t c = 0; c < dim; ++c) {
      if (!delta[c].is_zero()) y[c] += *step * delta[c];
    }
    out.emplace_back(std::move(y));
  }
  return out;
}

namespace {

std::int64_t max_denominator(std::span<const Rational> x) {
  std::int64_t best = 1;
  for (const auto& v : x) {
    const auto d = v.denominator_i64();
    if (!d) throw ScaleError("denominator exceeds 64 bits");
    best = std::max(best, *d);
  }
  return best;
}

}  // namespace

ReductionStep reduce_denominator(const ConstraintSystem& sys, std::span<const Rational> x) {
  if (!is_vertex(sys, x)) throw PreconditionError("reduce_denominator needs a vertex");
  const std::int64_t r = max_denominator(x);
  if (r < 3) throw PreconditionError("reduce_denominator needs a maximum denominator of at least 3");

  const auto tight = tight_rows(sys, x);
  const auto primary = independent_rows(sys, tight);
  std::vector<std::vector<std::size_t>> bases{primary};
  constexpr std::size_t kMaxBases = 256;
  for (const auto& t : tight) {
    if (std::find(primary.begin(), primary.end(), t.row) != primary.end()) continue;
    for (std::size_t k = 0; k < primary.size() && bases.size() < kMaxBases; ++k) {
      auto alt = primary;
      alt[k] = t.row;
      std::vector<std::vector<std::int64_t>> rows;
      for (auto row : alt) rows.push_back(sys.integer_row(row).coeffs);
      if (integer_rank(rows, sys.dim()) == sys.dim()) bases.push_back(std::move(alt));
    }
  }

  std::map<std::int64_t, std::size_t> census;
  std::optional<ReductionStep> best;
  auto better = [&](std::int64_t cand) {
    if (!best) return true;
    const bool cand_frac = cand >= 2;
    const bool best_frac = best->to_denominator >= 2;
    if (cand_frac != best_frac) return cand_frac;
    return cand < best->to_denominator;
  };
  std::set<RationalVector> visited;
  for (std::size_t b = 0; b < bases.size(); ++b) {
    const auto ends = edge_endpoints(sys, x, bases[b]);
    for (std::size_t k = 0; k < ends.size(); ++k) {
      if (!ends[k] || !visited.insert(*ends[k]).second) continue;
      const std::int64_t den = max_denominator(*ends[k]);
      ++census[den];
      if (den < r && better(den)) best = ReductionStep{*ends[k], r, den, bases[b][k]};
    }
    // The primary basis suffices once it yields a fractional improvement.
    if (b == 0 && best && best->to_denominator >= 2) break;
  }
  if (!best) {
    throw ReductionStuckError("no adjacent vertex with maximum denominator below " + std::to_string(r), census);
  }
  if (!adjacent_vertex_test(sys, x, best->vertex)) {
    throw InvariantViolation("edge walk ended at a non-adjacent point");
  }
  return *best;
}

}  // namespace lopcut
