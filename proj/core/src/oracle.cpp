#include "lopcut/oracle.hpp"

#include <algorithm>

#include "lopcut/linalg.hpp"

namespace lopcut {

namespace {

/// Row scaled to integer coefficients; lhs values are compared in the
/// scaled space and divided back only for reporting.
struct ScaledRow {
  std::vector<std::int64_t> coeffs;
  mpz_class scale;
  bool ok = true;
};

ScaledRow scale_row(const LinearInequality& ineq) {
  ScaledRow out;
  mpz_class l = 1;
  for (const auto& c : ineq.coeffs) l = lcm(l, c.denominator());
  out.scale = l;
  for (const auto& c : ineq.coeffs) {
    const mpz_class v = c.numerator() * (l / c.denominator());
    const auto iv = to_i64(v);
    if (!iv || *iv > (std::int64_t{1} << 40) || *iv < -(std::int64_t{1} << 40)) {
      out.ok = false;
      return out;
    }
    out.coeffs.push_back(*iv);
  }
  return out;
}

std::int64_t scaled_lhs(const ScaledRow& row, const VarIndex& index, const std::vector<int>& pos) {
  std::int64_t v = 0;
  const int n = index.n();
  std::size_t col = 0;
  for (int i = 1; i <= n; ++i) {
    for (int j = i + 1; j <= n; ++j, ++col) {
      if (row.coeffs[col] != 0 && pos[static_cast<std::size_t>(i)] < pos[static_cast<std::size_t>(j)]) v += row.coeffs[col];
    }
  }
  return v;
}

std::vector<int> positions_of(const std::vector<int>& order) {
  std::vector<int> pos(order.size() + 1);
  for (std::size_t k = 0; k < order.size(); ++k) pos[static_cast<std::size_t>(order[k])] = static_cast<int>(k);
  return pos;
}

Rational lhs_of(const LinearInequality& ineq, const ScaledRow& row, const VarIndex& index,
                const std::vector<int>& order) {
  if (row.ok) return Rational(mpq_class(mpz_class(static_cast<long>(scaled_lhs(row, index, positions_of(order)))), row.scale));
  return evaluate(ineq, embed_permutation(Permutation{order}, index.n()));
}

}  // namespace

std::string to_string(ScanMode mode) { return mode == ScanMode::exhaustive ? "exhaustive" : "sampled"; }

Permutation random_permutation(int n, std::mt19937_64& engine) {
  Permutation p = Permutation::identity(n);
  for (std::size_t k = p.order.size(); k > 1; --k) {
    const std::uint64_t span = k;
    const std::uint64_t limit = (~std::uint64_t{0} / span) * span;
    std::uint64_t r;
    do {
      r = engine();
    } while (r >= limit);
    std::swap(p.order[k - 1], p.order[static_cast<std::size_t>(r % span)]);
  }
  return p;
}

OracleResult brute_force_opt(const LopInstance& inst) {
  const int n = inst.n();
  if (n > kBruteForceMaxN) throw ScaleError("brute force is limited to n <= " + std::to_string(kBruteForceMaxN));
  OracleResult best;
  bool first = true;
  std::size_t ties = 0;
  for_each_permutation(n, [&](const std::vector<int>& order) {
    std::int64_t v = 0;
    for (std::size_t a = 0; a < order.size(); ++a) {
      for (std::size_t b = a + 1; b < order.size(); ++b) v += inst.cost(order[a], order[b]);
    }
    if (first || v > best.best_value) {
      best.best_value = v;
      best.best_permutation = Permutation{order};
      ties = 1;
      first = false;
    } else if (v == best.best_value) {
      ++ties;
    }
  });
  best.tight_count = ties;
  return best;
}

ValidityResult validate_inequality(const LinearInequality& ineq, int n, std::size_t sample_budget,
                                   std::uint64_t seed) {
  const VarIndex index(n);
  if (ineq.coeffs.size() != index.size()) throw ShapeError("inequality dimension does not match n");
  const ScaledRow row = scale_row(ineq);
  ValidityResult res;
  bool first = true;
  const std::optional<Rational>& tight_bound = ineq.upper ? ineq.upper : ineq.lower;
  auto visit = [&](const std::vector<int>& order) {
    const Rational v = lhs_of(ineq, row, index, order);
    if (first || v > res.max_lhs) res.max_lhs = v;
    if (first || v < res.min_lhs) res.min_lhs = v;
    first = false;
    if (tight_bound && v == *tight_bound) ++res.tight_count;
    ++res.scanned;
  };
  if (n <= kExhaustiveMaxN) {
    res.mode = ScanMode::exhaustive;
    for_each_permutation(n, visit);
  } else {
    res.mode = ScanMode::sampled;
    std::mt19937_64 engine(seed);
    for (std::size_t s = 0; s < sample_budget; ++s) visit(random_permutation(n, engine).order);
  }
  res.valid = res.scanned > 0 && (!ineq.upper || res.max_lhs <= *ineq.upper) &&
              (!ineq.lower || res.min_lhs >= *ineq.lower);
  return res;
}

FacetDimension facet_dimension(const LinearInequality& ineq, int n) {
  if (n > kExhaustiveMaxN) throw ScaleError("facet_dimension is limited to n <= " + std::to_string(kExhaustiveMaxN));
  const VarIndex index(n);
  if (ineq.coeffs.size() != index.size()) throw ShapeError("inequality dimension does not match n");
  const ScaledRow row = scale_row(ineq);
  const Rational bound = ineq.upper ? *ineq.upper : *ineq.lower;

  FacetDimension out;
  std::vector<std::int64_t> anchor;
  std::vector<std::vector<std::int64_t>> diffs;
  IntegerEchelon ech(index.size());
  bool overflowed = false;
  for_each_permutation(n, [&](const std::vector<int>& order) {
    if (lhs_of(ineq, row, index, order) != bound) return;
    ++out.tight_count;
    auto p = embed_permutation_i64(Permutation{order}, n);
    if (anchor.empty()) {
      anchor = std::move(p);
      return;
    }
    for (std::size_t c = 0; c < p.size(); ++c) p[c] -= anchor[c];
    if (overflowed) {
      diffs.push_back(std::move(p));
      return;
    }
    if (ech.rank() == index.size()) return;
    try {
      ech.insert(p);
    } catch (const std::overflow_error&) {
      overflowed = true;
    }
    diffs.push_back(std::move(p));
  });
  if (out.tight_count == 0) throw PreconditionError("no ordering attains the inequality's bound");
  out.dimension = overflowed ? integer_rank(diffs, index.size()) : ech.rank();
  out.is_facet = out.dimension + 1 == index.size();
  return out;
}

}  // namespace lopcut
