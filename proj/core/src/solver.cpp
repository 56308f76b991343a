#include "lopcut/solver.hpp"

#include <algorithm>

namespace lopcut {

std::string to_string(SolveStatus status) {
  switch (status) {
    case SolveStatus::optimal: return "Optimal";
    case SolveStatus::cuts_exhausted: return "CutsExhausted";
    case SolveStatus::iteration_limit: return "IterationLimit";
    case SolveStatus::reduction_stuck: return "ReductionStuck";
  }
  return "unknown";
}

BasicSolution auxiliary_problem(const ConstraintSystem& sys, const std::vector<TripleExpression>& triples,
                                const std::vector<TightCut>& cuts) {
  if (triples.empty() && cuts.empty()) {
    throw PreconditionError("auxiliary problem needs at least one tight row");
  }
  const int n = sys.n();
  ConstraintSystem base = sys.without_cuts();
  LinearObjective objective{RationalVector(sys.dim()), Rational(0)};
  for (const auto& t : triples) {
    const auto e = to_pair_expression(t, n);
    for (std::size_t c = 0; c < sys.dim(); ++c) objective.coeffs[c] += e.coeffs()[c];
    objective.offset += e.constant();
  }
  for (const auto& tc : cuts) {
    if (tc.f_low >= tc.f_high) throw PreconditionError("cut bounds must satisfy f_low < f_high");
    base = add_cut(base, LinearInequality::make(tc.cut.coeffs, tc.f_low, tc.f_high, RowOrigin::aux));
    const Rational scale = Rational(1) / (tc.f_high - tc.f_low);
    for (std::size_t c = 0; c < sys.dim(); ++c) {
      if (!tc.cut.coeffs[c].is_zero()) objective.coeffs[c] += tc.cut.coeffs[c] * scale;
    }
    objective.offset -= tc.f_low * scale;
  }
  return lp_solve(base, objective, Direction::maximize);
}

Permutation decode_integer_vertex(std::span<const Rational> x, int n) {
  const VarIndex index(n);
  if (x.size() != index.size()) throw ShapeError("vertex length does not match n");
  for (const auto& v : x) {
    if (v != Rational(0) && v != Rational(1)) throw PreconditionError("decode_integer_vertex needs a 0/1 point");
  }
  std::vector<std::pair<int, int>> by_degree;  // (-out_degree, node)
  for (int i = 1; i <= n; ++i) {
    int out = 0;
    for (int j = 1; j <= n; ++j) {
      if (i != j && index.value(x, i, j) == Rational(1)) ++out;
    }
    by_degree.emplace_back(-out, i);
  }
  std::sort(by_degree.begin(), by_degree.end());
  Permutation p;
  for (const auto& [deg, node] : by_degree) p.order.push_back(node);
  const auto back = embed_permutation(p, n);
  if (!std::equal(back.begin(), back.end(), x.begin(), x.end())) {
    throw InvariantViolation("integral point is not transitive");
  }
  return p;
}

namespace {

/// Triple expressions equal to 1 at x, one per tight base row.
std::vector<TripleExpression> tight_triples(const ConstraintSystem& sys, const std::vector<TightRow>& tight) {
  const int n = sys.n();
  std::vector<TripleExpression> out;
  for (const auto& t : tight) {
    if (sys.is_cut_row(t.row)) continue;
    if (sys.is_triangle_row(t.row)) {
      const auto [i, j, k] = sys.triangle_triple(t.row);
      out.push_back(t.side == Side::upper ? TripleExpression{i, j, k} : TripleExpression{k, j, i});
    } else {
      const auto [i, j] = sys.columns().pair(t.row);
      out.push_back(t.side == Side::upper ? TripleExpression{i, j, n + 1} : TripleExpression{j, i, n + 1});
    }
  }
  return out;
}

/// Cuts built from the optimal face of the auxiliary problem at x.
std::vector<VerifiedCut> auxiliary_cuts(const ConstraintSystem& sys, std::span<const Rational> x,
                                        const CutOptions& options, std::string& detail) {
  const int n = sys.n();
  if (n > kExhaustiveMaxN) {
    detail = "auxiliary face enumeration needs n <= " + std::to_string(kExhaustiveMaxN);
    return {};
  }
  const auto tight = tight_rows(sys, x);
  const auto triples = tight_triples(sys, tight);
  std::vector<TightCut> cuts;
  for (const auto& t : tight) {
    if (!sys.is_cut_row(t.row) || t.side != Side::upper) continue;
    const auto& cut = sys.row(t.row);
    const Rational low = validate_inequality(cut, n).min_lhs;
    if (low < *cut.upper) cuts.push_back({cut, low, *cut.upper});
  }
  const BasicSolution aux = auxiliary_problem(sys, triples, cuts);

  LinearObjective aux_objective{RationalVector(sys.dim()), Rational(0)};
  for (const auto& t : triples) {
    const auto e = to_pair_expression(t, n);
    for (std::size_t c = 0; c < sys.dim(); ++c) aux_objective.coeffs[c] += e.coeffs()[c];
    aux_objective.offset += e.constant();
  }
  for (const auto& tc : cuts) {
    const Rational scale = Rational(1) / (tc.f_high - tc.f_low);
    for (std::size_t c = 0; c < sys.dim(); ++c) aux_objective.coeffs[c] += tc.cut.coeffs[c] * scale;
    aux_objective.offset -= tc.f_low * scale;
  }

  // Orderings on the optimal face; if the face has none, the best orderings.
  std::vector<RationalVector> face;
  std::optional<Rational> best;
  for_each_permutation(n, [&](const std::vector<int>& order) {
    auto p = embed_permutation(Permutation{order}, n);
    const Rational v = aux_objective.value(p);
    if (!best || v > *best) {
      best = v;
      face.clear();
    }
    if (v == *best) face.push_back(std::move(p));
  });

  std::vector<LinearEquality> planes;
  try {
    planes = hyperplanes_through(face, sys.dim());
  } catch (const NoHyperplaneError& e) {
    detail = std::string("auxiliary face: ") + e.what();
    return {};
  }
  std::vector<VerifiedCut> out;
  std::string reason;
  for (const auto& eq : planes) {
    if (auto vc = orient_and_verify(eq, n, x, CutProvenance::aux, options, &reason)) out.push_back(std::move(*vc));
  }
  if (out.empty()) {
    detail = "auxiliary face (LP optimum " + aux.objective.to_string() + ", " + std::to_string(face.size()) +
             " orderings) gave no separating cut" + (reason.empty() ? "" : ": " + reason);
  }
  return out;
}

bool separates(const VerifiedCut& vc, std::span<const Rational> x) {
  return evaluate(vc.cut, x) > *vc.cut.upper;
}

}  // namespace

SolveReport solve(const LopInstance& inst, const SolverConfig& config) {
  if (config.max_iterations < 1) throw PreconditionError("max_iterations must be at least 1");
  const int n = inst.n();
  const LinearObjective objective = lop_objective(inst);
  CutOptions options;
  options.check_facet_dimension = config.oracle_verification.value_or(n <= kExhaustiveMaxN);
  options.seed = config.seed ^ 0x10b5eed;

  SolveReport report;
  ConstraintSystem sys = build_bn(n);
  std::optional<Rational> bound;

  auto finish = [&](SolveStatus status, std::string detail) {
    report.status = status;
    report.detail = std::move(detail);
    report.best_bound = *bound;
    report.cut_pool = sys.cut_pool();
    return report;
  };

  for (std::size_t it = 0; it < config.max_iterations; ++it) {
    const BasicSolution sol = lp_solve(sys, objective);
    if (!bound || sol.objective < *bound) bound = sol.objective;

    IterationRecord rec;
    rec.lp_value = sol.objective;
    rec.vertex = sol.x;
    const VertexProfile profile = classify_vertex(sys, sol.x);
    rec.integral = profile.integral();
    rec.denominators = profile.denominators;

    if (rec.integral) {
      report.iterations.push_back(rec);
      const Permutation p = decode_integer_vertex(sol.x, n);
      const std::int64_t value = permutation_value(inst, p);
      if (Rational(value) != sol.objective) throw InvariantViolation("integral LP vertex value mismatch");
      report.incumbent = p;
      report.incumbent_value = value;
      bound = Rational(value);
      return finish(SolveStatus::optimal, "");
    }

    std::vector<VerifiedCut> fresh;
    std::string detail;
    try {
      RationalVector target = sol.x;
      std::int64_t den = profile.max_denominator();
      if (den >= 3 && config.reduction_enabled) {
        while (den >= 3) {
          const ReductionStep step = reduce_denominator(sys, target);
          target = step.vertex;
          den = step.to_denominator;
          ++rec.reduction_steps;
        }
      }
      if (den >= 2) {
        CutOptions local = options;
        local.require_half_integral = config.reduction_enabled;
        const CutBundle bundle = facet_cuts_for_vertex(sys, target, local);
        for (const auto& vc : bundle.cuts) fresh.push_back(vc);
      }
    } catch (const ReductionStuckError& e) {
      report.iterations.push_back(rec);
      return finish(SolveStatus::reduction_stuck, e.what());
    } catch (const NotSeparatedError& e) {
      detail = e.what();
    } catch (const ScaleError& e) {
      detail = e.what();
    }

    const bool cuts_off_x =
        std::any_of(fresh.begin(), fresh.end(), [&](const VerifiedCut& vc) { return separates(vc, sol.x); });
    if (!cuts_off_x) {
      for (auto& vc : auxiliary_cuts(sys, sol.x, options, detail)) fresh.push_back(std::move(vc));
    }

    const std::size_t before = sys.cut_pool().size();
    bool progress = false;
    for (const auto& vc : fresh) {
      sys = add_cut(sys, vc.cut);
      if (sys.cut_pool().size() > before + rec.cuts_added) {
        ++rec.cuts_added;
        rec.provenance.push_back(vc.provenance);
      }
      progress = progress || separates(vc, sol.x);
    }
    report.iterations.push_back(rec);
    if (!progress) {
      return finish(SolveStatus::cuts_exhausted, detail.empty() ? "no verified cut separates the LP vertex" : detail);
    }
  }
  return finish(SolveStatus::iteration_limit, "iteration limit reached");
}

}  // namespace lopcut
