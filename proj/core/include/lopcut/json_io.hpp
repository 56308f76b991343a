#pragma once

#include <nlohmann/json.hpp>

#include "lopcut/solver.hpp"

namespace lopcut {

using Json = nlohmann::ordered_json;

/// {"num": p, "den": q} with 64-bit integers when they fit, strings otherwise.
Json rational_to_json(const Rational& r);
/// Accepts {"num","den"}, an integer, or a "p/q" string. ParseError otherwise.
Rational rational_from_json(const Json& j);

/// Integer when integral, else "p/q".
Json compact_rational(const Rational& r);

/// {"n", "origin", "coeffs", "ordered_coeffs", "lower", "upper", "rhs"}.
/// ordered_coeffs lists n(n-1) entries over ordered pairs (i, j), i != j,
/// row-major, with each reduced coefficient placed on its (i<j) pair.
Json inequality_to_json(const LinearInequality& ineq, int n);

struct ParsedInequality {
  int n = 0;
  LinearInequality ineq;
};

/// Reads the object written by inequality_to_json. Either "coeffs" (reduced)
/// or "ordered_coeffs" must be present; "rhs" stands in for a missing
/// "upper". A bare {"cuts": [...]} bundle yields its first cut.
ParsedInequality inequality_from_json(const Json& j);

Json verified_cut_to_json(const VerifiedCut& vc, int n);
Json bundle_to_json(const CutBundle& bundle);
Json profile_to_json(const VertexProfile& profile);
Json report_to_json(const SolveReport& report, int n);

struct ParsedVertex {
  int n = 0;
  RationalVector x;
};

/// {"n": N, "x": [...]} with entries as accepted by rational_from_json.
ParsedVertex vertex_from_json(const Json& j);
Json vertex_to_json(int n, std::span<const Rational> x);

}  // namespace lopcut
