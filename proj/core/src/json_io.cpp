#include "lopcut/json_io.hpp"

namespace lopcut {

namespace {

Json big_or_small(const mpz_class& v) {
  if (auto small = to_i64(v)) return *small;
  return v.get_str();
}

Json optional_rational(const std::optional<Rational>& r) {
  return r ? rational_to_json(*r) : Json(nullptr);
}

std::optional<Rational> optional_from(const Json& j, const char* key) {
  if (!j.contains(key) || j.at(key).is_null()) return std::nullopt;
  return rational_from_json(j.at(key));
}

std::string integer_text(const Json& j) {
  if (j.is_number_integer()) return std::to_string(j.get<std::int64_t>());
  if (j.is_string()) return j.get<std::string>();
  throw ParseError(0, "expected an integer");
}

}  // namespace

Json rational_to_json(const Rational& r) {
  Json j;
  j["num"] = big_or_small(r.numerator());
  j["den"] = big_or_small(r.denominator());
  return j;
}

Rational rational_from_json(const Json& j) {
  try {
    if (j.is_number_integer()) return Rational(j.get<std::int64_t>());
    if (j.is_string()) return Rational::parse(j.get<std::string>());
    if (j.is_object() && j.contains("num") && j.contains("den")) {
      return Rational::parse(integer_text(j.at("num")) + "/" + integer_text(j.at("den")));
    }
  } catch (const ParseError&) {
    throw;
  } catch (const Error& e) {
    throw ParseError(0, e.what());
  }
  throw ParseError(0, "expected a rational: " + j.dump());
}

Json compact_rational(const Rational& r) {
  if (r.is_integer()) return big_or_small(r.numerator());
  return r.to_string();
}

Json inequality_to_json(const LinearInequality& ineq, int n) {
  const VarIndex index(n);
  if (ineq.coeffs.size() != index.size()) throw ShapeError("inequality length does not match n");
  Json j;
  j["n"] = n;
  j["origin"] = to_string(ineq.origin);
  Json coeffs = Json::array();
  for (const auto& c : ineq.coeffs) coeffs.push_back(compact_rational(c));
  j["coeffs"] = std::move(coeffs);
  Json ordered = Json::array();
  for (int i = 1; i <= n; ++i) {
    for (int k = 1; k <= n; ++k) {
      if (i == k) continue;
      ordered.push_back(i < k ? compact_rational(ineq.coeffs[index.column(i, k)]) : Json(0));
    }
  }
  j["ordered_coeffs"] = std::move(ordered);
  j["lower"] = optional_rational(ineq.lower);
  j["upper"] = optional_rational(ineq.upper);
  j["rhs"] = ineq.upper ? compact_rational(*ineq.upper) : Json(nullptr);
  return j;
}

ParsedInequality inequality_from_json(const Json& in) {
  if (in.is_object() && in.contains("cuts") && !in.contains("coeffs") && !in.contains("ordered_coeffs")) {
    const auto& cuts = in.at("cuts");
    if (!cuts.is_array() || cuts.empty()) throw ParseError(0, "bundle holds no cuts");
    const auto& first = cuts.front();
    return inequality_from_json(first.contains("cut") ? first.at("cut") : first);
  }
  if (!in.is_object() || !in.contains("n")) throw ParseError(0, "inequality needs an \"n\" field");
  const int n = in.at("n").get<int>();
  if (n < 2) throw ParseError(0, "n >= 2 required");
  const VarIndex index(n);

  RationalVector coeffs(index.size());
  Rational shift;  // constant moved out of the lhs by the ordered form
  if (in.contains("coeffs")) {
    const auto& cj = in.at("coeffs");
    if (!cj.is_array() || cj.size() != index.size()) {
      throw ParseError(0, "coeffs must hold n(n-1)/2 = " + std::to_string(index.size()) + " entries");
    }
    for (std::size_t c = 0; c < cj.size(); ++c) coeffs[c] = rational_from_json(cj[c]);
  } else if (in.contains("ordered_coeffs")) {
    const auto& oj = in.at("ordered_coeffs");
    const std::size_t want = static_cast<std::size_t>(n) * static_cast<std::size_t>(n - 1);
    if (!oj.is_array() || oj.size() != want) {
      throw ParseError(0, "ordered_coeffs must hold n(n-1) = " + std::to_string(want) + " entries");
    }
    PairExpression e(n);
    std::size_t pos = 0;
    for (int i = 1; i <= n; ++i) {
      for (int k = 1; k <= n; ++k) {
        if (i == k) continue;
        e.add(i, k, rational_from_json(oj[pos++]));
      }
    }
    coeffs = e.coeffs();
    shift = e.constant();
  } else {
    throw ParseError(0, "inequality needs \"coeffs\" or \"ordered_coeffs\"");
  }

  std::optional<Rational> lower = optional_from(in, "lower");
  std::optional<Rational> upper = optional_from(in, "upper");
  if (!upper) upper = optional_from(in, "rhs");
  if (lower) *lower -= shift;
  if (upper) *upper -= shift;
  RowOrigin origin = RowOrigin::hull_cut;
  if (in.contains("origin") && in.at("origin").is_string()) {
    try {
      origin = row_origin_from_string(in.at("origin").get<std::string>());
    } catch (const Error& e) {
      throw ParseError(0, e.what());
    }
  }
  try {
    return {n, LinearInequality::make(std::move(coeffs), lower, upper, origin)};
  } catch (const ParseError&) {
    throw;
  } catch (const Error& e) {
    throw ParseError(0, e.what());
  }
}

Json verified_cut_to_json(const VerifiedCut& vc, int n) {
  Json j;
  j["cut"] = inequality_to_json(vc.cut, n);
  j["provenance"] = to_string(vc.provenance);
  j["component"] = vc.component;
  j["valid"] = vc.valid;
  j["validity_mode"] = to_string(vc.validity_mode);
  j["max_lhs"] = rational_to_json(vc.max_lhs);
  j["tight_count"] = vc.tight_count;
  j["facet_dim"] = vc.facet_dim ? Json(*vc.facet_dim) : Json(nullptr);
  j["facet_space_dim"] = vc.facet_space_dim;
  j["value_at_source"] = rational_to_json(vc.value_at_source);
  return j;
}

Json bundle_to_json(const CutBundle& bundle) {
  Json j;
  j["n"] = bundle.n;
  j["provenance"] = to_string(bundle.provenance);
  j["verified_valid"] = bundle.verified_valid;
  j["verified_facet_dim"] = bundle.verified_facet_dim ? Json(*bundle.verified_facet_dim) : Json(nullptr);
  j["source_vertex"] = vertex_to_json(bundle.n, bundle.source_vertex).at("x");
  Json cuts = Json::array();
  for (const auto& vc : bundle.cuts) cuts.push_back(verified_cut_to_json(vc, bundle.n));
  j["cuts"] = std::move(cuts);
  Json discarded = Json::array();
  for (const auto& d : bundle.discarded) {
    Json dj;
    dj["reason"] = d.reason;
    dj["cut"] = d.cut.coeffs.size() == VarIndex(bundle.n).size() ? inequality_to_json(d.cut, bundle.n) : Json(nullptr);
    discarded.push_back(std::move(dj));
  }
  j["discarded"] = std::move(discarded);
  return j;
}

Json profile_to_json(const VertexProfile& profile) {
  Json j;
  j["n"] = profile.n;
  j["x"] = vertex_to_json(profile.n, profile.x).at("x");
  j["integral"] = profile.integral();
  j["denominators"] = profile.denominators;
  Json arcs = Json::array();
  for (const auto& [a, b] : profile.arc_graph.arcs()) arcs.push_back({a, b});
  j["arcs"] = std::move(arcs);
  Json frac = Json::array();
  for (const auto& f : profile.fractional_pairs) {
    Json fj;
    fj["i"] = f.i;
    fj["j"] = f.j;
    fj["value"] = f.value.to_string();
    frac.push_back(std::move(fj));
  }
  j["fractional_pairs"] = std::move(frac);
  j["components"] = profile.components;
  Json fences = Json::array();
  for (const auto& f : profile.fences) {
    Json fj;
    fj["i"] = f.i_list;
    fj["j"] = f.j_list;
    fj["m"] = f.m();
    fences.push_back(std::move(fj));
  }
  j["fences"] = std::move(fences);
  Json chains = Json::array();
  for (const auto& c : profile.chains3) {
    Json cj;
    cj["nodes"] = c.nodes;
    cj["dependent"] = c.dependent;
    chains.push_back(std::move(cj));
  }
  j["chains3"] = std::move(chains);
  j["tau"] = profile.tau;
  j["simple"] = profile.simple;
  return j;
}

Json report_to_json(const SolveReport& report, int n) {
  Json j;
  j["status"] = to_string(report.status);
  j["best_bound"] = rational_to_json(report.best_bound);
  if (report.incumbent) {
    Json inc;
    inc["order"] = report.incumbent->order;
    inc["value"] = *report.incumbent_value;
    j["incumbent"] = std::move(inc);
  } else {
    j["incumbent"] = nullptr;
  }
  Json its = Json::array();
  for (const auto& rec : report.iterations) {
    Json r;
    r["lp_value"] = rational_to_json(rec.lp_value);
    r["vertex"] = rec.integral ? "integer" : "fractional";
    r["denominators"] = rec.denominators;
    r["reduction_steps"] = rec.reduction_steps;
    r["cuts_added"] = rec.cuts_added;
    Json prov = Json::array();
    for (auto p : rec.provenance) prov.push_back(to_string(p));
    r["provenance"] = std::move(prov);
    its.push_back(std::move(r));
  }
  j["iterations"] = std::move(its);
  Json cuts = Json::array();
  for (const auto& c : report.cut_pool) cuts.push_back(inequality_to_json(c, n));
  j["cuts"] = std::move(cuts);
  j["detail"] = report.detail;
  return j;
}

ParsedVertex vertex_from_json(const Json& j) {
  if (!j.is_object() || !j.contains("n") || !j.contains("x")) throw ParseError(0, "vertex needs \"n\" and \"x\"");
  ParsedVertex v;
  v.n = j.at("n").get<int>();
  if (v.n < 2) throw ParseError(0, "n >= 2 required");
  const auto& xs = j.at("x");
  const std::size_t want = VarIndex(v.n).size();
  if (!xs.is_array() || xs.size() != want) {
    throw ParseError(0, "x must hold n(n-1)/2 = " + std::to_string(want) + " entries");
  }
  for (const auto& e : xs) v.x.push_back(rational_from_json(e));
  return v;
}

Json vertex_to_json(int n, std::span<const Rational> x) {
  Json j;
  j["n"] = n;
  Json xs = Json::array();
  for (const auto& v : x) xs.push_back(v.to_string());
  j["x"] = std::move(xs);
  return j;
}

}  // namespace lopcut
