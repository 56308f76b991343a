#include "lopcut_cli/cli.hpp"

#include <fstream>
#include <iomanip>
#include <iostream>
#include <numeric>
#include <sstream>

#include <CLI11.hpp>

#include "lopcut/json_io.hpp"

namespace lopcut::cli {
namespace {

/// Raised for a failed oracle check; maps to kExitVerification.
class VerificationFailure : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class FileError : public Error {
 public:
  using Error::Error;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw FileError("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path);
  if (!out) throw FileError("cannot write " + path);
  out << text;
}

Json read_json(const std::string& path) {
  try {
    return Json::parse(read_file(path));
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(0, path + ": " + e.what());
  }
}

/// "LO:HI" with LO <= HI.
std::pair<std::int64_t, std::int64_t> parse_range(const std::string& text) {
  const auto colon = text.find(':');
  if (colon == std::string::npos) throw CLI::ValidationError("--range", "expected LO:HI");
  try {
    const std::int64_t lo = std::stoll(text.substr(0, colon));
    const std::int64_t hi = std::stoll(text.substr(colon + 1));
    if (lo > hi) throw CLI::ValidationError("--range", "LO must not exceed HI");
    return {lo, hi};
  } catch (const std::logic_error&) {
    throw CLI::ValidationError("--range", "expected integers LO:HI");
  }
}

std::pair<std::vector<int>, std::vector<int>> fence_lists(int m) {
  if (m < 3) throw CLI::ValidationError("--fence", "m must be at least 3");
  std::vector<int> is(static_cast<std::size_t>(m)), js(static_cast<std::size_t>(m));
  std::iota(is.begin(), is.end(), 1);
  std::iota(js.begin(), js.end(), m + 1);
  return {is, js};
}

void print_summary(std::ostream& out, const SolveReport& report) {
  out << "status      " << to_string(report.status) << '\n';
  out << "best_bound  " << report.best_bound.to_string() << '\n';
  if (report.incumbent) {
    out << "incumbent   " << to_string(*report.incumbent) << " value " << *report.incumbent_value << '\n';
  }
  out << "iterations  " << report.iterations.size() << '\n';
  out << "cuts        " << report.cut_pool.size() << '\n';
  for (std::size_t k = 0; k < report.iterations.size(); ++k) {
    const auto& it = report.iterations[k];
    out << "  " << std::setw(3) << k + 1 << "  lp " << std::setw(10) << it.lp_value.to_string() << "  "
        << (it.integral ? "integer   " : "fractional") << "  cuts " << it.cuts_added << '\n';
  }
  if (!report.detail.empty()) out << "detail      " << report.detail << '\n';
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Exact cutting planes for the linear ordering problem", "lopcut"};
  app.require_subcommand(1, 1);

  int gen_n = 0;
  std::uint64_t gen_seed = 0;
  std::string gen_range = "0:99";
  std::string gen_out;
  auto* gen = app.add_subcommand("gen", "write a seeded random instance");
  gen->add_option("--n", gen_n, "number of elements")->required()->check(CLI::Range(2, 1000));
  gen->add_option("--seed", gen_seed, "generator seed")->required();
  gen->add_option("--range", gen_range, "cost range LO:HI");
  gen->add_option("--out", gen_out, "output file (stdout when omitted)");

  std::string solve_file;
  std::size_t solve_max_iter = SolverConfig{}.max_iterations;
  bool solve_no_reduce = false;
  std::uint64_t solve_seed = 0;
  std::string solve_json;
  auto* solve_cmd = app.add_subcommand("solve", "run the cutting-plane loop on an instance file");
  solve_cmd->add_option("file", solve_file, "instance file")->required();
  solve_cmd->add_option("--max-iter", solve_max_iter, "iteration limit")->check(CLI::PositiveNumber);
  solve_cmd->add_flag("--no-reduce", solve_no_reduce, "skip denominator reduction");
  solve_cmd->add_option("--seed", solve_seed, "seed for sampled checks");
  solve_cmd->add_option("--json", solve_json, "write the JSON report here");

  std::string analyze_file;
  int analyze_fence = 0;
  auto* analyze = app.add_subcommand("analyze", "profile the LP vertex of an instance or a fence point");
  auto* analyze_file_opt = analyze->add_option("file", analyze_file, "instance file");
  auto* analyze_fence_opt = analyze->add_option("--fence", analyze_fence, "construct the fence point of size m");
  analyze_file_opt->excludes(analyze_fence_opt);
  analyze->require_option(1);

  int cuts_fence = 0;
  std::string cuts_vertex;
  std::string cuts_out;
  auto* cuts = app.add_subcommand("cuts", "generate verified cuts");
  auto* cuts_fence_opt = cuts->add_option("--fence", cuts_fence, "fence size m");
  auto* cuts_vertex_opt = cuts->add_option("--from-vertex", cuts_vertex, "vertex JSON file");
  cuts_fence_opt->excludes(cuts_vertex_opt);
  cuts->add_option("--out", cuts_out, "also write the bundle here");
  cuts->require_option(1, 2);

  std::string verify_cut;
  int verify_n = 0;
  auto* verify = app.add_subcommand("verify", "oracle validity and facet dimension of a cut");
  verify->add_option("--cut", verify_cut, "cut JSON file (inequality or bundle)")->required();
  verify->add_option("--n", verify_n, "number of elements")->required()->check(CLI::Range(2, 1000));

  int bench_n = 0;
  std::size_t bench_count = 0;
  std::uint64_t bench_seed = 0;
  std::string bench_range = "0:99";
  std::string bench_json;
  auto* bench = app.add_subcommand("bench", "solve seeded random instances against the brute-force optimum");
  bench->add_option("--n", bench_n, "number of elements")->required()->check(CLI::Range(2, 1000));
  bench->add_option("--count", bench_count, "instances")->required();
  bench->add_option("--seed", bench_seed, "first seed")->required();
  bench->add_option("--range", bench_range, "cost range LO:HI");
  bench->add_option("--json", bench_json, "write the rows as JSON here");

  try {
    app.parse(std::vector<std::string>(args.rbegin(), args.rend()));
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "lopcut: " << e.what() << '\n';
    return kExitUsage;
  }

  try {
    if (gen->parsed()) {
      const auto [lo, hi] = parse_range(gen_range);
      auto inst = random_instance(gen_n, gen_seed, lo, hi);
      inst.set_name("random n=" + std::to_string(gen_n) + " seed=" + std::to_string(gen_seed) + " range=" + gen_range);
      if (gen_out.empty()) {
        write_instance(out, inst);
      } else {
        write_file(gen_out, serialize_instance(inst));
      }
      return kExitOk;
    }

    if (solve_cmd->parsed()) {
      const auto inst = parse_instance(read_file(solve_file));
      SolverConfig config;
      config.max_iterations = solve_max_iter;
      config.reduction_enabled = !solve_no_reduce;
      config.seed = solve_seed;
      const auto report = solve(inst, config);
      print_summary(out, report);
      if (!solve_json.empty()) write_file(solve_json, report_to_json(report, inst.n()).dump(2) + "\n");
      return kExitOk;
    }

    if (analyze->parsed()) {
      VertexProfile profile;
      if (analyze_fence != 0) {
        const auto [is, js] = fence_lists(analyze_fence);
        const int n = 2 * analyze_fence;
        profile = classify_vertex(build_bn(n), fence_point(is, js, n));
      } else {
        const auto inst = parse_instance(read_file(analyze_file));
        const auto sys = build_bn(inst.n());
        profile = classify_vertex(sys, lp_solve(sys, lop_objective(inst)).x);
      }
      out << profile_to_json(profile).dump(2) << '\n';
      return kExitOk;
    }

    if (cuts->parsed()) {
      CutBundle bundle;
      if (cuts_fence != 0) {
        const auto [is, js] = fence_lists(cuts_fence);
        const int n = 2 * cuts_fence;
        bundle = facet_cuts_for_vertex(build_bn(n), fence_point(is, js, n));
      } else if (!cuts_vertex.empty()) {
        const auto vertex = vertex_from_json(read_json(cuts_vertex));
        bundle = facet_cuts_for_vertex(build_bn(vertex.n), vertex.x);
      } else {
        err << "lopcut: cuts needs --fence or --from-vertex\n";
        return kExitUsage;
      }
      const auto text = bundle_to_json(bundle).dump(2) + "\n";
      out << text;
      if (!cuts_out.empty()) write_file(cuts_out, text);
      return bundle.verified_valid ? kExitOk : kExitVerification;
    }

    if (verify->parsed()) {
      const auto parsed = inequality_from_json(read_json(verify_cut));
      if (parsed.n != 0 && parsed.n != verify_n) {
        err << "lopcut: cut is written for n=" << parsed.n << ", not " << verify_n << '\n';
        return kExitUsage;
      }
      const auto validity = validate_inequality(parsed.ineq, verify_n);
      Json j;
      j["n"] = verify_n;
      j["valid"] = validity.valid;
      j["mode"] = to_string(validity.mode);
      j["scanned"] = validity.scanned;
      j["max_lhs"] = rational_to_json(validity.max_lhs);
      j["min_lhs"] = rational_to_json(validity.min_lhs);
      j["tight_count"] = validity.tight_count;
      j["facet_dim"] = nullptr;
      j["is_facet"] = nullptr;
      if (validity.valid && verify_n <= kExhaustiveMaxN && validity.tight_count > 0) {
        const auto dim = facet_dimension(parsed.ineq, verify_n);
        j["facet_dim"] = dim.dimension;
        j["is_facet"] = dim.is_facet;
      }
      out << j.dump(2) << '\n';
      return validity.valid ? kExitOk : kExitVerification;
    }

    if (bench->parsed()) {
      const auto [lo, hi] = parse_range(bench_range);
      if (bench_n > kBruteForceMaxN) {
        throw ScaleError("bench compares against brute force, which stops at n = " + std::to_string(kBruteForceMaxN));
      }
      Json rows = Json::array();
      bool violated = false;
      std::size_t optimal = 0;
      out << std::setw(6) << "seed" << "  " << std::left << std::setw(14) << "status" << std::right << std::setw(7)
          << "bound" << "  " << std::setw(13) << "optimum" << "  " << std::setw(5) << "iters" << "  " << std::setw(4)
          << "cuts" << '\n';
      for (std::size_t k = 0; k < bench_count; ++k) {
        const std::uint64_t seed = bench_seed + k;
        const auto inst = random_instance(bench_n, seed, lo, hi);
        SolverConfig config;
        config.seed = seed;
        const auto report = solve(inst, config);
        const auto optimum = brute_force_opt(inst).best_value;
        const bool bound_ok = report.best_bound >= Rational(optimum);
        const bool match = report.status != SolveStatus::optimal || report.incumbent_value == optimum;
        violated = violated || !bound_ok || !match;
        optimal += report.status == SolveStatus::optimal ? 1 : 0;
        out << std::setw(6) << seed << "  " << std::left << std::setw(14) << to_string(report.status) << std::right
            << std::setw(7) << report.best_bound.to_string() << "  " << std::setw(13) << optimum << "  "
            << std::setw(5) << report.iterations.size() << "  " << std::setw(4) << report.cut_pool.size()
            << (bound_ok && match ? "" : "  VIOLATION") << '\n';
        Json row;
        row["seed"] = seed;
        row["status"] = to_string(report.status);
        row["best_bound"] = rational_to_json(report.best_bound);
        row["optimum"] = optimum;
        row["iterations"] = report.iterations.size();
        row["cuts"] = report.cut_pool.size();
        rows.push_back(std::move(row));
      }
      out << "optimal " << optimal << "/" << bench_count << '\n';
      if (!bench_json.empty()) write_file(bench_json, rows.dump(2) + "\n");
      return violated ? kExitVerification : kExitOk;
    }
  } catch (const CLI::ValidationError& e) {
    err << "lopcut: " << e.what() << '\n';
    return kExitUsage;
  } catch (const ScaleError& e) {
    err << "lopcut: " << e.what() << '\n';
    return kExitScale;
  } catch (const NotSeparatedError& e) {
    err << "lopcut: " << e.what() << '\n';
    return kExitVerification;
  } catch (const Error& e) {
    err << "lopcut: " << e.what() << '\n';
    return kExitUsage;
  }
  return kExitUsage;
}

}  // namespace lopcut::cli
