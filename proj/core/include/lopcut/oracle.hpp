#pragma once

#include <cstdint>
#include <optional>
#include <random>

#include "lopcut/instance.hpp"
#include "lopcut/relaxation.hpp"

namespace lopcut {

/// Largest n brute_force_opt accepts.
inline constexpr int kBruteForceMaxN = 10;
/// Largest n for exhaustive permutation scans of inequalities.
inline constexpr int kExhaustiveMaxN = 8;
/// Default number of sampled permutations beyond kExhaustiveMaxN.
inline constexpr std::size_t kDefaultSampleBudget = 100000;

struct OracleResult {
  std::int64_t best_value = 0;
  Permutation best_permutation;
  std::optional<std::size_t> tight_count;  // orderings attaining best_value
};

/// Exact LOP optimum by lexicographic enumeration; ties go to the
/// lexicographically smallest ordering. ScaleError for n > 10.
OracleResult brute_force_opt(const LopInstance& inst);

enum class ScanMode { exhaustive, sampled };

std::string to_string(ScanMode mode);

struct ValidityResult {
  bool valid = false;
  Rational max_lhs;
  Rational min_lhs;
  std::size_t tight_count = 0;  // orderings attaining the upper (else lower) bound
  std::size_t scanned = 0;
  ScanMode mode = ScanMode::exhaustive;
};

/// Scans all n! orderings for n <= 8, otherwise `sample_budget` seeded
/// random orderings (mode = sampled).
ValidityResult validate_inequality(const LinearInequality& ineq, int n,
                                   std::size_t sample_budget = kDefaultSampleBudget, std::uint64_t seed = 0x10b5eed);

struct FacetDimension {
  std::size_t dimension = 0;  // affine dimension of the tight orderings
  bool is_facet = false;      // dimension == n(n-1)/2 - 1
  std::size_t tight_count = 0;
};

/// Affine dimension of the orderings attaining the upper bound (the lower
/// bound for >= rows). ScaleError for n > 8, PreconditionError when no
/// ordering is tight.
FacetDimension facet_dimension(const LinearInequality& ineq, int n);

/// Calls f(order) for each ordering of 1..n in lexicographic order; f may
/// return false to stop early.
template <typename F>
void for_each_permutation(int n, F&& f);

/// Uniform random ordering drawn with `engine`, independent of the standard
/// library's distribution implementations.
Permutation random_permutation(int n, std::mt19937_64& engine);

}  // namespace lopcut

#include <algorithm>
#include <numeric>
#include <type_traits>
#include <vector>

namespace lopcut {

template <typename F>
void for_each_permutation(int n, F&& f) {
  std::vector<int> order(static_cast<std::size_t>(n));
  std::iota(order.begin(), order.end(), 1);
  do {
    if constexpr (std::is_same_v<std::invoke_result_t<F&, const std::vector<int>&>, bool>) {
      if (!f(static_cast<const std::vector<int>&>(order))) return;
    } else {
      f(static_cast<const std::vector<int>&>(order));
    }
  } while (std::next_permutation(order.begin(), order.end()));
}

}  // namespace lopcut
