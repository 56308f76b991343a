#pragma once

// Reference computations kept independent of the library's algorithms.

#include <algorithm>
#include <cstdint>
#include <random>
#include <set>
#include <stdexcept>
#include <vector>

#include <gmpxx.h>

#include "lopcut/instance.hpp"

namespace lopcut::ref {

/// Sum of c(a, b) over pairs with a placed before b.
inline std::int64_t reference_value(const std::vector<std::int64_t>& costs, int n, const std::vector<int>& order) {
  std::int64_t v = 0;
  for (std::size_t a = 0; a < order.size(); ++a) {
    for (std::size_t b = a + 1; b < order.size(); ++b) {
      v += costs[static_cast<std::size_t>((order[a] - 1) * n + (order[b] - 1))];
    }
  }
  return v;
}

/// Rank by plain Gaussian elimination on mpq_class.
inline std::size_t reference_rank(std::vector<std::vector<mpq_class>> rows) {
  std::size_t rank = 0;
  const std::size_t cols = rows.empty() ? 0 : rows.front().size();
  for (std::size_t c = 0; c < cols && rank < rows.size(); ++c) {
    std::size_t piv = rank;
    while (piv < rows.size() && rows[piv][c] == 0) ++piv;
    if (piv == rows.size()) continue;
    std::swap(rows[rank], rows[piv]);
    for (std::size_t r = 0; r < rows.size(); ++r) {
      if (r == rank || rows[r][c] == 0) continue;
      const mpq_class f = rows[r][c] / rows[rank][c];
      for (std::size_t k = c; k < cols; ++k) rows[r][k] -= f * rows[rank][k];
    }
    ++rank;
  }
  return rank;
}

inline std::vector<int> complement_of(const std::vector<int>& all, const std::vector<int>& drop) {
  std::vector<int> out;
  for (int v : all) {
    if (std::find(drop.begin(), drop.end(), v) == drop.end()) out.push_back(v);
  }
  return out;
}

/// Orderings a i_k j_k b and a i_k j_k i_p j_p b (k != p, ordered), where a
/// runs over orderings of the remaining j-nodes and b over the remaining
/// i-nodes.
inline std::set<std::vector<int>> fence_families(const std::vector<int>& i_list, const std::vector<int>& j_list) {
  std::set<std::vector<int>> out;
  const std::size_t m = i_list.size();
  auto emit = [&](std::vector<int> head, const std::vector<int>& middle, std::vector<int> tail) {
    std::sort(head.begin(), head.end());
    do {
      std::sort(tail.begin(), tail.end());
      do {
        std::vector<int> order = head;
        order.insert(order.end(), middle.begin(), middle.end());
        order.insert(order.end(), tail.begin(), tail.end());
        out.insert(order);
      } while (std::next_permutation(tail.begin(), tail.end()));
    } while (std::next_permutation(head.begin(), head.end()));
  };
  for (std::size_t k = 0; k < m; ++k) {
    emit(complement_of(j_list, {j_list[k]}), {i_list[k], j_list[k]}, complement_of(i_list, {i_list[k]}));
    for (std::size_t p = 0; p < m; ++p) {
      if (p == k) continue;
      emit(complement_of(j_list, {j_list[k], j_list[p]}), {i_list[k], j_list[k], i_list[p], j_list[p]},
           complement_of(i_list, {i_list[k], i_list[p]}));
    }
  }
  return out;
}

inline std::uint64_t uniform_below(std::mt19937_64& engine, std::uint64_t span) {
  const std::uint64_t limit = (~std::uint64_t{0} / span) * span;
  std::uint64_t r;
  do {
    r = engine();
  } while (r >= limit);
  return r % span;
}

/// Weights in [-50, 50] plus a scaled m=3 fence functional on a random
/// choice of six nodes (n >= 6). Reaches fractional vertices of B_6 and B_7
/// often.
inline LopInstance fence_noise_instance(int n, std::uint64_t seed) {
  if (n < 6) throw std::invalid_argument("fence_noise_instance needs n >= 6");
  std::mt19937_64 engine(seed * 7919 + static_cast<std::uint64_t>(n));
  std::vector<int> nodes(static_cast<std::size_t>(n));
  for (int v = 0; v < n; ++v) nodes[static_cast<std::size_t>(v)] = v;
  for (std::size_t k = nodes.size(); k > 1; --k) std::swap(nodes[k - 1], nodes[uniform_below(engine, k)]);
  const auto weight = static_cast<std::int64_t>(uniform_below(engine, 301));
  std::vector<std::int64_t> costs(static_cast<std::size_t>(n * n), 0);
  for (int a = 0; a < n; ++a) {
    for (int b = 0; b < n; ++b) {
      if (a != b) costs[static_cast<std::size_t>(a * n + b)] = static_cast<std::int64_t>(uniform_below(engine, 101)) - 50;
    }
  }
  for (int l = 0; l < 3; ++l) {
    for (int q = 0; q < 3; ++q) {
      const int a = nodes[static_cast<std::size_t>(l)];
      const int b = nodes[static_cast<std::size_t>(3 + q)];
      costs[static_cast<std::size_t>(a * n + b)] += l == q ? weight : -weight;
    }
  }
  return LopInstance(n, costs, "fence-noise-n" + std::to_string(n) + "-s" + std::to_string(seed));
}

}  // namespace lopcut::ref
