#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "lopcut/exact_lp.hpp"

namespace lopcut {

/// Digraph of the integral pairs of a point: arc i -> j iff x_ij == 1.
/// Pairs with a fractional value carry no arc.
class ArcGraph {
 public:
  ArcGraph() = default;
  ArcGraph(int n, const VarIndex& index, std::span<const Rational> x);

  int n() const noexcept { return n_; }
  bool has_arc(int i, int j) const { return adj_[idx(i, j)] != 0; }
  const std::vector<std::pair<int, int>>& arcs() const noexcept { return arcs_; }
  std::vector<int> successors(int i) const;
  int out_degree(int i) const;
  int in_degree(int i) const;

 private:
  std::size_t idx(int i, int j) const { return static_cast<std::size_t>(i * (n_ + 1) + j); }
  int n_ = 0;
  std::vector<char> adj_;
  std::vector<std::pair<int, int>> arcs_;
};

/// Directed path v0 -> v1 -> ... -> vL over arcs of an ArcGraph.
struct OrientedChain {
  std::vector<int> nodes;
  bool dependent = false;

  std::size_t length() const noexcept { return nodes.empty() ? 0 : nodes.size() - 1; }
  friend bool operator==(const OrientedChain&, const OrientedChain&) = default;
};

/// Nodes i_1..i_m and j_1..j_m with x(i_l, j_q) = 0 for l != q and every
/// other pair among the 2m nodes at 1/2.
struct FenceStructure {
  std::vector<int> i_list;
  std::vector<int> j_list;

  std::size_t m() const noexcept { return i_list.size(); }
  friend bool operator==(const FenceStructure&, const FenceStructure&) = default;
};

/// A pair i < j whose value x_ij is not integral.
struct FractionalPair {
  int i;
  int j;
  Rational value;

  friend bool operator==(const FractionalPair&, const FractionalPair&) = default;
};

struct VertexProfile {
  int n = 0;
  RationalVector x;
  ArcGraph arc_graph;
  std::vector<FractionalPair> fractional_pairs;
  std::vector<std::int64_t> denominators;  // sorted, distinct
  std::vector<std::vector<int>> components;
  std::vector<FenceStructure> fences;
  std::vector<OrientedChain> chains3;
  std::size_t tau = 0;
  bool simple = true;

  bool integral() const noexcept { return fractional_pairs.empty(); }
  std::int64_t max_denominator() const noexcept { return denominators.empty() ? 1 : denominators.back(); }
  /// x_ij for any ordered pair i != j.
  Rational value(int i, int j) const { return VarIndex(n).value(x, i, j); }
};

/// Profile of an arbitrary point of [0,1]^dim (no vertex check).
VertexProfile profile_point(int n, std::span<const Rational> x);

/// Profile of a vertex of `sys`; PreconditionError if x is not a vertex.
VertexProfile classify_vertex(const ConstraintSystem& sys, std::span<const Rational> x);

/// All maximal fence families of size m >= 3 (exact 1/2 patterns only),
/// each reported with i_list ascending.
std::vector<FenceStructure> detect_fences(const VertexProfile& profile);

/// A set of chain nodes is independent iff every node outside the set
/// relates to all of them with one and the same value, so that the chain
/// can be exchanged without changing the rest of the graph. Otherwise it
/// is dependent.
bool chain_is_dependent(const VertexProfile& profile, std::span<const int> nodes);

/// All simple directed paths with exactly `length` arcs (2..4), listed in
/// lexicographic node order.
std::vector<OrientedChain> find_chains(const VertexProfile& profile, std::size_t length);

bool check_no_dependent_chain4(const VertexProfile& profile);

/// Replicates `node` `copies` times. Copies get the labels n+1..n+copies and
/// the same value as `node` against every other original node. Within the
/// group, `copy_order` (a permutation of 1..copies+1 where 1 denotes the
/// original and k+1 the k-th copy) fixes a total order. The node must be a
/// source of all its incident arcs or a sink of all of them.
///
/// Throws PreconditionError on a bad node/order or a non-vertex input and
/// InvariantViolation if the lifted point is not a vertex of B_{n+copies}.
RationalVector lift_duplicate(const ConstraintSystem& sys, std::span<const Rational> x, int node, int copies,
                              const Permutation& copy_order);

/// The fence point: x(i_l, j_q) = 0 for l != q, every other pair 1/2.
RationalVector fence_point(const std::vector<int>& i_list, const std::vector<int>& j_list, int n);

}  // namespace lopcut
