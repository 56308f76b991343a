#include "lopcut/vertex_analysis.hpp"

#include <algorithm>
#include <functional>
#include <numeric>
#include <set>

namespace lopcut {

namespace {

const Rational kHalf(1, 2);

}  // namespace

ArcGraph::ArcGraph(int n, const VarIndex& index, std::span<const Rational> x)
    : n_(n), adj_(static_cast<std::size_t>((n + 1) * (n + 1)), 0) {
  for (int i = 1; i <= n; ++i) {
    for (int j = i + 1; j <= n; ++j) {
      const Rational& v = x[index.column(i, j)];
      if (v == Rational(1)) {
        adj_[idx(i, j)] = 1;
      } else if (v.is_zero()) {
        adj_[idx(j, i)] = 1;
      }
    }
  }
  for (int i = 1; i <= n; ++i) {
    for (int j = 1; j <= n; ++j) {
      if (adj_[idx(i, j)]) arcs_.emplace_back(i, j);
    }
  }
}

std::vector<int> ArcGraph::successors(int i) const {
  std::vector<int> out;
  for (int j = 1; j <= n_; ++j) {
    if (adj_[idx(i, j)]) out.push_back(j);
  }
  return out;
}

int ArcGraph::out_degree(int i) const {
  int d = 0;
  for (int j = 1; j <= n_; ++j) d += adj_[idx(i, j)];
  return d;
}

int ArcGraph::in_degree(int i) const {
  int d = 0;
  for (int j = 1; j <= n_; ++j) d += adj_[idx(j, i)];
  return d;
}

VertexProfile profile_point(int n, std::span<const Rational> x) {
  const VarIndex index(n);
  if (x.size() != index.size()) throw ShapeError("point dimension does not match n");
  VertexProfile p;
  p.n = n;
  p.x.assign(x.begin(), x.end());
  p.arc_graph = ArcGraph(n, index, x);

  std::vector<int> parent(static_cast<std::size_t>(n + 1));
  std::iota(parent.begin(), parent.end(), 0);
  std::function<int(int)> find = [&](int v) {
    while (parent[static_cast<std::size_t>(v)] != v) v = parent[static_cast<std::size_t>(v)] = parent[static_cast<std::size_t>(parent[static_cast<std::size_t>(v)])];
    return v;
  };
  std::vector<bool> touched(static_cast<std::size_t>(n + 1), false);
  std::set<std::int64_t> dens;
  for (int i = 1; i <= n; ++i) {
    for (int j = i + 1; j <= n; ++j) {
      const Rational& v = x[index.column(i, j)];
      if (v.is_integer()) continue;
      p.fractional_pairs.push_back({i, j, v});
      const auto den = v.denominator_i64();
      if (!den) throw ScaleError("denominator exceeds 64 bits");
      dens.insert(*den);
      touched[static_cast<std::size_t>(i)] = touched[static_cast<std::size_t>(j)] = true;
      parent[static_cast<std::size_t>(find(i))] = find(j);
    }
  }
  p.denominators.assign(dens.begin(), dens.end());

  std::vector<std::vector<int>> by_root(static_cast<std::size_t>(n + 1));
  for (int v = 1; v <= n; ++v) {
    if (touched[static_cast<std::size_t>(v)]) by_root[static_cast<std::size_t>(find(v))].push_back(v);
  }
  for (auto& comp : by_root) {
    if (!comp.empty()) p.components.push_back(std::move(comp));
  }
  std::sort(p.components.begin(), p.components.end());
  p.simple = p.components.size() <= 1;

  p.fences = detect_fences(p);
  p.chains3 = find_chains(p, 3);
  p.tau = static_cast<std::size_t>(
      std::count_if(p.chains3.begin(), p.chains3.end(), [](const OrientedChain& c) { return c.dependent; }));
  return p;
}

VertexProfile classify_vertex(const ConstraintSystem& sys, std::span<const Rational> x) {
  if (!is_vertex(sys, x)) throw PreconditionError("classify_vertex needs a vertex of the system");
  return profile_point(sys.n(), x);
}

std::vector<FenceStructure> detect_fences(const VertexProfile& profile) {
  const int n = profile.n;
  if (n < 6) return {};
  // Candidate matched pairs (a, b) oriented so that b's partners are the
  // j-side: every half-valued ordered pair.
  std::vector<std::pair<int, int>> cand;
  for (int a = 1; a <= n; ++a) {
    for (int b = 1; b <= n; ++b) {
      if (a != b && profile.value(a, b) == kHalf) cand.emplace_back(a, b);
    }
  }
  const std::size_t k = cand.size();
  std::vector<std::vector<bool>> compat(k, std::vector<bool>(k, false));
  for (std::size_t u = 0; u < k; ++u) {
    for (std::size_t v = u + 1; v < k; ++v) {
      const auto [a, b] = cand[u];
      const auto [c, d] = cand[v];
      if (a == c || a == d || b == c || b == d) continue;
      const bool ok = profile.value(a, d).is_zero() && profile.value(c, b).is_zero() &&
                      profile.value(a, c) == kHalf && profile.value(b, d) == kHalf;
      compat[u][v] = compat[v][u] = ok;
    }
  }

  std::vector<FenceStructure> fences;
  // Bron-Kerbosch with pivoting over the compatibility graph.
  std::function<void(std::vector<std::size_t>&, std::vector<std::size_t>, std::vector<std::size_t>)> expand =
      [&](std::vector<std::size_t>& r, std::vector<std::size_t> p, std::vector<std::size_t> x) {
        if (p.empty() && x.empty()) {
          if (r.size() >= 3) {
            std::vector<std::pair<int, int>> pairs;
            for (auto u : r) pairs.push_back(cand[u]);
            std::sort(pairs.begin(), pairs.end());
            FenceStructure f;
            for (auto [i, j] : pairs) {
              f.i_list.push_back(i);
              f.j_list.push_back(j);
            }
            fences.push_back(std::move(f));
          }
          return;
        }
        std::size_t pivot = p.empty() ? x.front() : p.front();
        std::size_t best = 0;
        for (auto u : p) {
          std::size_t deg = 0;
          for (auto v : p) deg += compat[u][v];
          if (deg > best) {
            best = deg;
            pivot = u;
          }
        }
        const std::vector<std::size_t> candidates = p;
        for (auto v : candidates) {
          if (compat[pivot][v]) continue;
          std::vector<std::size_t> np, nx;
          for (auto w : p) {
            if (compat[v][w]) np.push_back(w);
          }
          for (auto w : x) {
            if (compat[v][w]) nx.push_back(w);
          }
          r.push_back(v);
          expand(r, std::move(np), std::move(nx));
          r.pop_back();
          p.erase(std::find(p.begin(), p.end(), v));
          x.push_back(v);
        }
      };
  std::vector<std::size_t> all(k);
  std::iota(all.begin(), all.end(), 0);
  std::vector<std::size_t> r;
  expand(r, all, {});
  std::sort(fences.begin(), fences.end(), [](const FenceStructure& a, const FenceStructure& b) {
    return std::tie(a.i_list, a.j_list) < std::tie(b.i_list, b.j_list);
  });
  return fences;
}

bool chain_is_dependent(const VertexProfile& profile, std::span<const int> nodes) {
  std::vector<bool> in_chain(static_cast<std::size_t>(profile.n + 1), false);
  for (int v : nodes) in_chain[static_cast<std::size_t>(v)] = true;
  for (int w = 1; w <= profile.n; ++w) {
    if (in_chain[static_cast<std::size_t>(w)]) continue;
    const Rational ref = profile.value(nodes.front(), w);
    for (int v : nodes.subspan(1)) {
      if (profile.value(v, w) != ref) return true;
    }
  }
  return false;
}

std::vector<OrientedChain> find_chains(const VertexProfile& profile, std::size_t length) {
  if (length < 2 || length > 4) throw PreconditionError("chain length must be 2, 3 or 4");
  const auto& g = profile.arc_graph;
  std::vector<OrientedChain> chains;
  std::vector<int> path;
  std::vector<bool> used(static_cast<std::size_t>(profile.n + 1), false);
  std::function<void(int)> dfs = [&](int v) {
    if (path.size() == length + 1) {
      chains.push_back({path, chain_is_dependent(profile, path)});
      return;
    }
    for (int w : g.successors(v)) {
      if (used[static_cast<std::size_t>(w)]) continue;
      used[static_cast<std::size_t>(w)] = true;
      path.push_back(w);
      dfs(w);
      path.pop_back();
      used[static_cast<std::size_t>(w)] = false;
    }
  };
  for (int s = 1; s <= profile.n; ++s) {
    used[static_cast<std::size_t>(s)] = true;
    path = {s};
    dfs(s);
    used[static_cast<std::size_t>(s)] = false;
  }
  return chains;
}

bool check_no_dependent_chain4(const VertexProfile& profile) {
  const auto chains = find_chains(profile, 4);
  return std::none_of(chains.begin(), chains.end(), [](const OrientedChain& c) { return c.dependent; });
}

RationalVector lift_duplicate(const ConstraintSystem& sys, std::span<const Rational> x, int node, int copies,
                              const Permutation& copy_order) {
  const int n = sys.n();
  if (node < 1 || node > n) throw PreconditionError("node out of range");
  if (copies < 0) throw PreconditionError("negative copy count");
  if (!is_vertex(sys, x)) throw PreconditionError("lift_duplicate needs a vertex");
  if (copies == 0) return {x.begin(), x.end()};
  if (copy_order.size() != static_cast<std::size_t>(copies + 1) || !copy_order.valid()) {
    throw PreconditionError("copy_order must be a permutation of 1..copies+1");
  }
  const ArcGraph g(n, sys.columns(), x);
  if (g.in_degree(node) > 0 && g.out_degree(node) > 0) {
    throw PreconditionError("node " + std::to_string(node) + " is neither a pure source nor a pure sink");
  }

  const int big = n + copies;
  const VarIndex from(n);
  const VarIndex to(big);
  auto original = [&](int v) { return v <= n ? v : node; };
  std::vector<int> group_label(static_cast<std::size_t>(copies + 1));
  group_label[0] = node;
  for (int c = 1; c <= copies; ++c) group_label[static_cast<std::size_t>(c)] = n + c;
  std::vector<int> group_pos(static_cast<std::size_t>(big + 1), -1);
  for (std::size_t k = 0; k < copy_order.order.size(); ++k) {
    group_pos[static_cast<std::size_t>(group_label[static_cast<std::size_t>(copy_order.order[k] - 1)])] =
        static_cast<int>(k);
  }

  RationalVector lifted(to.size());
  for (int i = 1; i <= big; ++i) {
    for (int j = i + 1; j <= big; ++j) {
      const int gi = group_pos[static_cast<std::size_t>(i)];
      const int gj = group_pos[static_cast<std::size_t>(j)];
      Rational v;
      if (gi >= 0 && gj >= 0) {
        v = gi < gj ? Rational(1) : Rational(0);
      } else {
        v = from.value(x, original(i), original(j));
      }
      lifted[to.column(i, j)] = v;
    }
  }
  const auto lifted_sys = build_bn(big);
  if (!is_vertex(lifted_sys, lifted)) {
    throw InvariantViolation("duplicated point is not a vertex of B_" + std::to_string(big));
  }
  return lifted;
}

RationalVector fence_point(const std::vector<int>& i_list, const std::vector<int>& j_list, int n) {
  if (i_list.size() != j_list.size() || i_list.empty()) throw PreconditionError("fence lists must match in size");
  std::vector<int> seen(static_cast<std::size_t>(n + 1), 0);
  for (int v : i_list) {
    if (v < 1 || v > n || seen[static_cast<std::size_t>(v)]++) throw PreconditionError("fence nodes must be distinct in 1..n");
  }
  for (int v : j_list) {
    if (v < 1 || v > n || seen[static_cast<std::size_t>(v)]++) throw PreconditionError("fence nodes must be distinct in 1..n");
  }
  const VarIndex index(n);
  RationalVector x(index.size(), kHalf);
  for (std::size_t l = 0; l < i_list.size(); ++l) {
    for (std::size_t q = 0; q < j_list.size(); ++q) {
      if (l == q) continue;
      const int a = i_list[l];
      const int b = j_list[q];
      // x_ab = 0
      if (a < b) {
        x[index.column(a, b)] = Rational(0);
      } else {
        x[index.column(b, a)] = Rational(1);
      }
    }
  }
  return x;
}

}  // namespace lopcut
