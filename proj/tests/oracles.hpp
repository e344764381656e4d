#pragma once

// Brute-force references used by the tests. Deliberately naive and independent of the
// library's algorithms; only Graph and the game types are shared.

#include <algorithm>
#include <cstdint>
#include <functional>
#include <numeric>
#include <set>
#include <vector>

#include "hatguess/game.hpp"
#include "hatguess/graph.hpp"

namespace oracle {

using hatguess::Edge;
using hatguess::Graph;
using hatguess::Vertex;
using hatguess::VertexList;

inline Graph graph(int n, std::initializer_list<std::pair<int, int>> es) {
  std::vector<Edge> edges;
  for (auto [u, v] : es) edges.push_back({u, v});
  return Graph(n, edges);
}

// Chords (a,b), (c,d) of a circle cross iff exactly one of c, d lies strictly between a and b.
inline bool crossing(int a, int b, int c, int d) {
  if (a > b) std::swap(a, b);
  if (a == c || a == d || b == c || b == d) return false;
  const bool c_in = a < c && c < b, d_in = a < d && d < b;
  return c_in != d_in;
}

// Outerplanar iff the vertices can be placed on a circle with no two edges crossing.
inline bool outerplanar(const Graph& g) {
  const int n = g.vertex_count();
  if (n <= 3) return true;
  std::vector<int> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  const auto edges = g.edges();
  std::vector<int> pos(n);
  do {
    if (perm[0] != 0) break;  // rotations are equivalent
    for (int i = 0; i < n; ++i) pos[perm[i]] = i;
    bool ok = true;
    for (std::size_t i = 0; i < edges.size() && ok; ++i)
      for (std::size_t j = i + 1; j < edges.size() && ok; ++j)
        ok = !crossing(pos[edges[i].u], pos[edges[i].v], pos[edges[j].u], pos[edges[j].v]);
    if (ok) return true;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return false;
}

// All simple cycles as edge-index sets (each once).
inline std::vector<std::vector<int>> cycle_edge_sets(const Graph& g) {
  const int n = g.vertex_count();
  const auto edges = g.edges();
  auto index = [&](Vertex a, Vertex b) {
    Edge e = Edge{a, b}.normalized();
    return static_cast<int>(std::lower_bound(edges.begin(), edges.end(), e) - edges.begin());
  };
  std::set<std::vector<int>> seen;
  std::vector<Vertex> path;
  std::vector<char> on(n, 0);
  std::function<void(Vertex, Vertex)> dfs = [&](Vertex start, Vertex x) {
    for (Vertex y : g.neighbors(x)) {
      if (y == start && path.size() >= 3) {
        std::vector<int> ids;
        for (std::size_t i = 0; i + 1 < path.size(); ++i) ids.push_back(index(path[i], path[i + 1]));
        ids.push_back(index(x, start));
        std::sort(ids.begin(), ids.end());
        seen.insert(ids);
      }
      if (y > start && !on[y]) {
        on[y] = 1;
        path.push_back(y);
        dfs(start, y);
        path.pop_back();
        on[y] = 0;
      }
    }
  };
  for (Vertex s = 0; s < n; ++s) {
    path = {s};
    on[s] = 1;
    dfs(s, s);
    on[s] = 0;
  }
  return {seen.begin(), seen.end()};
}

// Every simple cycle once, as a vertex sequence starting at its least vertex with
// second vertex < last vertex.
inline std::vector<VertexList> simple_cycles(const Graph& g) {
  const int n = g.vertex_count();
  std::vector<VertexList> out;
  VertexList path;
  std::vector<char> on(n, 0);
  std::function<void(Vertex)> dfs = [&](Vertex x) {
    for (Vertex y : g.neighbors(x)) {
      if (y == path[0] && path.size() >= 3 && path[1] < path.back()) out.push_back(path);
      if (y > path[0] && !on[y]) {
        on[y] = 1;
        path.push_back(y);
        dfs(y);
        path.pop_back();
        on[y] = 0;
      }
    }
  };
  for (Vertex s = 0; s < n; ++s) {
    path = {s};
    on[s] = 1;
    dfs(s);
    on[s] = 0;
  }
  return out;
}

// Blocks as vertex sets: edges on a common cycle share a block; bridges are their own block.
inline std::vector<VertexList> block_sets(const Graph& g) {
  const auto edges = g.edges();
  const int m = static_cast<int>(edges.size());
  std::vector<int> parent(m);
  std::iota(parent.begin(), parent.end(), 0);
  std::function<int(int)> find = [&](int x) { return parent[x] == x ? x : parent[x] = find(parent[x]); };
  for (const auto& cyc : cycle_edge_sets(g))
    for (int e : cyc) parent[find(e)] = find(cyc[0]);
  std::vector<std::set<Vertex>> by_root(m);
  for (int i = 0; i < m; ++i) {
    by_root[find(i)].insert(edges[i].u);
    by_root[find(i)].insert(edges[i].v);
  }
  std::vector<VertexList> out;
  for (const auto& s : by_root)
    if (!s.empty()) out.emplace_back(s.begin(), s.end());
  return out;
}

// Subgraph of a petal graph: some stem v and an order of the rest with all non-stem edges consecutive.
inline bool petal_subgraph(const Graph& g, const VertexList& block) {
  for (Vertex stem : block) {
    VertexList rest;
    for (Vertex x : block)
      if (x != stem) rest.push_back(x);
    std::sort(rest.begin(), rest.end());
    do {
      bool ok = true;
      for (std::size_t i = 0; i < rest.size() && ok; ++i)
        for (std::size_t j = i + 2; j < rest.size() && ok; ++j) ok = !g.has_edge(rest[i], rest[j]);
      if (ok) return true;
    } while (std::next_permutation(rest.begin(), rest.end()));
  }
  return block.size() <= 1;
}

inline bool petunia(const Graph& g) {
  for (const auto& b : block_sets(g))
    if (!petal_subgraph(g, b)) return false;
  return true;
}

// Does anyone guess right? Independent of the library's context encoding: the strategy is a
// plain function of (vertex, neighbour colours in ascending neighbour order).
using GuessFn = std::function<std::vector<int>(Vertex, const std::vector<int>&)>;

inline bool wins_everywhere(const Graph& g, int k, const GuessFn& guess) {
  const int n = g.vertex_count();
  std::vector<int> a(n, 1);
  while (true) {
    bool someone = false;
    for (Vertex v = 0; v < n && !someone; ++v) {
      std::vector<int> seen;
      for (Vertex w : g.neighbors(v)) seen.push_back(a[w]);
      const auto gs = guess(v, seen);
      someone = std::find(gs.begin(), gs.end(), a[v]) != gs.end();
    }
    if (!someone) return false;
    int i = n - 1;
    while (i >= 0 && a[i] == k) a[i--] = 1;
    if (i < 0) return true;
    ++a[i];
  }
}

// Library table -> plain function (positions = colour - 1 for uniform lists 1..k).
inline GuessFn from_table(const Graph& g, int k, const hatguess::StrategyProfile& p) {
  return [&g, k, p](Vertex v, const std::vector<int>& seen) {
    std::uint64_t ctx = 0;
    for (int c : seen) ctx = ctx * k + static_cast<std::uint64_t>(c - 1);
    (void)g;
    return p.table[v][ctx];
  };
}

// Exact single-guess game on a tree-like instance where one vertex best-responds: enumerate
// every strategy of the other vertices, then `responder` wins iff for every context at most one
// of its colours is left uncovered. Feasible only for tiny instances.
inline bool players_win_best_response(const Graph& g, int k, Vertex responder) {
  const int n = g.vertex_count();
  std::vector<Vertex> others;
  for (Vertex v = 0; v < n; ++v)
    if (v != responder) others.push_back(v);
  std::vector<int> ctx_count(n, 1);
  for (Vertex v = 0; v < n; ++v)
    for (std::size_t i = 0; i < g.neighbors(v).size(); ++i) ctx_count[v] *= k;
  std::vector<std::vector<int>> table(n);
  for (Vertex v : others) table[v].assign(ctx_count[v], 1);
  auto ctx_of = [&](Vertex v, const std::vector<int>& a) {
    int ctx = 0;
    for (Vertex w : g.neighbors(v)) ctx = ctx * k + (a[w] - 1);
    return ctx;
  };
  auto responder_ok = [&] {
    // every colouring of the other vertices is a context for those not adjacent too, so
    // enumerate full assignments grouped by the responder's view
    std::vector<int> a(n, 1);
    std::vector<std::vector<int>> uncovered(ctx_count[responder]);
    while (true) {
      bool someone = false;
      for (Vertex v : others) someone = someone || table[v][ctx_of(v, a)] == a[v];
      if (!someone) {
        auto& u = uncovered[ctx_of(responder, a)];
        if (std::find(u.begin(), u.end(), a[responder]) == u.end()) u.push_back(a[responder]);
        if (u.size() > 1) return false;
      }
      int i = n - 1;
      while (i >= 0 && a[i] == k) a[i--] = 1;
      if (i < 0) return true;
      ++a[i];
    }
  };
  // odometer over all tables of the other vertices
  while (true) {
    if (responder_ok()) return true;
    bool carried = true;
    for (auto vit = others.rbegin(); vit != others.rend() && carried; ++vit) {
      auto& t = table[*vit];
      for (int c = static_cast<int>(t.size()) - 1; c >= 0; --c) {
        if (t[c] < k) {
          ++t[c];
          carried = false;
          break;
        }
        t[c] = 1;
      }
    }
    if (carried) return false;
  }
}

}  // namespace oracle
