#include "hatguess/rotation.hpp"

#include <algorithm>
#include <functional>
#include <numeric>
#include <map>
#include <set>
#include <sstream>

#include "hatguess/error.hpp"

namespace hatguess {

namespace {

int neighbor_index(const Graph& g, Vertex u, Vertex v) {
  auto nb = g.neighbors(u);
  auto it = std::lower_bound(nb.begin(), nb.end(), v);
  if (it == nb.end() || *it != v) return -1;
  return static_cast<int>(it - nb.begin());
}

std::vector<int> dual_labels(const RotationSystem& rs, const FaceStructure& fs, const std::set<Edge>& removed) {
  const int f = static_cast<int>(fs.faces.size());
  std::vector<int> parent(f);
  std::iota(parent.begin(), parent.end(), 0);
  std::function<int(int)> find = [&](int x) { return parent[x] == x ? x : parent[x] = find(parent[x]); };
  const Graph& g = rs.graph;
  for (Vertex u = 0; u < g.vertex_count(); ++u) {
    auto nb = g.neighbors(u);
    for (std::size_t i = 0; i < nb.size(); ++i) {
      Vertex v = nb[i];
      if (v < u || removed.count({u, v})) continue;
      int a = fs.face_of[u][i], b = fs.face_of[v][neighbor_index(g, v, u)];
      parent[find(a)] = find(b);
    }
  }
  std::vector<int> label(f);
  for (int i = 0; i < f; ++i) label[i] = find(i);
  return label;
}

std::string show(const VertexList& vs) {
  std::ostringstream os;
  for (std::size_t i = 0; i < vs.size(); ++i) os << (i ? "," : "") << vs[i];
  return os.str();
}

}  // namespace

RotationSystem make_rotation_system(Graph g, std::vector<VertexList> rotation) {
  if (static_cast<int>(rotation.size()) != g.vertex_count())
    throw ContractError("rotation system needs one cyclic order per vertex");
  for (Vertex v = 0; v < g.vertex_count(); ++v) {
    VertexList sorted = rotation[v];
    std::sort(sorted.begin(), sorted.end());
    auto nb = g.neighbors(v);
    if (!std::equal(sorted.begin(), sorted.end(), nb.begin(), nb.end()))
      throw ContractError("rotation at vertex " + std::to_string(v) + " is not a permutation of its neighbours");
  }
  return RotationSystem{std::move(g), std::move(rotation)};
}

RotationSystem ascending_rotation(const Graph& g) {
  std::vector<VertexList> rot(g.vertex_count());
  for (Vertex v = 0; v < g.vertex_count(); ++v) rot[v].assign(g.neighbors(v).begin(), g.neighbors(v).end());
  return RotationSystem{g, std::move(rot)};
}

FaceStructure trace_faces(const RotationSystem& rs) {
  const Graph& g = rs.graph;
  const int n = g.vertex_count();
  // successor in rot(v) of each neighbour, indexed by the neighbour's sorted position
  std::vector<std::vector<Vertex>> next_after(n);
  for (Vertex v = 0; v < n; ++v) {
    const auto& rot = rs.rotation[v];
    next_after[v].assign(rot.size(), -1);
    for (std::size_t i = 0; i < rot.size(); ++i) next_after[v][neighbor_index(g, v, rot[i])] = rot[(i + 1) % rot.size()];
  }
  FaceStructure fs;
  fs.face_of.resize(n);
  for (Vertex v = 0; v < n; ++v) fs.face_of[v].assign(g.degree(v), -1);
  for (Vertex u = 0; u < n; ++u)
    for (std::size_t i = 0; i < fs.face_of[u].size(); ++i) {
      if (fs.face_of[u][i] != -1) continue;
      const int id = static_cast<int>(fs.faces.size());
      std::vector<Dart> face;
      Dart d{u, g.neighbors(u)[i]};
      while (true) {
        int idx = neighbor_index(g, d.tail, d.head);
        if (fs.face_of[d.tail][idx] != -1) break;
        fs.face_of[d.tail][idx] = id;
        face.push_back(d);
        d = Dart{d.head, next_after[d.head][neighbor_index(g, d.head, d.tail)]};
      }
      if (face.front() != d) throw ClaimViolation("face tracing did not close up");
      fs.faces.push_back(std::move(face));
    }
  return fs;
}

int euler_characteristic(const RotationSystem& rs) {
  return rs.graph.vertex_count() - static_cast<int>(rs.graph.edge_count()) +
         static_cast<int>(trace_faces(rs).faces.size());
}

int orientable_genus(const RotationSystem& rs) {
  if (!is_connected(rs.graph)) throw ContractError("genus is defined here for connected embeddings only");
  return (2 - euler_characteristic(rs)) / 2;
}

bool is_separating_cycle(const RotationSystem& rs, const VertexList& cycle) {
  const Graph& g = rs.graph;
  if (cycle.size() < 3) throw ContractError("a cycle needs at least three vertices");
  std::set<Vertex> distinct(cycle.begin(), cycle.end());
  if (distinct.size() != cycle.size()) throw ContractError("cycle repeats a vertex: " + show(cycle));
  std::set<Edge> removed;
  for (std::size_t i = 0; i < cycle.size(); ++i) {
    Vertex a = cycle[i], b = cycle[(i + 1) % cycle.size()];
    if (!g.contains(a) || !g.contains(b) || !g.has_edge(a, b))
      throw ContractError("cycle uses a non-edge: " + show(cycle));
    removed.insert(Edge{a, b}.normalized());
  }
  const FaceStructure fs = trace_faces(rs);
  auto label = dual_labels(rs, fs, removed);
  for (int l : label)
    if (l != label[0]) return true;
  return false;
}

std::optional<VertexList> shortest_nonseparating_cycle(const RotationSystem& rs, SearchLimits limits) {
  const Graph& g = rs.graph;
  const int n = g.vertex_count();
  const FaceStructure fs = trace_faces(rs);
  std::uint64_t nodes = 0;
  for (int len = 3; len <= n; ++len) {
    std::optional<VertexList> found;
    VertexList path;
    std::vector<char> used(n, 0);
    // cycles rooted at their least vertex, second vertex < last vertex
    std::function<void()> extend = [&] {
      if (found) return;
      if (++nodes > limits.max_nodes) throw BudgetExceeded("cycle enumeration exceeded node budget");
      const Vertex root = path.front(), last = path.back();
      if (static_cast<int>(path.size()) == len) {
        if (!g.has_edge(last, root) || path[1] > last) return;
        std::set<Edge> removed;
        for (int i = 0; i < len; ++i) removed.insert(Edge{path[i], path[(i + 1) % len]}.normalized());
        auto label = dual_labels(rs, fs, removed);
        if (std::all_of(label.begin(), label.end(), [&](int l) { return l == label[0]; })) found = path;
        return;
      }
      for (Vertex w : g.neighbors(last)) {
        if (w <= root || used[w]) continue;
        used[w] = 1;
        path.push_back(w);
        extend();
        path.pop_back();
        used[w] = 0;
        if (found) return;
      }
    };
    for (Vertex r = 0; r < n && !found; ++r) {
      path = {r};
      used[r] = 1;
      extend();
      used[r] = 0;
    }
    if (found) return found;
  }
  return std::nullopt;
}

PeelResult genus_peel(const RotationSystem& rs, SearchLimits limits) {
  auto cycle = shortest_nonseparating_cycle(rs, limits);
  if (!cycle) throw ContractError("no nonseparating cycle: the embedding has genus 0");
  const Graph& g = rs.graph;
  PeelResult out;
  out.cycle = *cycle;
  std::vector<char> on(g.vertex_count(), 0);
  for (Vertex v : out.cycle) on[v] = 1;
  out.max_cycle_neighbors = 0;
  Vertex worst = -1;
  for (Vertex v = 0; v < g.vertex_count(); ++v) {
    if (on[v]) {
      out.b.push_back(v);
      continue;
    }
    out.a.push_back(v);
    int c = 0;
    for (Vertex w : g.neighbors(v)) c += on[w];
    if (c > out.max_cycle_neighbors) out.max_cycle_neighbors = c, worst = v;
  }
  out.d_check = out.max_cycle_neighbors <= 5;
  if (!out.d_check)
    throw ClaimViolation("vertex " + std::to_string(worst) + " has " + std::to_string(out.max_cycle_neighbors) +
                         " neighbours on shortest nonseparating cycle " + show(out.cycle));
  return out;
}

std::uint64_t check_three_path_property(const RotationSystem& rs, SearchLimits limits) {
  const Graph& g = rs.graph;
  const int n = g.vertex_count();
  if (n > 64) throw ContractError("three-path check supports at most 64 vertices");
  const FaceStructure fs = trace_faces(rs);
  std::uint64_t nodes = 0, checked = 0;
  auto separating = [&](const VertexList& p, const VertexList& q) {
    // p and q both run x -> y; the cycle is p followed by q reversed
    std::set<Edge> removed;
    for (std::size_t i = 0; i + 1 < p.size(); ++i) removed.insert(Edge{p[i], p[i + 1]}.normalized());
    for (std::size_t i = 0; i + 1 < q.size(); ++i) removed.insert(Edge{q[i], q[i + 1]}.normalized());
    auto label = dual_labels(rs, fs, removed);
    return std::any_of(label.begin(), label.end(), [&](int l) { return l != label[0]; });
  };
  for (Vertex x = 0; x < n; ++x)
    for (Vertex y = x + 1; y < n; ++y) {
      std::vector<VertexList> paths;
      VertexList path{x};
      std::vector<char> used(n, 0);
      used[x] = 1;
      std::function<void()> walk = [&] {
        if (++nodes > limits.max_nodes) throw BudgetExceeded("path enumeration exceeded node budget");
        for (Vertex w : g.neighbors(path.back())) {
          if (used[w]) continue;
          path.push_back(w);
          if (w == y) {
            paths.push_back(path);
          } else {
            used[w] = 1;
            walk();
            used[w] = 0;
          }
          path.pop_back();
        }
      };
      walk();
      std::vector<std::uint64_t> interior(paths.size(), 0);
      for (std::size_t i = 0; i < paths.size(); ++i)
        for (std::size_t j = 1; j + 1 < paths[i].size(); ++j) interior[i] |= std::uint64_t{1} << paths[i][j];
      auto disjoint = [&](std::size_t i, std::size_t j) {
        // the single edge xy may appear in at most one path; interiors must not meet
        return (interior[i] & interior[j]) == 0 && !(paths[i].size() == 2 && paths[j].size() == 2);
      };
      std::map<std::pair<std::size_t, std::size_t>, bool> memo;
      auto sep = [&](std::size_t i, std::size_t j) {
        auto key = std::minmax(i, j);
        auto it = memo.find(key);
        if (it != memo.end()) return it->second;
        return memo[key] = separating(paths[i], paths[j]);
      };
      for (std::size_t p1 = 0; p1 < paths.size(); ++p1)
        for (std::size_t p2 = 0; p2 < paths.size(); ++p2) {
          if (p2 == p1 || !disjoint(p1, p2) || !sep(p1, p2)) continue;
          for (std::size_t p3 = p2 + 1; p3 < paths.size(); ++p3) {
            if (p3 == p1 || !disjoint(p1, p3) || !disjoint(p2, p3)) continue;
            if (++nodes > limits.max_nodes) throw BudgetExceeded("path triple enumeration exceeded node budget");
            if (!sep(p1, p3)) continue;
            ++checked;
            if (!sep(p2, p3))
              throw ClaimViolation("three-path property fails for paths " + show(paths[p1]) + " | " + show(paths[p2]) +
                                   " | " + show(paths[p3]));
          }
        }
    }
  return checked;
}

}  // namespace hatguess
