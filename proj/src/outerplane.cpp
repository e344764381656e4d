#include "hatguess/outerplane.hpp"

#include <algorithm>
#include <boost/graph/adjacency_list.hpp>
#include <boost/graph/boyer_myrvold_planar_test.hpp>
#include <map>
#include <set>

#include "hatguess/error.hpp"

namespace hatguess {

namespace {

std::vector<Edge> boundary_edges(const OuterplaneBlock& b) {
  std::vector<Edge> out;
  const auto m = b.boundary.size();
  if (m == 2) out.push_back(Edge{b.boundary[0], b.boundary[1]}.normalized());
  if (m >= 3)
    for (std::size_t i = 0; i < m; ++i) out.push_back(Edge{b.boundary[i], b.boundary[(i + 1) % m]}.normalized());
  return out;
}

Violation violation(std::string kind, std::string message, VertexList witness) {
  return {std::move(kind), std::move(message), std::move(witness)};
}

}  // namespace

bool chords_cross(const Edge& a, const Edge& b, const std::vector<int>& position) {
  int a1 = position[a.u], a2 = position[a.v], b1 = position[b.u], b2 = position[b.v];
  if (a1 > a2) std::swap(a1, a2);
  if (b1 > b2) std::swap(b1, b2);
  if (a1 == b1 || a1 == b2 || a2 == b1 || a2 == b2) return false;
  const bool b1_inside = a1 < b1 && b1 < a2;
  const bool b2_inside = a1 < b2 && b2 < a2;
  return b1_inside != b2_inside;
}

std::optional<Violation> validate_outerplane(const OuterplaneGraph& og) {
  const Graph& g = og.graph;
  const int n = g.vertex_count();
  std::map<Edge, int> owner;
  std::vector<std::vector<int>> blocks_of(n);

  for (std::size_t bi = 0; bi < og.blocks.size(); ++bi) {
    const auto& block = og.blocks[bi];
    const auto m = block.boundary.size();
    if (m == 0) return violation("empty_block", "block " + std::to_string(bi) + " has no vertices", {});
    std::vector<int> position(n, -1);
    for (std::size_t i = 0; i < m; ++i) {
      Vertex v = block.boundary[i];
      if (!g.contains(v))
        return violation("vertex_out_of_range", "block " + std::to_string(bi) + " names vertex " + std::to_string(v), {v});
      if (position[v] != -1)
        return violation("repeated_boundary_vertex", "vertex repeated on the boundary of block " + std::to_string(bi), {v});
      position[v] = static_cast<int>(i);
      blocks_of[v].push_back(static_cast<int>(bi));
    }
    auto edges = boundary_edges(block);
    std::set<Edge> boundary_set(edges.begin(), edges.end());
    std::set<Edge> chord_set;
    for (const Edge& raw : block.chords) {
      Edge c = raw.normalized();
      if (!g.contains(c.u) || !g.contains(c.v) || position[c.u] == -1 || position[c.v] == -1)
        return violation("chord_outside_block", "chord not between boundary vertices of block " + std::to_string(bi),
                         {raw.u, raw.v});
      if (c.u == c.v) return violation("chord_self_loop", "chord is a loop", {c.u});
      if (boundary_set.count(c))
        return violation("chord_duplicates_boundary", "chord duplicates a boundary edge", {c.u, c.v});
      if (!chord_set.insert(c).second) return violation("duplicate_chord", "chord listed twice", {c.u, c.v});
    }
    std::vector<Edge> chords(chord_set.begin(), chord_set.end());
    for (std::size_t i = 0; i < chords.size(); ++i)
      for (std::size_t j = i + 1; j < chords.size(); ++j)
        if (chords_cross(chords[i], chords[j], position))
          return violation("crossing_chords", "chords cross in block " + std::to_string(bi),
                           {chords[i].u, chords[i].v, chords[j].u, chords[j].v});
    edges.insert(edges.end(), chords.begin(), chords.end());
    for (const Edge& e : edges) {
      if (!g.has_edge(e.u, e.v))
        return violation("edge_not_in_graph", "embedding edge missing from graph", {e.u, e.v});
      if (auto [it, fresh] = owner.emplace(e, static_cast<int>(bi)); !fresh)
        return violation("edge_in_two_blocks", "edge appears in two blocks", {e.u, e.v});
    }
  }
  for (const Edge& e : g.edges())
    if (!owner.count(e)) return violation("edge_not_embedded", "graph edge not covered by any block", {e.u, e.v});
  for (Vertex v = 0; v < n; ++v)
    if (blocks_of[v].empty()) return violation("vertex_not_embedded", "vertex lies in no block", {v});

  // Blocks pairwise share at most one vertex, and the block/vertex incidence graph is a forest.
  std::map<std::pair<int, int>, Vertex> shared;
  for (Vertex v = 0; v < n; ++v)
    for (std::size_t i = 0; i < blocks_of[v].size(); ++i)
      for (std::size_t j = i + 1; j < blocks_of[v].size(); ++j) {
        auto key = std::minmax(blocks_of[v][i], blocks_of[v][j]);
        if (auto [it, fresh] = shared.emplace(key, v); !fresh)
          return violation("blocks_share_two_vertices", "two blocks share more than one vertex", {it->second, v});
      }
  std::size_t incidences = 0;
  for (Vertex v = 0; v < n; ++v) incidences += blocks_of[v].size();
  std::vector<int> parent(n + og.blocks.size());
  for (std::size_t i = 0; i < parent.size(); ++i) parent[i] = static_cast<int>(i);
  auto find = [&](int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  for (Vertex v = 0; v < n; ++v)
    for (int b : blocks_of[v]) {
      int x = find(v), y = find(n + b);
      if (x == y) return violation("block_cycle", "blocks form a cycle through cut vertices", {v});
      parent[x] = y;
    }
  (void)incidences;
  return std::nullopt;
}

OuterplaneGraph make_outerplane(int vertex_count, std::vector<OuterplaneBlock> blocks) {
  std::set<Edge> all;
  for (const auto& b : blocks) {
    for (const Edge& e : boundary_edges(b)) all.insert(e);
    for (const Edge& e : b.chords) all.insert(e.normalized());
  }
  std::vector<Edge> edges(all.begin(), all.end());
  return {Graph(vertex_count, edges), std::move(blocks)};
}

std::vector<VertexList> inner_faces(const OuterplaneBlock& block) {
  const int m = static_cast<int>(block.boundary.size());
  if (m < 3) return {};
  std::map<Vertex, int> pos;
  for (int i = 0; i < m; ++i) pos[block.boundary[i]] = i;
  std::map<Vertex, VertexList> rotation;
  auto add = [&](Vertex a, Vertex b) {
    rotation[a].push_back(b);
    rotation[b].push_back(a);
  };
  for (int i = 0; i < m; ++i) add(block.boundary[i], block.boundary[(i + 1) % m]);
  for (const Edge& c : block.chords) add(c.u, c.v);
  for (auto& [v, nbrs] : rotation) {
    int pv = pos[v];
    std::sort(nbrs.begin(), nbrs.end(), [&](Vertex a, Vertex b) {
      return (pos[a] - pv + m) % m < (pos[b] - pv + m) % m;
    });
  }
  // From dart a->b continue to the cyclic predecessor of a in the rotation at b.
  auto next = [&](Vertex a, Vertex b) {
    const auto& rot = rotation[b];
    auto it = std::find(rot.begin(), rot.end(), a);
    return it == rot.begin() ? rot.back() : *(it - 1);
  };
  std::set<std::pair<Vertex, Vertex>> used;
  std::vector<VertexList> faces;
  const std::pair<Vertex, Vertex> outer_dart{block.boundary[1], block.boundary[0]};
  for (const auto& [a, nbrs] : rotation)
    for (Vertex b : nbrs) {
      if (used.count({a, b})) continue;
      VertexList face;
      bool outer = false;
      Vertex x = a, y = b;
      while (used.insert({x, y}).second) {
        if (std::pair{x, y} == outer_dart) outer = true;
        face.push_back(x);
        Vertex z = next(x, y);
        x = y;
        y = z;
      }
      if (outer) continue;
      auto first = std::min_element(face.begin(), face.end(), [&](Vertex p, Vertex q) { return pos[p] < pos[q]; });
      std::rotate(face.begin(), first, face.end());
      faces.push_back(std::move(face));
    }
  std::sort(faces.begin(), faces.end());
  return faces;
}

VertexList outer_hamiltonian_order(const OuterplaneGraph& og) {
  const int n = og.graph.vertex_count();
  std::vector<std::vector<int>> blocks_of(n);
  for (std::size_t bi = 0; bi < og.blocks.size(); ++bi)
    for (Vertex v : og.blocks[bi].boundary) blocks_of[v].push_back(static_cast<int>(bi));
  std::vector<char> block_done(og.blocks.size(), 0), placed(n, 0);
  VertexList order;

  auto emit = [&](auto&& self, int bi, Vertex start) -> void {
    block_done[bi] = 1;
    const auto& boundary = og.blocks[bi].boundary;
    auto it = std::find(boundary.begin(), boundary.end(), start);
    VertexList walk(it, boundary.end());
    walk.insert(walk.end(), boundary.begin(), it);
    for (Vertex y : walk) {
      if (!placed[y]) {
        placed[y] = 1;
        order.push_back(y);
      }
      for (int other : blocks_of[y])
        if (!block_done[other]) self(self, other, y);
    }
  };
  for (Vertex v = 0; v < n; ++v) {
    if (placed[v]) continue;
    if (blocks_of[v].empty()) throw ContractError("outer_hamiltonian_order: vertex in no block");
    emit(emit, blocks_of[v].front(), v);
  }
  return order;
}

Triangulation triangulate(const OuterplaneGraph& og) {
  if (auto bad = validate_outerplane(og)) throw ContractError("triangulate: invalid embedding: " + bad->message);
  const VertexList order = outer_hamiltonian_order(og);
  const int n = static_cast<int>(order.size());
  Triangulation out;
  out.polygon.boundary = order;
  if (n <= 2) {
    std::vector<Edge> edges = og.graph.edges();
    if (n == 2 && edges.empty()) out.added.push_back(Edge{order[0], order[1]}.normalized());
    out.graph = with_edges(og.graph, out.added);
    return out;
  }
  std::vector<int> position(n);
  for (int i = 0; i < n; ++i) position[order[i]] = i;
  std::set<Edge> cycle;
  for (int i = 0; i < n; ++i) cycle.insert(Edge{order[i], order[(i + 1) % n]}.normalized());
  for (const Edge& e : og.graph.edges())
    if (!cycle.count(e)) out.polygon.chords.push_back(e);
  for (std::size_t i = 0; i < out.polygon.chords.size(); ++i)
    for (std::size_t j = i + 1; j < out.polygon.chords.size(); ++j)
      if (chords_cross(out.polygon.chords[i], out.polygon.chords[j], position))
        throw ClaimViolation("outer_hamiltonian_order produced crossing chords");
  for (const auto& face : inner_faces(out.polygon))
    for (std::size_t i = 2; i + 1 < face.size(); ++i) out.polygon.chords.push_back(Edge{face[0], face[i]}.normalized());
  std::sort(out.polygon.chords.begin(), out.polygon.chords.end());
  std::vector<Edge> all(cycle.begin(), cycle.end());
  all.insert(all.end(), out.polygon.chords.begin(), out.polygon.chords.end());
  for (const Edge& e : all)
    if (!og.graph.has_edge(e.u, e.v)) out.added.push_back(e);
  std::sort(out.added.begin(), out.added.end());
  out.graph = with_edges(og.graph, out.added);
  if (out.graph.edge_count() != static_cast<std::size_t>(2 * n - 3))
    throw ClaimViolation("triangulate: result is not maximal outerplanar");
  return out;
}

bool is_outerplanar(const Graph& g) {
  using BoostGraph = boost::adjacency_list<boost::vecS, boost::vecS, boost::undirectedS,
                                           boost::property<boost::vertex_index_t, int>>;
  const int n = g.vertex_count();
  if (n <= 3) return true;
  BoostGraph bg(n + 1);
  for (const Edge& e : g.edges()) boost::add_edge(e.u, e.v, bg);
  for (Vertex v = 0; v < n; ++v) boost::add_edge(v, n, bg);
  return boost::boyer_myrvold_planarity_test(bg);
}

}  // namespace hatguess
