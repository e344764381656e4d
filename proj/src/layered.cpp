#include "hatguess/layered.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <tuple>

#include "hatguess/error.hpp"

namespace hatguess {

namespace {

Violation violation(std::string kind, std::string message, VertexList witness = {}) {
  return {std::move(kind), std::move(message), std::move(witness)};
}

std::optional<Violation> validate_level(const OuterplaneBlock& level, std::size_t index) {
  if (level.boundary.size() < 3)
    return violation("degenerate_level", "level " + std::to_string(index) + " is not 2-connected (fewer than 3 vertices)");
  VertexList local = level.boundary;
  std::sort(local.begin(), local.end());
  auto to_local = [&](Vertex v) {
    auto it = std::lower_bound(local.begin(), local.end(), v);
    return (it != local.end() && *it == v) ? static_cast<Vertex>(it - local.begin()) : -1;
  };
  OuterplaneBlock relabeled;
  for (Vertex v : level.boundary) relabeled.boundary.push_back(to_local(v));
  for (const Edge& c : level.chords) {
    Vertex a = to_local(c.u), b = to_local(c.v);
    if (a < 0 || b < 0)
      return violation("chord_outside_level", "chord leaves level " + std::to_string(index), {c.u, c.v});
    relabeled.chords.push_back({a, b});
  }
  try {
    auto og = make_outerplane(static_cast<int>(local.size()), {relabeled});
    if (auto bad = validate_outerplane(og)) {
      for (Vertex& w : bad->witness) w = local[w];
      bad->message = "level " + std::to_string(index) + ": " + bad->message;
      return bad;
    }
  } catch (const ContractError& e) {
    return violation("invalid_level", "level " + std::to_string(index) + ": " + e.what());
  }
  return std::nullopt;
}

bool same_cycle(const VertexList& a, const VertexList& b) {
  if (a.size() != b.size() || a.empty()) return false;
  auto it = std::find(b.begin(), b.end(), a[0]);
  if (it == b.end()) return false;
  VertexList rotated(it, b.end());
  rotated.insert(rotated.end(), b.begin(), it);
  return rotated == a;
}

// Non-crossing cross edges between a face and the level nested in it are those admitting a
// cyclic order along which both endpoints advance clockwise, each making at most one turn.
// Returns the edges (outer, inner) in such an order, or nullopt.
std::optional<std::vector<Edge>> find_arrangement(const std::vector<Edge>& edges, const std::vector<int>& inner_pos,
                                                  const std::vector<int>& face_pos, int ni, int nf) {
  const std::size_t m = edges.size();
  if (m <= 1) return edges;
  struct Key {
    int f, d;
    std::size_t index;
  };
  std::vector<Key> keyed(m);
  auto monotone = [&] {
    std::sort(keyed.begin(), keyed.end(), [](const Key& a, const Key& b) { return std::tie(a.f, a.d) < std::tie(b.f, b.d); });
    for (std::size_t k = 1; k < m; ++k)
      if (keyed[k - 1].d > keyed[k].d) return false;
    return true;
  };
  for (std::size_t first = 0; first < m; ++first) {
    const int sf = face_pos[edges[first].u], sd = inner_pos[edges[first].v];
    std::vector<Key> base(m);
    for (std::size_t k = 0; k < m; ++k)
      base[k] = {(face_pos[edges[k].u] - sf + nf) % nf, (inner_pos[edges[k].v] - sd + ni) % ni, k};
    // At most one of the two blocks through the first edge's endpoints wraps past the cut;
    // its wrapped members are a suffix in the other coordinate.
    for (int wrap_side = 0; wrap_side < 3; ++wrap_side) {
      const int limit = wrap_side == 0 ? 1 : (wrap_side == 1 ? nf : ni);
      for (int threshold = 1; threshold <= limit; ++threshold) {
        keyed = base;
        for (auto& key : keyed) {
          if (key.index == first) continue;
          if (wrap_side == 1 && key.d == 0 && key.f >= threshold) key.d = ni;
          if (wrap_side == 2 && key.f == 0 && key.d >= threshold) key.f = nf;
        }
        if (monotone()) {
          std::vector<Edge> out;
          for (const auto& key : keyed) out.push_back(edges[key.index]);
          return out;
        }
      }
    }
  }
  return std::nullopt;
}

}  // namespace

Graph layered_graph(const LayeredPlanarGraph& lp) {
  std::set<Edge> all;
  for (const auto& level : lp.levels) {
    const auto m = level.boundary.size();
    if (m == 2) all.insert(Edge{level.boundary[0], level.boundary[1]}.normalized());
    if (m >= 3)
      for (std::size_t i = 0; i < m; ++i) all.insert(Edge{level.boundary[i], level.boundary[(i + 1) % m]}.normalized());
    for (const Edge& c : level.chords) all.insert(c.normalized());
  }
  for (const Edge& e : lp.cross_edges) all.insert(e.normalized());
  std::vector<Edge> edges(all.begin(), all.end());
  return Graph(lp.vertex_count, edges);
}

std::optional<Violation> validate_layered(const LayeredPlanarGraph& lp) {
  const int n = lp.vertex_count;
  if (lp.levels.empty()) return violation("no_levels", "layered graph has no levels");
  std::vector<int> level_of(std::max(n, 0), -1);
  for (std::size_t i = 0; i < lp.levels.size(); ++i) {
    for (Vertex v : lp.levels[i].boundary) {
      if (v < 0 || v >= n) return violation("vertex_out_of_range", "level vertex out of range", {v});
      if (level_of[v] != -1) return violation("vertex_in_two_levels", "vertex listed in two levels", {v});
      level_of[v] = static_cast<int>(i);
    }
    if (auto bad = validate_level(lp.levels[i], i)) return bad;
  }
  for (Vertex v = 0; v < n; ++v)
    if (level_of[v] == -1) return violation("vertex_in_no_level", "vertex belongs to no level", {v});

  if (lp.nesting_faces.size() != lp.levels.size())
    return violation("nesting_faces_size", "need one nesting face entry per level (first entry empty)");
  std::set<Edge> seen;
  for (const Edge& e : lp.cross_edges) {
    if (e.u < 0 || e.u >= n || e.v < 0 || e.v >= n)
      return violation("vertex_out_of_range", "cross edge endpoint out of range", {e.u, e.v});
    if (std::abs(level_of[e.u] - level_of[e.v]) != 1)
      return violation("cross_edge_skips_level", "cross edge does not join consecutive levels", {e.u, e.v});
    if (!seen.insert(e.normalized()).second) return violation("duplicate_cross_edge", "cross edge listed twice", {e.u, e.v});
  }
  for (std::size_t i = 1; i < lp.levels.size(); ++i) {
    const VertexList& face = lp.nesting_faces[i];
    bool is_face = false;
    for (const auto& f : inner_faces(lp.levels[i - 1])) is_face = is_face || same_cycle(face, f);
    if (!is_face)
      return violation("nesting_face_not_a_face", "nesting face of level " + std::to_string(i) +
                                                      " is not an interior face of the previous level", face);
    std::vector<int> face_pos(n, -1), inner_pos(n, -1);
    for (std::size_t k = 0; k < face.size(); ++k) face_pos[face[k]] = static_cast<int>(k);
    const auto& inner = lp.levels[i].boundary;
    for (std::size_t k = 0; k < inner.size(); ++k) inner_pos[inner[k]] = static_cast<int>(k);
    std::vector<Edge> edges;
    for (const Edge& e : lp.cross_edges) {
      Edge oriented = level_of[e.u] < level_of[e.v] ? e : Edge{e.v, e.u};
      if (level_of[oriented.v] != static_cast<int>(i)) continue;
      if (face_pos[oriented.u] == -1)
        return violation("cross_edge_leaves_face", "cross edge reaches a vertex off the nesting face",
                         {oriented.u, oriented.v});
      edges.push_back(oriented);
    }
    if (!find_arrangement(edges, inner_pos, face_pos, static_cast<int>(inner.size()), static_cast<int>(face.size())))
      return violation("crossing_cross_edges", "cross edges into level " + std::to_string(i) + " cross");
  }
  return std::nullopt;
}

LayeredStructure analyze_layered(const LayeredPlanarGraph& lp) {
  if (auto bad = validate_layered(lp)) throw ContractError("invalid layered planar graph: " + bad->message);
  const int n = lp.vertex_count;
  LayeredStructure out;
  out.graph = layered_graph(lp);
  out.level_of.assign(n, -1);
  out.parents.assign(n, {});
  out.children.assign(n, {});
  for (std::size_t i = 0; i < lp.levels.size(); ++i)
    for (Vertex v : lp.levels[i].boundary) out.level_of[v] = static_cast<int>(i);

  for (std::size_t i = 1; i < lp.levels.size(); ++i) {
    const VertexList& face = lp.nesting_faces[i];
    const auto& inner = lp.levels[i].boundary;
    std::vector<int> face_pos(n, -1), inner_pos(n, -1);
    for (std::size_t k = 0; k < face.size(); ++k) face_pos[face[k]] = static_cast<int>(k);
    for (std::size_t k = 0; k < inner.size(); ++k) inner_pos[inner[k]] = static_cast<int>(k);
    std::vector<Edge> edges;
    for (const Edge& e : lp.cross_edges) {
      Edge oriented = out.level_of[e.u] < out.level_of[e.v] ? e : Edge{e.v, e.u};
      if (out.level_of[oriented.v] == static_cast<int>(i)) edges.push_back(oriented);
    }
    const auto ordered = *find_arrangement(edges, inner_pos, face_pos, static_cast<int>(inner.size()),
                                           static_cast<int>(face.size()));
    // The edges at one vertex are consecutive in the cyclic order; a vertex whose run
    // straddles the start of the linear sequence is rotated back into one piece.
    std::map<Vertex, std::vector<std::size_t>> at;
    for (std::size_t k = 0; k < ordered.size(); ++k) {
      at[ordered[k].u].push_back(k);
      at[ordered[k].v].push_back(k);
    }
    for (auto& [x, idx] : at) {
      for (std::size_t j = 0; j + 1 < idx.size(); ++j)
        if (idx[j + 1] - idx[j] > 1) {
          std::rotate(idx.begin(), idx.begin() + j + 1, idx.end());
          break;
        }
      auto& list = out.level_of[x] == static_cast<int>(i) ? out.parents[x] : out.children[x];
      for (std::size_t k : idx) list.push_back(out.level_of[x] == static_cast<int>(i) ? ordered[k].u : ordered[k].v);
    }
  }
  return out;
}

}  // namespace hatguess
