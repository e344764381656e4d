#include "hatguess/graph.hpp"

#include <algorithm>
#include <numeric>
#include <set>

#include "hatguess/error.hpp"

namespace hatguess {

Graph::Graph(int vertex_count) {
  if (vertex_count < 0) throw ContractError("negative vertex count");
  adjacency_.resize(vertex_count);
}

Graph::Graph(int vertex_count, std::span<const Edge> edges) : Graph(vertex_count) {
  for (const Edge& e : edges) {
    if (!contains(e.u) || !contains(e.v))
      throw ContractError("edge {" + std::to_string(e.u) + "," + std::to_string(e.v) +
                          "} has an endpoint outside [0," + std::to_string(vertex_count) + ")");
    if (e.u == e.v) throw ContractError("self-loop at vertex " + std::to_string(e.u));
    adjacency_[e.u].push_back(e.v);
    adjacency_[e.v].push_back(e.u);
  }
  for (Vertex v = 0; v < vertex_count; ++v) {
    auto& adj = adjacency_[v];
    std::sort(adj.begin(), adj.end());
    if (auto it = std::adjacent_find(adj.begin(), adj.end()); it != adj.end())
      throw ContractError("parallel edge {" + std::to_string(v) + "," + std::to_string(*it) + "}");
  }
  edge_count_ = edges.size();
}

int Graph::max_degree() const {
  int best = 0;
  for (const auto& adj : adjacency_) best = std::max(best, static_cast<int>(adj.size()));
  return best;
}

bool Graph::has_edge(Vertex u, Vertex v) const {
  if (!contains(u) || !contains(v)) return false;
  const auto& adj = adjacency_[u];
  return std::binary_search(adj.begin(), adj.end(), v);
}

std::vector<Edge> Graph::edges() const {
  std::vector<Edge> out;
  out.reserve(edge_count_);
  for (Vertex u = 0; u < vertex_count(); ++u)
    for (Vertex v : adjacency_[u])
      if (u < v) out.push_back({u, v});
  return out;
}

InducedSubgraph induced_subgraph(const Graph& g, std::span<const Vertex> vertices) {
  std::vector<int> local(g.vertex_count(), -1);
  for (std::size_t i = 0; i < vertices.size(); ++i) {
    if (!g.contains(vertices[i])) throw ContractError("induced_subgraph: vertex out of range");
    if (local[vertices[i]] != -1) throw ContractError("induced_subgraph: repeated vertex");
    local[vertices[i]] = static_cast<int>(i);
  }
  std::vector<Edge> edges;
  for (std::size_t i = 0; i < vertices.size(); ++i)
    for (Vertex w : g.neighbors(vertices[i]))
      if (local[w] > static_cast<int>(i)) edges.push_back({static_cast<int>(i), local[w]});
  return {Graph(static_cast<int>(vertices.size()), edges),
          VertexList(vertices.begin(), vertices.end())};
}

Graph with_edges(const Graph& g, std::span<const Edge> extra) {
  std::set<Edge> all;
  for (const Edge& e : g.edges()) all.insert(e);
  for (const Edge& e : extra) all.insert(e.normalized());
  std::vector<Edge> list(all.begin(), all.end());
  return Graph(g.vertex_count(), list);
}

std::vector<VertexList> connected_components(const Graph& g) {
  std::vector<int> seen(g.vertex_count(), 0);
  std::vector<VertexList> out;
  for (Vertex s = 0; s < g.vertex_count(); ++s) {
    if (seen[s]) continue;
    VertexList comp{s};
    seen[s] = 1;
    for (std::size_t head = 0; head < comp.size(); ++head)
      for (Vertex w : g.neighbors(comp[head]))
        if (!seen[w]) {
          seen[w] = 1;
          comp.push_back(w);
        }
    std::sort(comp.begin(), comp.end());
    out.push_back(std::move(comp));
  }
  return out;
}

bool is_connected(const Graph& g) { return connected_components(g).size() <= 1; }

bool is_acyclic(const Graph& g) {
  return g.edge_count() + connected_components(g).size() == static_cast<std::size_t>(g.vertex_count());
}

namespace {

struct BlockFinder {
  const Graph& g;
  std::vector<int> order, low;
  std::vector<Edge> stack;
  std::vector<VertexList> blocks;
  int counter = 0;

  void visit(Vertex v, Vertex parent) {
    order[v] = low[v] = counter++;
    for (Vertex w : g.neighbors(v)) {
      if (w == parent) continue;
      if (order[w] == -1) {
        stack.push_back({v, w});
        visit(w, v);
        low[v] = std::min(low[v], low[w]);
        if (low[w] >= order[v]) {
          VertexList block;
          while (true) {
            Edge e = stack.back();
            stack.pop_back();
            block.push_back(e.u);
            block.push_back(e.v);
            if (e.u == v && e.v == w) break;
          }
          std::sort(block.begin(), block.end());
          block.erase(std::unique(block.begin(), block.end()), block.end());
          blocks.push_back(std::move(block));
        }
      } else if (order[w] < order[v]) {
        stack.push_back({v, w});
        low[v] = std::min(low[v], order[w]);
      }
    }
  }
};

}  // namespace

BlockDecomposition blocks(const Graph& g) {
  BlockFinder finder{g, std::vector<int>(g.vertex_count(), -1), std::vector<int>(g.vertex_count(), 0), {}, {}};
  for (Vertex v = 0; v < g.vertex_count(); ++v) {
    if (finder.order[v] != -1) continue;
    if (g.degree(v) == 0) {
      finder.order[v] = finder.counter++;
      finder.blocks.push_back({v});
      continue;
    }
    finder.visit(v, -1);
  }
  BlockDecomposition out;
  out.blocks = std::move(finder.blocks);
  std::sort(out.blocks.begin(), out.blocks.end());
  std::vector<int> count(g.vertex_count(), 0);
  for (const auto& b : out.blocks)
    for (Vertex v : b) ++count[v];
  for (Vertex v = 0; v < g.vertex_count(); ++v)
    if (count[v] >= 2) out.cut_vertices.push_back(v);
  return out;
}

VertexPartition::VertexPartition(int vertex_count, std::vector<VertexList> classes)
    : classes_(std::move(classes)), class_of_(vertex_count, -1) {
  for (std::size_t i = 0; i < classes_.size(); ++i) {
    auto& c = classes_[i];
    if (c.empty()) throw ContractError("partition class " + std::to_string(i) + " is empty");
    std::sort(c.begin(), c.end());
    for (Vertex v : c) {
      if (v < 0 || v >= vertex_count)
        throw ContractError("partition vertex " + std::to_string(v) + " out of range");
      if (class_of_[v] != -1)
        throw ContractError("vertex " + std::to_string(v) + " appears in two partition classes");
      class_of_[v] = static_cast<int>(i);
    }
  }
  for (Vertex v = 0; v < vertex_count; ++v)
    if (class_of_[v] == -1) throw ContractError("vertex " + std::to_string(v) + " is in no partition class");
}

VertexPartition VertexPartition::singletons(int vertex_count) {
  std::vector<VertexList> classes;
  for (Vertex v = 0; v < vertex_count; ++v) classes.push_back({v});
  return VertexPartition(vertex_count, std::move(classes));
}

VertexPartition VertexPartition::from_labels(std::span<const int> labels) {
  std::vector<int> renumber;
  std::vector<int> seen_labels;
  std::vector<VertexList> classes;
  for (std::size_t v = 0; v < labels.size(); ++v) {
    auto it = std::find(seen_labels.begin(), seen_labels.end(), labels[v]);
    if (it == seen_labels.end()) {
      seen_labels.push_back(labels[v]);
      classes.push_back({});
      it = seen_labels.end() - 1;
    }
    classes[it - seen_labels.begin()].push_back(static_cast<Vertex>(v));
  }
  return VertexPartition(static_cast<int>(labels.size()), std::move(classes));
}

Graph quotient(const Graph& g, const VertexPartition& p) {
  if (p.vertex_count() != g.vertex_count()) throw ContractError("quotient: partition does not match graph");
  std::set<Edge> edges;
  for (const Edge& e : g.edges()) {
    int a = p.class_of(e.u), b = p.class_of(e.v);
    if (a != b) edges.insert(Edge{a, b}.normalized());
  }
  std::vector<Edge> list(edges.begin(), edges.end());
  return Graph(static_cast<int>(p.size()), list);
}

int cross_neighbor_count(const Graph& g, std::span<const Vertex> x, std::span<const Vertex> y) {
  std::vector<char> in_x(g.vertex_count(), 0);
  for (Vertex v : x) in_x[v] = 1;
  int count = 0;
  for (Vertex v : y) {
    if (in_x[v]) throw ContractError("cross_neighbor_count: sets overlap at vertex " + std::to_string(v));
    for (Vertex w : g.neighbors(v))
      if (in_x[w]) {
        ++count;
        break;
      }
  }
  return count;
}

// graph6: N(n) header then the upper triangle, column by column (x(0,1), x(0,2), x(1,2), ...),
// six bits per byte, each byte offset by 63.
Graph parse_graph6(std::string_view text) {
  std::size_t pos = 0;
  constexpr std::string_view header = ">>graph6<<";
  if (text.substr(0, header.size()) == header) pos = header.size();
  std::size_t end = text.size();
  if (end > pos && text[end - 1] == '\n') --end;
  if (end > pos && text[end - 1] == '\r') --end;
  if (pos >= end) throw ParseError("graph6: empty input", pos);

  auto byte_at = [&](std::size_t i) -> int {
    if (i >= end) throw ParseError("graph6: truncated input", i);
    auto c = static_cast<unsigned char>(text[i]);
    if (c < 63 || c > 126)
      throw ParseError("graph6: byte " + std::to_string(c) + " out of range 63..126 at offset " +
                           std::to_string(i),
                       i);
    return c - 63;
  };

  std::uint64_t n = 0;
  if (byte_at(pos) != 63) {
    n = byte_at(pos);
    pos += 1;
  } else if (pos + 1 < end && static_cast<unsigned char>(text[pos + 1]) != 126) {
    for (int i = 1; i <= 3; ++i) n = (n << 6) | byte_at(pos + i);
    if (n < 63) throw ParseError("graph6: non-canonical 4-byte size header", pos);
    pos += 4;
  } else {
    if (pos + 1 >= end) throw ParseError("graph6: truncated size header", pos + 1);
    for (int i = 2; i <= 7; ++i) n = (n << 6) | byte_at(pos + i);
    if (n < 258048) throw ParseError("graph6: non-canonical 8-byte size header", pos);
    pos += 8;
  }
  if (n > 100000) throw ParseError("graph6: vertex count too large for this tool", pos);

  const std::uint64_t bits = n * (n - (n > 0 ? 1 : 0)) / 2;
  const std::uint64_t bytes = (bits + 5) / 6;
  if (end - pos < bytes) throw ParseError("graph6: truncated adjacency data", end);
  if (end - pos > bytes) throw ParseError("graph6: trailing garbage", pos + bytes);

  std::vector<Edge> edges;
  std::uint64_t k = 0;
  for (std::uint64_t j = 1; j < n; ++j)
    for (std::uint64_t i = 0; i < j; ++i, ++k) {
      int byte = byte_at(pos + k / 6);
      if ((byte >> (5 - k % 6)) & 1) edges.push_back({static_cast<Vertex>(i), static_cast<Vertex>(j)});
    }
  for (; k < bytes * 6; ++k)
    if ((byte_at(pos + k / 6) >> (5 - k % 6)) & 1)
      throw ParseError("graph6: nonzero padding bit", pos + k / 6);
  return Graph(static_cast<int>(n), edges);
}

std::string emit_graph6(const Graph& g) {
  const std::uint64_t n = g.vertex_count();
  std::string out;
  if (n <= 62) {
    out.push_back(static_cast<char>(n + 63));
  } else if (n <= 258047) {
    out.push_back(126);
    for (int shift = 12; shift >= 0; shift -= 6) out.push_back(static_cast<char>(((n >> shift) & 63) + 63));
  } else {
    out.push_back(126);
    out.push_back(126);
    for (int shift = 30; shift >= 0; shift -= 6) out.push_back(static_cast<char>(((n >> shift) & 63) + 63));
  }
  int acc = 0, filled = 0;
  for (std::uint64_t j = 1; j < n; ++j)
    for (std::uint64_t i = 0; i < j; ++i) {
      acc = (acc << 1) | (g.has_edge(static_cast<Vertex>(i), static_cast<Vertex>(j)) ? 1 : 0);
      if (++filled == 6) {
        out.push_back(static_cast<char>(acc + 63));
        acc = filled = 0;
      }
    }
  if (filled > 0) out.push_back(static_cast<char>((acc << (6 - filled)) + 63));
  return out;
}

}  // namespace hatguess
