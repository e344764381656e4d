#pragma once

#include <compare>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace hatguess {

using Vertex = int;
using VertexList = std::vector<Vertex>;

struct Edge {
  Vertex u = 0;
  Vertex v = 0;

  // Same edge with u < v.
  Edge normalized() const { return u < v ? Edge{u, v} : Edge{v, u}; }
  auto operator<=>(const Edge&) const = default;
};

// Finite simple undirected graph on vertices 0..n-1. Immutable once built.
class Graph {
 public:
  Graph() = default;
  explicit Graph(int vertex_count);
  // Throws ContractError on self-loops, repeated edges or out-of-range endpoints.
  Graph(int vertex_count, std::span<const Edge> edges);

  int vertex_count() const { return static_cast<int>(adjacency_.size()); }
  std::size_t edge_count() const { return edge_count_; }
  // Neighbours of v in ascending order.
  std::span<const Vertex> neighbors(Vertex v) const { return adjacency_[v]; }
  int degree(Vertex v) const { return static_cast<int>(adjacency_[v].size()); }
  int max_degree() const;
  bool has_edge(Vertex u, Vertex v) const;
  bool contains(Vertex v) const { return v >= 0 && v < vertex_count(); }
  // All edges with u < v in lexicographic order.
  std::vector<Edge> edges() const;

  bool operator==(const Graph& other) const { return adjacency_ == other.adjacency_; }

 private:
  std::vector<VertexList> adjacency_;
  std::size_t edge_count_ = 0;
};

// Graph induced on `vertices`; local vertex i corresponds to `original[i]`.
struct InducedSubgraph {
  Graph graph;
  VertexList original;
};

InducedSubgraph induced_subgraph(const Graph& g, std::span<const Vertex> vertices);

// Graph with the extra edges added (duplicates of existing edges are ignored).
Graph with_edges(const Graph& g, std::span<const Edge> extra);

std::vector<VertexList> connected_components(const Graph& g);
bool is_connected(const Graph& g);
bool is_acyclic(const Graph& g);

// Biconnected components. Every edge lies in exactly one block; bridges are two-vertex
// blocks and isolated vertices are reported as singleton blocks. Blocks are sorted
// vertex lists, ordered by their least vertex.
struct BlockDecomposition {
  std::vector<VertexList> blocks;
  VertexList cut_vertices;  // ascending
};

BlockDecomposition blocks(const Graph& g);

// Ordered family of disjoint, nonempty vertex classes covering 0..n-1.
class VertexPartition {
 public:
  VertexPartition() = default;
  // Classes are stored sorted. Throws ContractError unless they partition 0..n-1.
  VertexPartition(int vertex_count, std::vector<VertexList> classes);

  static VertexPartition singletons(int vertex_count);
  // From a class label per vertex; classes are numbered by least contained vertex.
  static VertexPartition from_labels(std::span<const int> labels);

  std::size_t size() const { return classes_.size(); }
  int vertex_count() const { return static_cast<int>(class_of_.size()); }
  const std::vector<VertexList>& classes() const { return classes_; }
  const VertexList& operator[](std::size_t i) const { return classes_[i]; }
  int class_of(Vertex v) const { return class_of_[v]; }

 private:
  std::vector<VertexList> classes_;
  std::vector<int> class_of_;
};

// One vertex per class; classes adjacent iff some edge crosses between them.
Graph quotient(const Graph& g, const VertexPartition& p);

// |N(X) ∩ Y|: number of vertices of Y with at least one neighbour in X.
// X and Y must be disjoint (ContractError otherwise).
int cross_neighbor_count(const Graph& g, std::span<const Vertex> x, std::span<const Vertex> y);

// graph6 codec (one graph per line). Accepts an optional ">>graph6<<" header and a
// trailing newline. Errors carry the offending byte offset.
Graph parse_graph6(std::string_view text);
std::string emit_graph6(const Graph& g);

}  // namespace hatguess
