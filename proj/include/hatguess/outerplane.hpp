#pragma once

#include <optional>
#include <string>
#include <vector>

#include "hatguess/graph.hpp"

namespace hatguess {

// One block of an outerplane embedding: its boundary walk (a cycle for blocks with
// three or more vertices, the two ends of a bridge, or a lone isolated vertex) and the
// chords drawn inside that cycle.
struct OuterplaneBlock {
  VertexList boundary;
  std::vector<Edge> chords;
};

// A graph together with an explicit outerplane embedding certificate.
struct OuterplaneGraph {
  Graph graph;
  std::vector<OuterplaneBlock> blocks;
};

struct Violation {
  std::string kind;     // machine-readable tag, e.g. "crossing_chords"
  std::string message;
  VertexList witness;
};

// nullopt when every invariant of the embedding holds, otherwise the first violation.
std::optional<Violation> validate_outerplane(const OuterplaneGraph& og);

// Builds the embedding from blocks alone (graph = union of boundary edges and chords).
OuterplaneGraph make_outerplane(int vertex_count, std::vector<OuterplaneBlock> blocks);

// Two chords {a,b}, {c,d} of a cycle cross iff their endpoints interleave along it.
// `position` maps vertices to their index along the cycle.
bool chords_cross(const Edge& a, const Edge& b, const std::vector<int>& position);

// Inner faces of a single block (cyclic vertex lists in boundary order).
std::vector<VertexList> inner_faces(const OuterplaneBlock& block);

// A Hamiltonian cyclic order of all vertices such that every edge of og is a boundary
// edge or a non-crossing chord of it (shortcut of the outer facial walk).
VertexList outer_hamiltonian_order(const OuterplaneGraph& og);

// Maximal outerplanar supergraph of og (2n-3 edges for n >= 3) on the cyclic order
// `outer_hamiltonian_order(og)`. The returned block is the single triangulated polygon.
struct Triangulation {
  OuterplaneBlock polygon;
  Graph graph;
  std::vector<Edge> added;  // completion edges not present in og.graph
};

Triangulation triangulate(const OuterplaneGraph& og);

// Abstract outerplanarity test: G is outerplanar iff G plus an apex joined to every
// vertex is planar (Boyer-Myrvold).
bool is_outerplanar(const Graph& g);

}  // namespace hatguess
