#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "hatguess/graph.hpp"

namespace hatguess {

// Combinatorial (orientable, cellular) embedding: at each vertex, the neighbours in
// clockwise cyclic order.
struct RotationSystem {
  Graph graph;
  std::vector<VertexList> rotation;
};

// Throws ContractError unless rotation[v] is a permutation of N(v) for every v.
RotationSystem make_rotation_system(Graph g, std::vector<VertexList> rotation);

// Planar-style default: neighbours in ascending order (not necessarily planar).
RotationSystem ascending_rotation(const Graph& g);

struct Dart {
  Vertex tail = 0;
  Vertex head = 0;
  auto operator<=>(const Dart&) const = default;
};

struct FaceStructure {
  std::vector<std::vector<Dart>> faces;
  // face_of[dart index] with dart index = offset of head in tail's sorted adjacency.
  std::vector<std::vector<int>> face_of;  // [tail][i] -> face of dart (tail, neighbors(tail)[i])
};

// Successor of dart (u,v) along its face is (v, w) with w the neighbour after u in rot(v).
FaceStructure trace_faces(const RotationSystem& rs);

// V - E + F. 2 on the sphere, 0 on the torus.
int euler_characteristic(const RotationSystem& rs);
// (2 - chi) / 2 for a connected embedding.
int orientable_genus(const RotationSystem& rs);

// `cycle` is a closed walk given by its vertex sequence (v0, v1, ..., v_{m-1}), m >= 3,
// which must be a simple cycle of rs.graph. Separating iff deleting the dual edges of the
// cycle disconnects the dual graph. Throws ContractError if not a simple cycle.
bool is_separating_cycle(const RotationSystem& rs, const VertexList& cycle);

struct SearchLimits {
  std::uint64_t max_nodes = 100'000'000;
};

// Minimum-length non-separating cycle (lexicographically least among those of that
// length, starting at its least vertex), or nullopt on a genus-0 embedding.
// Throws BudgetExceeded when the cycle enumeration exceeds the limit.
std::optional<VertexList> shortest_nonseparating_cycle(const RotationSystem& rs, SearchLimits limits = {});

struct PeelResult {
  VertexList cycle;
  VertexList a;             // V \ V(C)
  VertexList b;             // V(C)
  int max_cycle_neighbors;  // over vertices of A
  bool d_check;             // max_cycle_neighbors <= 5
};

// Removes a shortest non-separating cycle. Throws ContractError on a genus-0 input and
// ClaimViolation if an outside vertex sees more than five cycle vertices.
PeelResult genus_peel(const RotationSystem& rs, SearchLimits limits = {});

// Exhaustive check of: for internally disjoint x-y paths P1, P2, P3, if P1+P2 and
// P1+P3 are separating cycles then so is P2+P3. Returns the number of ordered triples
// examined that met the hypothesis; throws ClaimViolation with a witness otherwise.
std::uint64_t check_three_path_property(const RotationSystem& rs, SearchLimits limits = {});

}  // namespace hatguess
