#pragma once

#include <optional>
#include <vector>

#include "hatguess/graph.hpp"
#include "hatguess/outerplane.hpp"

namespace hatguess {

// Nested 2-connected outerplane levels joined by non-crossing edges between consecutive
// levels. All boundary orders are clockwise. Level i+1 is drawn inside the interior face
// `nesting_faces[i+1]` of level i; `nesting_faces[0]` is unused and should be empty.
struct LayeredPlanarGraph {
  int vertex_count = 0;
  std::vector<OuterplaneBlock> levels;
  std::vector<Edge> cross_edges;
  std::vector<VertexList> nesting_faces;
};

// Union of level edges and cross edges.
Graph layered_graph(const LayeredPlanarGraph& lp);

std::optional<Violation> validate_layered(const LayeredPlanarGraph& lp);

// Parent/child relations with their clockwise orders, recovered from the annulus
// arrangement between each level and the face that nests the next one.
struct LayeredStructure {
  Graph graph;
  std::vector<int> level_of;         // 0-based
  std::vector<VertexList> parents;   // in clockwise order along the parent level
  std::vector<VertexList> children;  // in clockwise order along the child level
};

// Throws ContractError when validate_layered reports a violation.
LayeredStructure analyze_layered(const LayeredPlanarGraph& lp);

}  // namespace hatguess
