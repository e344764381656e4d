#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "hatguess/graph.hpp"
#include "hatguess/layered.hpp"
#include "hatguess/outerplane.hpp"
#include "hatguess/rotation.hpp"

namespace hatguess {

// One block of a petunia: a stem (or none) plus a linear order of the other vertices.
// Edges not at the stem must join consecutive vertices of the order.
struct PetuniaBlock {
  std::optional<Vertex> stem;
  VertexList order;
};

struct PetuniaCertificate {
  std::vector<PetuniaBlock> blocks;  // one per block of the graph, same order as blocks(g)
};

// Tries every stem in every block.
std::optional<PetuniaCertificate> is_petunia(const Graph& g);

// nullopt when cert certifies g.
std::optional<Violation> validate_petunia_certificate(const Graph& g, const PetuniaCertificate& cert);

// Red/blue colouring of the petal completion; classes are monochromatic components of the
// completion. Every class induces a forest in g, the quotient is a forest and each pair has
// cross count <= 3 (asserted; ClaimViolation otherwise).
VertexPartition petunia_forest_partition(const Graph& g, const PetuniaCertificate& cert);

struct OuterplanarSplit {
  VertexList a;  // ascending
  VertexList b;  // ascending
  PetuniaCertificate certificate;  // for G[A], in original vertex ids
  std::vector<Edge> completion;    // edges added by the triangulation
};

// Root edge (u, v) must be an edge of og.graph. Asserts: G[A] petunia containing uv, B
// independent, u has no B-neighbour, v at most two, everyone else at most three.
OuterplanarSplit outerplanar_split(const OuterplaneGraph& og, Edge root);

enum class Color { Green, Blue, Indigo, Red, Pink };

std::string to_string(Color c);

struct FiveColoring {
  std::vector<Color> color;  // per vertex
  VertexList of(Color c) const;
};

// Maxima of the quantities bounded by the five colouring claims.
struct ColoringClaims {
  bool green_outerplanar = false;
  int green_other_max = 0;  // non-green neighbours of a green vertex, <= 5
  bool blue_outerplanar = false;
  int blue_irp_max = 0;  // indigo/red/pink neighbours of a blue vertex, <= 6
  bool indigo_outerplanar = false;
  int indigo_rp_max = 0;  // red/pink neighbours of an indigo vertex, <= 6
  bool red_petunia = false;
  int red_pink_max = 0;  // pink neighbours of a red vertex, <= 6
  int pink_degree_max = 0;  // <= 6
  bool all_hold() const;
};

ColoringClaims measure_claims(const Graph& g, const FiveColoring& coloring);

// Green K_v, red for >= 3 children, pink for the extreme red children of a red vertex,
// then blue on even and indigo on odd levels (levels counted from 1). Levels must have at
// least three vertices. ClaimViolation with a witness when a claim fails.
FiveColoring layered_five_coloring(const LayeredPlanarGraph& lp);

}  // namespace hatguess
