#include <doctest.h>

#include "hatguess/error.hpp"
#include "hatguess/generators.hpp"
#include "hatguess/graph.hpp"
#include "hatguess/outerplane.hpp"
#include "oracles.hpp"

using namespace hatguess;

TEST_CASE("graph6 decodes by hand-checked bytes") {
  // 'A' = 63 + 2 vertices; '_' = 63 + 0b100000, the single upper-triangle bit set
  const Graph k2 = parse_graph6("A_");
  CHECK(k2.vertex_count() == 2);
  CHECK(k2.edge_count() == 1);
  CHECK(k2.has_edge(0, 1));
  const Graph e5 = parse_graph6("D??");
  CHECK(e5.vertex_count() == 5);
  CHECK(e5.edge_count() == 0);
  CHECK_THROWS_AS(parse_graph6(""), ParseError);
  CHECK_THROWS_AS(parse_graph6("A_x"), ParseError);
  CHECK_THROWS_AS(parse_graph6("A"), ParseError);
  CHECK(parse_graph6(">>graph6<<A_\n") == k2);
}

TEST_CASE("graph6 round trip") {
  for (int n = 1; n <= 62; n += 3)
    for (std::uint64_t seed = 0; seed < 3; ++seed) {
      const Graph g = random_gnp(n, 0.3, seed * 100 + n);
      const std::string text = emit_graph6(g);
      CHECK(parse_graph6(text) == g);
      CHECK(emit_graph6(parse_graph6(text)) == text);
    }
  CHECK(parse_graph6(emit_graph6(Graph(0))).vertex_count() == 0);
}

TEST_CASE("graph rejects loops and repeated edges") {
  std::vector<Edge> loop{{1, 1}};
  CHECK_THROWS_AS(Graph(3, loop), ContractError);
  std::vector<Edge> twice{{0, 1}, {1, 0}};
  CHECK_THROWS_AS(Graph(3, twice), ContractError);
  std::vector<Edge> out{{0, 3}};
  CHECK_THROWS_AS(Graph(3, out), ContractError);
}

TEST_CASE("blocks on the small examples") {
  auto p3 = blocks(path_graph(3));
  CHECK(p3.blocks == std::vector<VertexList>{{0, 1}, {1, 2}});
  CHECK(p3.cut_vertices == VertexList{1});
  auto c4 = blocks(cycle_graph(4));
  CHECK(c4.blocks == std::vector<VertexList>{{0, 1, 2, 3}});
  CHECK(c4.cut_vertices.empty());
  const Graph bowtie = oracle::graph(5, {{0, 1}, {1, 2}, {0, 2}, {2, 3}, {3, 4}, {2, 4}});
  auto bt = blocks(bowtie);
  CHECK(bt.blocks.size() == 2);
  CHECK(bt.cut_vertices == VertexList{2});
}

TEST_CASE("blocks agree with the common-cycle oracle") {
  for (std::uint64_t seed = 0; seed < 150; ++seed) {
    const int n = 2 + static_cast<int>(seed % 7);
    const Graph g = random_gnp(n, 0.35, seed);
    auto mine = blocks(g).blocks;
    std::vector<VertexList> nontrivial;
    for (auto& b : mine)
      if (b.size() >= 2) nontrivial.push_back(b);
    auto ref = oracle::block_sets(g);
    std::sort(nontrivial.begin(), nontrivial.end());
    std::sort(ref.begin(), ref.end());
    CHECK(nontrivial == ref);
  }
}

TEST_CASE("quotient examples") {
  const Graph c4 = cycle_graph(4);
  CHECK(quotient(c4, VertexPartition(4, {{0, 1}, {2, 3}})) == complete_graph(2));
  CHECK(quotient(c4, VertexPartition::singletons(4)) == c4);
  const Graph c6 = cycle_graph(6);
  CHECK(quotient(c6, VertexPartition(6, {{0, 1}, {2, 3}, {4, 5}})) == complete_graph(3));
  CHECK_THROWS_AS(VertexPartition(3, {{0, 1}, {1, 2}}), ContractError);
  CHECK_THROWS_AS(VertexPartition(3, {{0, 1}}), ContractError);
}

TEST_CASE("cross neighbour counts") {
  const Graph star = star_graph(4);
  CHECK(cross_neighbor_count(star, VertexList{0}, VertexList{1, 2, 3}) == 3);
  CHECK(cross_neighbor_count(path_graph(4), VertexList{0}, VertexList{3}) == 0);
  const Graph c5 = cycle_graph(5);
  // N({0,1}) = {4, 2}, both in Y
  CHECK(cross_neighbor_count(c5, VertexList{0, 1}, VertexList{2, 4}) == 2);
  CHECK_THROWS_AS(cross_neighbor_count(c5, VertexList{0, 1}, VertexList{1, 2}), ContractError);
}

TEST_CASE("deterministic families") {
  const Graph petal = petal_graph(4);
  CHECK(petal.vertex_count() == 4);
  CHECK(petal.edge_count() == 5);
  CHECK(cycle_graph(3) == complete_graph(3));
  CHECK_THROWS_AS(path_graph(0), ContractError);
}

TEST_CASE("random maximal outerplanar graphs are valid with 2n-3 edges") {
  for (int n = 3; n <= 20; ++n)
    for (std::uint64_t seed = 0; seed < 5; ++seed) {
      const auto og = random_maximal_outerplanar(n, seed);
      CHECK_FALSE(validate_outerplane(og).has_value());
      CHECK(og.graph.edge_count() == static_cast<std::size_t>(2 * n - 3));
    }
  // identical seeds, identical output
  CHECK(random_maximal_outerplanar(12, 9).graph == random_maximal_outerplanar(12, 9).graph);
}

TEST_CASE("acyclic and connected") {
  CHECK(is_acyclic(random_tree(9, 4)));
  CHECK(is_connected(random_tree(9, 4)));
  CHECK_FALSE(is_acyclic(cycle_graph(5)));
  CHECK(connected_components(Graph(3)).size() == 3);
}
