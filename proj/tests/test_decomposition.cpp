#include <doctest.h>

#include "hatguess/decomposition.hpp"
#include "hatguess/error.hpp"
#include "hatguess/generators.hpp"
#include "oracles.hpp"

using namespace hatguess;

namespace {

void check_forest_partition(const Graph& g, const VertexPartition& p) {
  REQUIRE(p.vertex_count() == g.vertex_count());
  for (const auto& cls : p.classes()) CHECK(is_acyclic(induced_subgraph(g, cls).graph));
  const Graph q = quotient(g, p);
  CHECK(is_acyclic(q));
  for (const Edge& e : q.edges()) {
    CHECK(cross_neighbor_count(g, p.classes()[e.u], p.classes()[e.v]) <= 3);
    CHECK(cross_neighbor_count(g, p.classes()[e.v], p.classes()[e.u]) <= 3);
  }
}

int neighbors_in(const Graph& g, Vertex v, const VertexList& side) {
  int c = 0;
  for (Vertex w : g.neighbors(v)) c += std::binary_search(side.begin(), side.end(), w);
  return c;
}

void check_split(const OuterplaneGraph& og, Edge root, bool oracle_check) {
  const Graph& g = og.graph;
  const auto sp = outerplanar_split(og, root);
  CHECK(sp.a.size() + sp.b.size() == static_cast<std::size_t>(g.vertex_count()));
  CHECK(std::binary_search(sp.a.begin(), sp.a.end(), root.u));
  CHECK(std::binary_search(sp.a.begin(), sp.a.end(), root.v));
  for (Vertex x : sp.b) CHECK(neighbors_in(g, x, sp.b) == 0);
  CHECK(neighbors_in(g, root.u, sp.b) == 0);
  CHECK(neighbors_in(g, root.v, sp.b) <= 2);
  for (Vertex x : sp.a) CHECK(neighbors_in(g, x, sp.b) <= 3);
  const Graph ga = induced_subgraph(g, sp.a).graph;
  PetuniaCertificate local = sp.certificate;
  auto to_local = [&](Vertex v) { return static_cast<Vertex>(std::lower_bound(sp.a.begin(), sp.a.end(), v) - sp.a.begin()); };
  for (auto& b : local.blocks) {
    if (b.stem) b.stem = to_local(*b.stem);
    for (auto& v : b.order) v = to_local(v);
  }
  CHECK_FALSE(validate_petunia_certificate(ga, local).has_value());
  if (oracle_check) CHECK(oracle::petunia(ga));
}

LayeredPlanarGraph hexagon_triangle(std::vector<Edge> cross) {
  LayeredPlanarGraph lp;
  lp.vertex_count = 9;
  lp.levels = {{{0, 1, 2, 3, 4, 5}, {}}, {{6, 7, 8}, {}}};
  lp.cross_edges = std::move(cross);
  lp.nesting_faces = {{}, {0, 1, 2, 3, 4, 5}};
  return lp;
}

}  // namespace

TEST_CASE("petunia recognition against the brute-force oracle") {
  CHECK(is_petunia(petal_graph(5)).has_value());
  CHECK(is_petunia(path_graph(6)).has_value());
  CHECK(is_petunia(cycle_graph(7)).has_value());
  CHECK_FALSE(is_petunia(complete_graph(4)).has_value());
  for (std::uint64_t seed = 0; seed < 80; ++seed) {
    const int n = 2 + static_cast<int>(seed % 7);
    const Graph g = random_gnp(n, 0.45, 300 + seed);
    const auto cert = is_petunia(g);
    CHECK(cert.has_value() == oracle::petunia(g));
    if (cert) CHECK_FALSE(validate_petunia_certificate(g, *cert).has_value());
  }
  for (std::uint64_t seed = 0; seed < 20; ++seed) CHECK(is_petunia(random_tree(10, seed)).has_value());
}

TEST_CASE("certificate validation catches a bad order") {
  const Graph p = petal_graph(5);
  auto cert = *is_petunia(p);
  REQUIRE(cert.blocks.size() == 1);
  std::swap(cert.blocks[0].order.front(), cert.blocks[0].order.back());
  CHECK(validate_petunia_certificate(p, cert).has_value());
}

TEST_CASE("forest partition of petunias") {
  for (std::uint64_t seed = 0; seed < 60; ++seed) {
    const Graph g = random_petunia(3 + static_cast<int>(seed % 20), seed);
    const auto cert = is_petunia(g);
    REQUIRE(cert.has_value());
    check_forest_partition(g, petunia_forest_partition(g, *cert));
  }
  const Graph p = petal_graph(6);
  check_forest_partition(p, petunia_forest_partition(p, *is_petunia(p)));
}

TEST_CASE("outerplanar split on small examples") {
  const auto tri = make_outerplane(3, {{{0, 1, 2}, {}}});
  for (const Edge& e : tri.graph.edges()) {
    check_split(tri, e, true);
    check_split(tri, {e.v, e.u}, true);
  }
  const auto fan5 = make_outerplane(5, {{{0, 1, 2, 3, 4}, {{0, 2}, {0, 3}}}});
  for (const Edge& e : fan5.graph.edges()) {
    check_split(fan5, e, true);
    check_split(fan5, {e.v, e.u}, true);
  }
  CHECK_THROWS_AS(outerplanar_split(fan5, {1, 3}), ContractError);
}

TEST_CASE("outerplanar split on random maximal outerplanar graphs") {
  for (std::uint64_t seed = 0; seed < 12; ++seed) {
    const int n = 4 + static_cast<int>(seed % 5);
    const auto og = random_maximal_outerplanar(n, seed);
    for (const Edge& e : og.graph.edges()) {
      check_split(og, e, true);
      check_split(og, {e.v, e.u}, true);
    }
  }
  const auto big = random_maximal_outerplanar(20, 77);
  for (const Edge& e : big.graph.edges()) check_split(big, e, false);
  // non-maximal input goes through the completion
  const auto sparse = random_outerplanar(14, 0.3, 5);
  for (const Edge& e : sparse.graph.edges()) check_split(sparse, e, false);
}

TEST_CASE("five colouring: one level is all indigo") {
  LayeredPlanarGraph lp;
  lp.vertex_count = 5;
  lp.levels = {{{0, 1, 2, 3, 4}, {}}};
  lp.nesting_faces = {{}};
  const auto c = layered_five_coloring(lp);
  CHECK(c.of(Color::Indigo).size() == 5);
}

TEST_CASE("five colouring: prism has no red") {
  LayeredPlanarGraph lp;
  lp.vertex_count = 6;
  lp.levels = {{{0, 1, 2}, {}}, {{3, 4, 5}, {}}};
  lp.cross_edges = {{0, 3}, {1, 4}, {2, 5}};
  lp.nesting_faces = {{}, {0, 1, 2}};
  const auto c = layered_five_coloring(lp);
  CHECK(c.of(Color::Red).empty());
  CHECK(c.of(Color::Green).empty());
  CHECK(c.of(Color::Indigo) == VertexList{0, 1, 2});
  CHECK(c.of(Color::Blue) == VertexList{3, 4, 5});
}

TEST_CASE("five colouring: vertices under a wide parent span are green") {
  const auto lp = hexagon_triangle({{6, 1}, {6, 2}, {6, 3}, {6, 4}, {7, 4}, {7, 5}, {8, 5}, {8, 0}});
  REQUIRE_FALSE(validate_layered(lp).has_value());
  const auto st = analyze_layered(lp);
  CHECK(st.children[2] == VertexList{6});
  CHECK(st.children[3] == VertexList{6});
  const auto c = layered_five_coloring(lp);
  CHECK(c.of(Color::Green) == VertexList{2, 3});
  CHECK(c.of(Color::Red).empty());
  CHECK(c.of(Color::Indigo) == VertexList{0, 1, 4, 5});
  CHECK(c.of(Color::Blue) == VertexList{6, 7, 8});
  CHECK(measure_claims(layered_graph(lp), c).all_hold());
}

TEST_CASE("five colouring: three children make a red parent") {
  const auto lp = hexagon_triangle({{0, 6}, {0, 7}, {0, 8}, {3, 7}});
  REQUIRE_FALSE(validate_layered(lp).has_value());
  const auto c = layered_five_coloring(lp);
  CHECK(c.color[0] == Color::Red);
  // its children are not red themselves, so nothing turns pink
  CHECK(c.of(Color::Pink).empty());
  CHECK(c.of(Color::Blue) == VertexList{6, 7, 8});
}

TEST_CASE("five colouring claims on random layered graphs") {
  int pinks = 0;
  for (std::uint64_t seed = 0; seed < 60; ++seed) {
    const auto lp = random_layered(2 + static_cast<int>(seed % 3), 14, seed);
    const auto c = layered_five_coloring(lp);
    const auto claims = measure_claims(layered_graph(lp), c);
    CHECK(claims.all_hold());
    CHECK(claims.pink_degree_max <= 6);
    CHECK(claims.green_other_max <= 5);
    // independent check that the red class is a petunia
    const auto red = c.of(Color::Red);
    CHECK(is_petunia(induced_subgraph(layered_graph(lp), red).graph).has_value());
    // pink vertices were red: three or more children and a parent that was red too
    const auto st = analyze_layered(lp);
    for (Vertex v : c.of(Color::Pink)) {
      ++pinks;
      CHECK(st.children[v].size() >= 3);
      CHECK(std::any_of(st.parents[v].begin(), st.parents[v].end(), [&](Vertex p) { return c.color[p] == Color::Red || c.color[p] == Color::Pink; }));
    }
  }
  CHECK(pinks > 0);
}

TEST_CASE("claims measure what they say") {
  const Graph k5 = complete_graph(5);
  FiveColoring all_pink{std::vector<Color>(5, Color::Pink)};
  const auto claims = measure_claims(k5, all_pink);
  CHECK(claims.pink_degree_max == 4);
  FiveColoring all_green{std::vector<Color>(5, Color::Green)};
  CHECK_FALSE(measure_claims(k5, all_green).green_outerplanar);
}
