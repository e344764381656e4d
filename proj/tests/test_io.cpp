#include <doctest.h>

#include "hatguess/error.hpp"
#include "hatguess/generators.hpp"
#include "hatguess/io.hpp"
#include "hatguess/random.hpp"

using namespace hatguess;

TEST_CASE("graph documents") {
  const Graph g = random_gnp(9, 0.4, 3);
  const Json j = to_json(g);
  CHECK(j["format"] == "hatguess.graph");
  CHECK(j["version"] == 1);
  CHECK(graph_from_json(j) == g);
  CHECK(graph_from_json(Json::parse(j.dump())) == g);

  Json wrong = j;
  wrong["format"] = "hatguess.lists";
  CHECK_THROWS_AS(graph_from_json(wrong), ContractError);
  Json later = j;
  later["version"] = 2;
  CHECK_THROWS_AS(graph_from_json(later), ContractError);
  Json loop = j;
  loop["edges"] = Json::array({Json::array({1, 1})});
  CHECK_THROWS_AS(graph_from_json(loop), ContractError);
  CHECK_THROWS_AS(graph_from_json(Json::parse(R"({"format":"hatguess.graph","version":1})")), ContractError);
}

TEST_CASE("embedding documents") {
  const auto og = random_outerplanar(10, 0.4, 8);
  const auto og2 = outerplane_from_json(to_json(og));
  CHECK(og2.graph == og.graph);
  CHECK(to_json(og2) == to_json(og));
  Json crossed = Json::parse(
      R"({"format":"hatguess.outerplane","version":1,"n":4,"blocks":[{"boundary":[0,1,2,3],"chords":[[0,2],[1,3]]}]})");
  CHECK_THROWS_AS(outerplane_from_json(crossed), ContractError);

  const auto lp = random_layered(3, 6, 4);
  CHECK(to_json(layered_from_json(to_json(lp))) == to_json(lp));

  const auto rs = torus_grid(3, 3);
  const auto rs2 = rotation_from_json(to_json(rs));
  CHECK(rs2.rotation == rs.rotation);
}

TEST_CASE("game documents") {
  const Graph c4 = cycle_graph(4);
  const auto lists = ColorLists::uniform(4, 3);
  CHECK(lists_from_json(to_json(lists)).lists == lists.lists);
  Rng rng(6);
  const auto strat = random_strategy(c4, lists, 2, rng);
  const Json js = to_json(strat);
  CHECK(js["neighbor_order"] == "ascending");
  const auto back = strategy_from_json(js);
  CHECK(back.s == strat.s);
  CHECK(back.table == strat.table);

  const HatAssignment a{1, 3, 2, 2};
  CHECK(assignment_from_json(assignment_to_json(a)) == a);

  const VertexPartition p(5, {{0, 4}, {1, 2}, {3}});
  CHECK(partition_from_json(to_json(p)).classes() == p.classes());
  CHECK_THROWS_AS(partition_from_json(Json::parse(
                      R"({"format":"hatguess.partition","version":1,"n":3,"classes":[[0,1],[1,2]]})")),
                  ContractError);
}

TEST_CASE("decomposition documents") {
  const Graph p = petal_graph(6);
  const PetuniaCertificate cert{{{0, {1, 2, 3, 4, 5}}}};
  const auto back = petunia_certificate_from_json(to_json(cert));
  REQUIRE(back.blocks.size() == 1);
  CHECK(back.blocks[0].stem == Vertex{0});
  CHECK(back.blocks[0].order == VertexList{1, 2, 3, 4, 5});
  const PetuniaCertificate bare{{{std::nullopt, {0, 1}}}};
  CHECK(to_json(bare)["blocks"][0]["stem"].is_null());
  CHECK_FALSE(petunia_certificate_from_json(to_json(bare)).blocks[0].stem.has_value());

  FiveColoring c{{Color::Green, Color::Pink, Color::Indigo}};
  const Json jc = to_json(c);
  CHECK(jc["colors"][0] == "green");
  CHECK(jc["colors"][1] == "pink");
}

TEST_CASE("tower values serialise with an exact value when small") {
  const Json small = to_json(TowerValue(1, 10));
  CHECK(small["height"] == 1);
  CHECK(small["exact"] == "1024");
  const Json big = to_json(TowerValue(4, 149));
  CHECK(big["height"] == 4);
  CHECK_FALSE(big.contains("exact"));
  CHECK(big["top"] == "149");
}

TEST_CASE("sha256") {
  CHECK(sha256_hex("") == "e3b0c44298fc1c149afbf4c8996fb92427ae41e4649b934ca495991b7852b855");
  CHECK(sha256_hex("abc") == "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad");
}
