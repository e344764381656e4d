#include <doctest.h>

#include "hatguess/error.hpp"
#include "hatguess/game.hpp"
#include "hatguess/generators.hpp"
#include "hatguess/random.hpp"
#include "oracles.hpp"

using namespace hatguess;

namespace {

// Alice guesses Bob's colour, Bob the other one.
StrategyProfile alice_bob() { return {1, {{{1}, {2}}, {{2}, {1}}}}; }

}  // namespace

TEST_CASE("verify_strategy on the two-player example") {
  const Graph k2 = complete_graph(2);
  const auto lists = ColorLists::uniform(2, 2);
  const auto r = verify_strategy(k2, lists, alice_bob());
  CHECK(r.wins);
  CHECK_FALSE(r.counterexample.has_value());
  CHECK(oracle::wins_everywhere(k2, 2, oracle::from_table(k2, 2, alice_bob())));
  CHECK_FALSE(find_defeating_assignment(k2, lists, alice_bob()).has_value());
}

TEST_CASE("single vertex") {
  const Graph k1(1);
  const StrategyProfile constant{1, {{{1}}}};
  const auto r = verify_strategy(k1, ColorLists::uniform(1, 2), constant);
  CHECK_FALSE(r.wins);
  REQUIRE(r.counterexample.has_value());
  CHECK(*r.counterexample == HatAssignment{2});
  CHECK(verify_strategy(k1, ColorLists::uniform(1, 2), StrategyProfile{2, {{{1, 2}}}}).wins);
}

TEST_CASE("malformed tables are contract errors") {
  const Graph k2 = complete_graph(2);
  const auto lists = ColorLists::uniform(2, 2);
  CHECK_THROWS_AS(verify_strategy(k2, lists, StrategyProfile{1, {{{1}}, {{2}, {1}}}}), ContractError);
  CHECK_THROWS_AS(verify_strategy(k2, lists, StrategyProfile{1, {{{1, 2}, {2}}, {{2}, {1}}}}), ContractError);
  CHECK_THROWS_AS(verify_strategy(k2, lists, StrategyProfile{1, {{{3}, {2}}, {{2}, {1}}}}), ContractError);
  CHECK_THROWS_AS(verify_strategy(k2, lists, StrategyProfile{1, {{{}, {2}}, {{2}, {1}}}}), ContractError);
}

TEST_CASE("defeating assignments are real") {
  Rng rng(11);
  const Graph k2 = complete_graph(2);
  const auto l3 = ColorLists::uniform(2, 3);
  for (int i = 0; i < 50; ++i) {
    const auto strat = random_strategy(k2, l3, 1, rng);
    const auto a = find_defeating_assignment(k2, l3, strat);
    REQUIRE(a.has_value());
    CHECK_FALSE(someone_guesses_right(k2, l3, strat, *a));
    CHECK_FALSE(oracle::wins_everywhere(k2, 3, oracle::from_table(k2, 3, strat)));
  }
  const Graph empty(4);
  const auto l2 = ColorLists::uniform(4, 2);
  for (int i = 0; i < 20; ++i) {
    const auto strat = random_strategy(empty, l2, 1, rng);
    const auto a = find_defeating_assignment(empty, l2, strat);
    REQUIRE(a.has_value());
    for (Vertex v = 0; v < 4; ++v) CHECK((*a)[v] != strat.table[v][0][0]);  // each constant guess flipped
  }
}

TEST_CASE("players_win on cliques, with the best-response oracle where it is feasible") {
  const Graph k2 = complete_graph(2);
  CHECK(players_win(k2, ColorLists::uniform(2, 2), 1).wins);
  CHECK_FALSE(players_win(k2, ColorLists::uniform(2, 3), 1).wins);
  CHECK(oracle::players_win_best_response(k2, 2, 1));
  CHECK_FALSE(oracle::players_win_best_response(k2, 3, 1));

  const Graph k3 = complete_graph(3);
  const auto w = players_win(k3, ColorLists::uniform(3, 3), 1);
  REQUIRE(w.wins);
  REQUIRE(w.strategy.has_value());
  CHECK(oracle::wins_everywhere(k3, 3, oracle::from_table(k3, 3, *w.strategy)));
  CHECK_FALSE(players_win(k3, ColorLists::uniform(3, 4), 1).wins);
}

TEST_CASE("hg_exact small values") {
  CHECK(hg_exact(complete_graph(2), 1, 4) == 2);
  CHECK(hg_exact(path_graph(3), 1, 4) == 2);
  CHECK(hg_exact(path_graph(4), 1, 4) == 2);
  CHECK(hg_exact(complete_graph(3), 1, 5) == 3);
  CHECK(hg_exact(cycle_graph(4), 1, 5) == 3);
  // P3 with the centre best-responding
  const Graph p3 = path_graph(3);
  CHECK(oracle::players_win_best_response(p3, 2, 1));
  CHECK_FALSE(oracle::players_win_best_response(p3, 3, 1));
  // C4 at k = 3: the solver's strategy checked by plain enumeration
  const Graph c4 = cycle_graph(4);
  const auto r = players_win(c4, ColorLists::uniform(4, 3), 1);
  REQUIRE(r.strategy.has_value());
  CHECK(oracle::wins_everywhere(c4, 3, oracle::from_table(c4, 3, *r.strategy)));
}

TEST_CASE("clique strategy") {
  const StrategyProfile two = clique_strategy(2);
  CHECK(verify_strategy(complete_graph(2), ColorLists::uniform(2, 2), two).wins);
  // up to swapping the roles it is the copy / negate strategy: one player copies, one negates
  const bool copies0 = two.table[0] == alice_bob().table[0] || two.table[0] == alice_bob().table[1];
  const bool copies1 = two.table[1] == alice_bob().table[0] || two.table[1] == alice_bob().table[1];
  CHECK(copies0);
  CHECK(copies1);
  CHECK(two.table[0] != two.table[1]);
  CHECK(verify_strategy(Graph(1), ColorLists::uniform(1, 1), clique_strategy(1)).wins);
  CHECK_FALSE(verify_strategy(Graph(1), ColorLists::uniform(1, 2), StrategyProfile{1, {{{1}}}}).wins);
  const Graph k3 = complete_graph(3);
  CHECK(oracle::wins_everywhere(k3, 3, oracle::from_table(k3, 3, clique_strategy(3))));
  for (int n = 1; n <= 6; ++n) CHECK(verify_strategy(complete_graph(n), ColorLists::uniform(n, n), clique_strategy(n)).wins);
}

TEST_CASE("lll bound values") {
  CHECK(lll_bound(2, 1) == 9);
  CHECK(lll_bound(6, 1) == 20);
  CHECK(lll_bound(0, 1) == 3);
}

TEST_CASE("budgets are resource errors, not answers") {
  SolverOptions tiny;
  tiny.budget.max_nodes = 10;
  tiny.probes = 0;
  CHECK_THROWS_AS(players_win(cycle_graph(4), ColorLists::uniform(4, 4), 1, tiny), BudgetExceeded);
}

TEST_CASE("transcripts replay") {
  const Graph c4 = cycle_graph(4);
  const auto lists = ColorLists::uniform(4, 4);
  const auto r = players_win(c4, lists, 1);
  CHECK_FALSE(r.wins);
  CHECK_FALSE(r.strategy.has_value());
  CHECK(replay_transcript(c4, lists, 1, {}, r.transcript));
  SolverOptions two;
  two.threads = 2;
  CHECK(players_win(c4, lists, 1, two).transcript == r.transcript);
}
