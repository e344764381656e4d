#include <doctest.h>

#include <bit>
#include <cmath>

#include "hatguess/error.hpp"
#include "hatguess/extremal.hpp"
#include "hatguess/random.hpp"

using namespace hatguess;

namespace {

// Zarankiewicz by brute force: n x n 0/1 matrices without an l x l all-ones submatrix.
long long zarankiewicz(int n, int l) {
  const int cells = n * n;
  long long best = 0;
  for (std::uint32_t mask = 0; mask < (1u << cells); ++mask) {
    const int m = std::popcount(mask);
    if (m <= best) continue;
    bool has = false;
    for (std::uint32_t rows = 0; rows < (1u << n) && !has; ++rows) {
      if (std::popcount(rows) != l) continue;
      int common = 0;
      for (int c = 0; c < n; ++c) {
        bool all = true;
        for (int r = 0; r < n; ++r)
          if ((rows >> r & 1) && !(mask >> (r * n + c) & 1)) all = false;
        common += all;
      }
      has = common >= l;
    }
    if (!has) best = m;
  }
  return best;
}

}  // namespace

TEST_CASE("ex for one part is l - 1") {
  for (int n = 1; n <= 10; ++n)
    for (int l = 1; l <= n; ++l) CHECK(ex_exact(1, n, l).value == l - 1);
}

TEST_CASE("ex small values, pruned against unpruned") {
  CHECK(ex_exact(2, 2, 2).value == 3);
  CHECK(ex_exact(2, 3, 2).value == 6);
  CHECK(ex_exact(2, 4, 2).value == 9);
  CHECK(ex_exact(2, 3, 1).value == 0);
  CHECK(ex_exact(3, 2, 2).value == 7);
  CHECK(ex_exact(2, 3, 3).value == 8);
  for (auto [r, n, l] : std::vector<std::array<int, 3>>{{2, 2, 2}, {2, 3, 2}, {2, 4, 2}, {3, 2, 2}, {2, 4, 3}, {1, 5, 3}})
    CHECK(ex_exact(r, n, l, true).value == ex_exact(r, n, l, false).value);
}

TEST_CASE("ex agrees with a matrix brute force") {
  for (int n = 2; n <= 4; ++n)
    for (int l = 1; l <= n; ++l) CHECK(ex_exact(2, n, l).value == zarankiewicz(n, l));
}

TEST_CASE("extremal witnesses are K-free and of the stated size") {
  for (auto [r, n, l] : std::vector<std::array<int, 3>>{{2, 3, 2}, {2, 4, 2}, {3, 2, 2}, {1, 6, 4}}) {
    const auto res = ex_exact(r, n, l);
    CHECK(static_cast<long long>(res.extremal.edges.size()) == res.value);
    CHECK_NOTHROW(validate_hypergraph(res.extremal));
    CHECK_FALSE(contains_complete(res.extremal, l).has_value());
  }
}

TEST_CASE("contains_complete finds K_{2,2} in a 4-cycle") {
  PartiteHypergraph c4{2, 3, {{0, 0}, {0, 1}, {1, 0}, {1, 1}}};
  auto k = contains_complete(c4, 2);
  REQUIRE(k.has_value());
  CHECK((*k)[0] == std::vector<int>{0, 1});
  CHECK((*k)[1] == std::vector<int>{0, 1});
  PartiteHypergraph bad{2, 2, {{0, 2}}};
  CHECK_THROWS_AS(validate_hypergraph(bad), ContractError);
}

TEST_CASE("ex budget is enforced") {
  Budget tiny;
  tiny.max_nodes = 5;
  CHECK_THROWS_AS(ex_exact(2, 5, 2, true, tiny), BudgetExceeded);
}

TEST_CASE("erdos threshold ceilings") {
  CHECK(erdos_threshold(2, 9, 2).ceiling() == 81);
  CHECK(erdos_threshold(2, 4, 2).ceiling() == 24);
  CHECK(erdos_threshold(2, 2, 2).ceiling() == 9);  // 3 * 2^1.5 = 8.48..
  CHECK_THROWS_AS(erdos_threshold(1, 7, 3), ContractError);
  for (int n = 2; n <= 30; ++n) {
    const auto t = erdos_threshold(2, n, 2);
    CHECK(t.reached_by(t.ceiling()));
    CHECK_FALSE(t.reached_by(t.ceiling() - 1));
    const double approx = 3 * std::pow(n, 1.5);
    CHECK(t.ceiling() == static_cast<long>(std::ceil(approx - 1e-9)));
  }
  // the known values stay under the threshold
  for (int n = 2; n <= 4; ++n) CHECK_FALSE(erdos_threshold(2, n, 2).reached_by(static_cast<long>(ex_exact(2, n, 2).value)));
}

TEST_CASE("kst bound") {
  CHECK(kst_bound(3, 2).floor() == 6);
  for (int n = 2; n <= 4; ++n)
    for (int l = 2; l <= n; ++l) {
      const auto b = kst_bound(n, l);
      CHECK(b.compare(static_cast<long>(ex_exact(2, n, l).value)) != std::strong_ordering::greater);
      CHECK(b.compare(b.floor()) != std::strong_ordering::greater);
      CHECK(b.compare(b.floor() + 1) == std::strong_ordering::greater);
    }
  CHECK_THROWS_AS(kst_bound(3, 1), ContractError);
}

TEST_CASE("kst auxiliary facts") {
  for (int l = 1; l <= 1000; ++l) CHECK(kst_auxiliary_facts_hold(l));
}

TEST_CASE("set intersection search never lacks a witness when its hypotheses hold") {
  Rng rng(5);
  int checked = 0;
  for (int trial = 0; trial < 300; ++trial) {
    const int N = 4 + static_cast<int>(rng.below(5));
    const int l = 1 + static_cast<int>(rng.below(2));
    const mpq_class w(3, 2);
    const int n = 2 * l * l * 4;  // >= 2 l^2 w^l for l <= 2
    std::vector<std::vector<int>> sets(n);
    for (auto& s : sets)
      for (int y = 0; y < N; ++y)
        if (rng.below(10) < 8) s.push_back(y);
    const auto res = intersection_lemma_search(sets, N, l, w);
    CHECK(res.status != LemmaStatus::NoWitness);
    if (res.status == LemmaStatus::Witness) {
      ++checked;
      CHECK(static_cast<int>(res.indices.size()) == l);
    }
  }
  CHECK(checked > 100);
  CHECK(intersection_lemma_search({{0}, {1}}, 2, 1, 1).status == LemmaStatus::HypothesesFail);
}
