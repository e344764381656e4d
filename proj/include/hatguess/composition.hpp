#pragma once

#include <gmpxx.h>

#include <optional>
#include <vector>

#include "hatguess/bounds.hpp"
#include "hatguess/game.hpp"
#include "hatguess/graph.hpp"

namespace hatguess {

// s * (hg_b + 1)^d
mpz_class lemma22_guess_inflation(const mpz_class& s, const mpz_class& hg_b, int d);

// l(l-1) for r = 1, (3l)^(r l^(r-1)) for r >= 2. Inclusive bound on HG_s.
mpz_class theorem25_bound(int r, const mpz_class& l);
// The r >= 2 value as an unevaluated power.
Power theorem25_power(int r, const mpz_class& l);

// l^r * ex_value < k^r
bool pigeonhole_claim_check(int r, const mpz_class& l, const mpz_class& k, const mpz_class& ex_value);

struct PartitionScheme {
  VertexPartition partition;
  std::vector<std::vector<int>> d;  // d[i][j] for i < j; other entries ignored
  std::vector<mpz_class> ells;
  mpz_class s = 1;
};

// Checks d[i][j] >= max over v in V_i of |N(v) ∩ V_j| for i < j.
void validate_scheme(const Graph& g, const PartitionScheme& scheme);

struct ChainResult {
  std::vector<mpz_class> s_values;  // s_i = s * prod_{j>i} l_j^{d_ij}; s_k = s
  mpz_class bound;                  // max l_i, exclusive bound on HG_s
};

// Symbolic; the partition is only used for its size.
ChainResult lemma23_chain(const PartitionScheme& scheme);

struct Lemma22Report {
  HatAssignment assignment;
  int hg_b = 0;       // HG_s(G[B]) as computed by the solver
  int d = 0;          // max neighbours in B of a vertex in A
  mpz_class s_prime;  // s (hg_b + 1)^d
};

// Defeats strat (uniform colours 1..k on g) following the two-part construction.
// ConstructionFailure when the A-side search fails (k not above HG_{s'}(G[A])).
Lemma22Report lemma22_adversary(const Graph& g, const VertexList& a, const VertexList& b, const StrategyProfile& strat,
                                int k, const SolverOptions& options = {});

struct TreePartitionScheme {
  VertexPartition partition;
  int r = 1;
  int l = 2;
  int s = 1;
};

// Quotient is a tree and |N(V_i) ∩ V_j| <= r for every pair.
void validate_tree_scheme(const Graph& g, const TreePartitionScheme& scheme);

struct ComponentStep {
  int neighbor_class = 0;
  VertexList u;  // U_j (original ids; padding excluded)
  VertexList w;  // W_j
  std::size_t min_restriction_count = 0;  // min over alpha of |A_{alpha,j}| (padded graph)
  std::size_t intersection_count = 0;     // |∩_alpha A_{alpha,j}|
  std::optional<mpz_class> claimed_min;   // k^r - ex when ex is known exactly
};

struct Theorem25Report {
  HatAssignment assignment;
  int padded_vertices = 0;
  mpz_class ex_value;  // exact or certified upper bound used for the pigeonhole check
  std::vector<ComponentStep> steps;
};

// lists: l colours on every vertex of the designated class, k colours elsewhere.
// ex_upper: certified upper bound on ex^(r)(k, l); computed when omitted and feasible.
Theorem25Report theorem25_adversary(const Graph& g, const TreePartitionScheme& scheme, const StrategyProfile& strat,
                                    const ColorLists& lists, int designated,
                                    std::optional<mpz_class> ex_upper = std::nullopt, const Budget& budget = {});

}  // namespace hatguess
