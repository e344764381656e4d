#pragma once

#include <gmpxx.h>

#include <compare>
#include <cstdint>
#include <optional>
#include <vector>

#include "hatguess/game.hpp"

namespace hatguess {

using Tuple = std::vector<int>;  // one index in [0, n) per part

// Balanced r-partite r-uniform hypergraph with parts of size n.
struct PartiteHypergraph {
  int r = 1;
  int n = 0;
  std::vector<Tuple> edges;  // sorted, unique
};

void validate_hypergraph(const PartiteHypergraph& h);

// Index sets L_1..L_r of size l whose full product is in the edge set.
std::optional<std::vector<std::vector<int>>> contains_complete(const PartiteHypergraph& h, int l);

struct ExResult {
  long long value = 0;
  PartiteHypergraph extremal;  // a K-free configuration attaining it
  std::uint64_t nodes = 0;
};

// pruned=false is the plain subset-enumeration oracle (n^r <= 24).
ExResult ex_exact(int r, int n, int l, bool pruned = true, const Budget& budget = {});

// 3 n^(r - 1/l^(r-1)) as an exact comparable.
struct ErdosThreshold {
  int r, n, l;
  bool reached_by(const mpz_class& m) const;  // m >= threshold
  mpz_class ceiling() const;                  // least integer reaching it
};
ErdosThreshold erdos_threshold(int r, int n, int l);

// (l-1)^(1/l) (n-l+1) n^(1-1/l) + (l-1) n as an exact comparable.
struct KstBound {
  int n, l;
  std::strong_ordering compare(const mpz_class& m) const;  // m against the bound
  mpz_class floor() const;
};
KstBound kst_bound(int n, int l);

// Two auxiliary facts used for the base case: (l-1)^(1/l) < 3/2 and 3/2 l^(1-1/l) - l + 1 > 0.
bool kst_auxiliary_facts_hold(int l);

enum class LemmaStatus { HypothesesFail, Witness, NoWitness };

struct IntersectionResult {
  LemmaStatus status;
  std::vector<int> indices;
  long long size = 0;
};

// Exhaustive check of the set-intersection lemma on a small family of subsets of [0, N).
IntersectionResult intersection_lemma_search(const std::vector<std::vector<int>>& sets, int N, int l,
                                             const mpq_class& w);


}  // namespace hatguess
