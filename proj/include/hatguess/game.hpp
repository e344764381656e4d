#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "hatguess/graph.hpp"

namespace hatguess {

class Rng;

// Allowed hat colours per vertex (positive, distinct within a list, at most 64 each).
struct ColorLists {
  std::vector<std::vector<int>> lists;

  static ColorLists uniform(int vertex_count, int k);  // colours 1..k everywhere
  int size(Vertex v) const { return static_cast<int>(lists[v].size()); }
  // Position of `color` in v's list, or -1.
  int index_of(Vertex v, int color) const;
};

// Throws ContractError unless the lists fit g and satisfy the invariants.
void validate_lists(const Graph& g, const ColorLists& lists);

// Guess tables. table[v][ctx] is the sorted guess set of v when its neighbours (ascending
// id) wear the colours whose list positions spell ctx in mixed radix, first neighbour most
// significant.
struct StrategyProfile {
  int s = 1;
  std::vector<std::vector<std::vector<int>>> table;
};

// Colour per vertex.
using HatAssignment = std::vector<int>;

// Mixed-radix bookkeeping shared by the verifier, the adversary and the solver.
class GameIndex {
 public:
  GameIndex(const Graph& g, const ColorLists& lists);

  int vertex_count() const { return static_cast<int>(radix_.size()); }
  int list_size(Vertex v) const { return radix_[v]; }
  std::uint64_t context_count(Vertex v) const { return context_count_[v]; }
  // Number of assignments, or 0 when it overflows 2^62.
  std::uint64_t assignment_count() const { return assignment_count_; }
  // ctx of v under an assignment given as list positions.
  std::uint64_t context(Vertex v, const std::vector<int>& positions) const;
  // Neighbour list positions encoded by ctx (ascending neighbour order).
  std::vector<int> decode_context(Vertex v, std::uint64_t ctx) const;
  std::span<const Vertex> neighbors(Vertex v) const { return graph_->neighbors(v); }

 private:
  const Graph* graph_;
  std::vector<int> radix_;
  std::vector<std::uint64_t> context_count_;
  std::uint64_t assignment_count_;
};

// Throws ContractError if the tables do not have exactly the canonical domain or a guess
// set is empty, too large, repeated, or outside the vertex's list.
void validate_strategy(const Graph& g, const ColorLists& lists, const StrategyProfile& strat);

struct VerifyResult {
  bool wins = false;
  std::optional<HatAssignment> counterexample;  // lexicographically least defeating assignment
};

struct Budget {
  std::uint64_t max_nodes = 100'000'000;
  double max_seconds = 60.0;
  // Defaults overridden by HATGUESS_MAX_NODES / HATGUESS_MAX_SECONDS when set.
  static Budget from_environment();
};

VerifyResult verify_strategy(const Graph& g, const ColorLists& lists, const StrategyProfile& strat,
                             Budget budget = {});

// Lexicographically least assignment (vertex 0 most significant, list order) on which
// no guess is right, or nullopt if strat wins. Throws BudgetExceeded when the assignment
// space exceeds budget.max_nodes.
std::optional<HatAssignment> find_defeating_assignment(const Graph& g, const ColorLists& lists,
                                                       const StrategyProfile& strat, Budget budget = {});

// One branch at the root of the solver: vertex `vertex` guesses `color` on the root
// assignment, with the guesses of earlier root branches forbidden.
struct RootBranch {
  Vertex vertex = 0;
  int color = 0;
  std::uint64_t nodes = 0;
  bool wins = false;
  bool operator==(const RootBranch&) const = default;
};

// A randomized restart run before the exhaustive search. Probes only ever find wins
// (verified independently); a loss is always established by the exhaustive phase.
struct Probe {
  std::uint64_t seed = 0;
  std::uint64_t node_limit = 0;
  std::uint64_t nodes = 0;
  bool wins = false;
  bool operator==(const Probe&) const = default;
};

// Exhaustiveness record of a solver run. A run is replayed by solving the same instance
// with the same options and comparing this record field by field.
struct Transcript {
  std::uint64_t nodes = 0;
  std::uint64_t capacity_prunes = 0;
  std::uint64_t dead_ends = 0;
  int max_depth = 0;
  // Refuted without search: the sum over v of s / |L_v| is below 1, so the guesses cannot
  // cover every assignment.
  bool counting_refutation = false;
  std::vector<Probe> probes;
  HatAssignment root_assignment;
  std::vector<RootBranch> root_branches;
  // Disconnected graphs: one record per component (ascending least vertex), stopping at
  // the first component the players win on. The fields above are then unused.
  std::vector<Transcript> components;
  bool operator==(const Transcript&) const = default;
};

struct SolverOptions {
  Budget budget;
  // Randomized restarts (Luby schedule, unit node_limit) tried before the exhaustive search.
  int probes = 48;
  std::uint64_t probe_unit = 2000;
  // Worker threads for root branches; results do not depend on this.
  int threads = 1;
};

struct SolveResult {
  bool wins = false;
  std::optional<StrategyProfile> strategy;  // present iff wins
  Transcript transcript;
};

// Exact decision: can the players guarantee a correct guess with s guesses each?
SolveResult players_win(const Graph& g, const ColorLists& lists, int s, const SolverOptions& options = {});

// Re-runs the search and reports whether the transcript is reproduced exactly.
bool replay_transcript(const Graph& g, const ColorLists& lists, int s, const SolverOptions& options,
                       const Transcript& expected);

// Largest k <= k_cap for which players_win with uniform k-lists (scanning upward and
// stopping at the first loss, by monotonicity).
int hg_exact(const Graph& g, int s, int k_cap, const SolverOptions& options = {});

// K_n with colours 1..n: vertex i guesses the colour making the total sum = i (mod n).
StrategyProfile clique_strategy(int n);

// Least integer strictly above (max_degree + 1) * e * s, using e < 2718281829 / 10^9.
std::int64_t lll_bound(int max_degree, int s);

// Each table entry an independent uniformly random guess set of size min(s, |L_v|).
StrategyProfile random_strategy(const Graph& g, const ColorLists& lists, int s, Rng& rng);

// True if some vertex's guess set under strat contains its own colour.
bool someone_guesses_right(const Graph& g, const ColorLists& lists, const StrategyProfile& strat,
                           const HatAssignment& assignment);

}  // namespace hatguess
