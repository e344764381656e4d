#include "hatguess/game.hpp"

#include <algorithm>
#include <atomic>
#include <bit>
#include <chrono>
#include <cstdlib>
#include <mutex>
#include <set>
#include <string>
#include <thread>

#include "hatguess/error.hpp"
#include "hatguess/random.hpp"

namespace hatguess {

namespace {

constexpr std::uint64_t kOverflow = std::uint64_t{1} << 62;

std::uint64_t mul_capped(std::uint64_t a, std::uint64_t b) {
  if (a == 0 || b == 0) return 0;
  if (a > kOverflow / b) return 0;
  return a * b;
}

using Clock = std::chrono::steady_clock;

// Odometer over list positions, vertex 0 most significant.
bool advance(std::vector<int>& pos, const GameIndex& idx) {
  for (int v = idx.vertex_count() - 1; v >= 0; --v) {
    if (++pos[v] < idx.list_size(v)) return true;
    pos[v] = 0;
  }
  return false;
}

// Guess tables as bitmasks over list positions.
std::vector<std::vector<std::uint64_t>> guess_masks(const Graph& g, const ColorLists& lists,
                                                    const StrategyProfile& strat) {
  validate_strategy(g, lists, strat);
  std::vector<std::vector<std::uint64_t>> masks(g.vertex_count());
  for (Vertex v = 0; v < g.vertex_count(); ++v) {
    masks[v].reserve(strat.table[v].size());
    for (const auto& guesses : strat.table[v]) {
      std::uint64_t m = 0;
      for (int c : guesses) m |= std::uint64_t{1} << lists.index_of(v, c);
      masks[v].push_back(m);
    }
  }
  return masks;
}

HatAssignment colors_of(const ColorLists& lists, const std::vector<int>& pos) {
  HatAssignment a(pos.size());
  for (std::size_t v = 0; v < pos.size(); ++v) a[v] = lists.lists[v][pos[v]];
  return a;
}

std::optional<std::vector<int>> first_defeat(const Graph& g, const ColorLists& lists, const StrategyProfile& strat,
                                             const Budget& budget) {
  const auto masks = guess_masks(g, lists, strat);
  GameIndex idx(g, lists);
  const std::uint64_t total = idx.assignment_count();
  if (total == 0 || total > budget.max_nodes)
    throw BudgetExceeded("assignment space exceeds the enumeration budget");
  const int n = g.vertex_count();
  std::vector<int> pos(n, 0);
  const auto start = Clock::now();
  std::uint64_t visited = 0;
  do {
    if ((++visited & 0xffff) == 0 &&
        std::chrono::duration<double>(Clock::now() - start).count() > budget.max_seconds)
      throw BudgetExceeded("assignment enumeration exceeded the time budget");
    bool hit = false;
    for (Vertex v = 0; v < n && !hit; ++v) hit = (masks[v][idx.context(v, pos)] >> pos[v]) & 1;
    if (!hit) return pos;
  } while (advance(pos, idx));
  return std::nullopt;
}

}  // namespace

ColorLists ColorLists::uniform(int vertex_count, int k) {
  if (vertex_count < 0 || k < 1) throw ContractError("uniform lists need k >= 1");
  ColorLists out;
  std::vector<int> colors(k);
  for (int c = 0; c < k; ++c) colors[c] = c + 1;
  out.lists.assign(vertex_count, colors);
  return out;
}

int ColorLists::index_of(Vertex v, int color) const {
  const auto& l = lists[v];
  auto it = std::find(l.begin(), l.end(), color);
  return it == l.end() ? -1 : static_cast<int>(it - l.begin());
}

void validate_lists(const Graph& g, const ColorLists& lists) {
  if (static_cast<int>(lists.lists.size()) != g.vertex_count())
    throw ContractError("colour lists must have one list per vertex");
  for (Vertex v = 0; v < g.vertex_count(); ++v) {
    const auto& l = lists.lists[v];
    if (l.empty()) throw ContractError("vertex " + std::to_string(v) + " has an empty colour list");
    if (l.size() > 64) throw ContractError("colour lists longer than 64 are not supported");
    std::set<int> seen;
    for (int c : l) {
      if (c < 1) throw ContractError("colours must be positive integers");
      if (!seen.insert(c).second) throw ContractError("vertex " + std::to_string(v) + " lists a colour twice");
    }
  }
}

GameIndex::GameIndex(const Graph& g, const ColorLists& lists) : graph_(&g) {
  validate_lists(g, lists);
  const int n = g.vertex_count();
  radix_.resize(n);
  for (Vertex v = 0; v < n; ++v) radix_[v] = lists.size(v);
  context_count_.resize(n);
  for (Vertex v = 0; v < n; ++v) {
    std::uint64_t c = 1;
    for (Vertex u : g.neighbors(v)) c = mul_capped(c, radix_[u]);
    if (c == 0) throw ContractError("neighbourhood of vertex " + std::to_string(v) + " has too many colourings");
    context_count_[v] = c;
  }
  assignment_count_ = 1;
  for (Vertex v = 0; v < n; ++v) assignment_count_ = mul_capped(assignment_count_, radix_[v]);
}

std::uint64_t GameIndex::context(Vertex v, const std::vector<int>& positions) const {
  std::uint64_t ctx = 0;
  for (Vertex u : graph_->neighbors(v)) ctx = ctx * radix_[u] + positions[u];
  return ctx;
}

std::vector<int> GameIndex::decode_context(Vertex v, std::uint64_t ctx) const {
  auto nb = graph_->neighbors(v);
  std::vector<int> out(nb.size());
  for (std::size_t i = nb.size(); i-- > 0;) {
    out[i] = static_cast<int>(ctx % radix_[nb[i]]);
    ctx /= radix_[nb[i]];
  }
  return out;
}

void validate_strategy(const Graph& g, const ColorLists& lists, const StrategyProfile& strat) {
  GameIndex idx(g, lists);
  if (strat.s < 1) throw ContractError("guess count s must be at least 1");
  if (static_cast<int>(strat.table.size()) != g.vertex_count())
    throw ContractError("strategy must have one table per vertex");
  for (Vertex v = 0; v < g.vertex_count(); ++v) {
    if (strat.table[v].size() != idx.context_count(v))
      throw ContractError("table of vertex " + std::to_string(v) + " has " + std::to_string(strat.table[v].size()) +
                          " entries, expected " + std::to_string(idx.context_count(v)));
    for (const auto& guesses : strat.table[v]) {
      if (guesses.empty() || static_cast<int>(guesses.size()) > strat.s)
        throw ContractError("guess set of vertex " + std::to_string(v) + " has invalid size");
      std::set<int> seen;
      for (int c : guesses) {
        if (lists.index_of(v, c) < 0)
          throw ContractError("vertex " + std::to_string(v) + " guesses colour " + std::to_string(c) +
                              " outside its list");
        if (!seen.insert(c).second) throw ContractError("guess set repeats a colour");
      }
    }
  }
}

Budget Budget::from_environment() {
  Budget b;
  if (const char* s = std::getenv("HATGUESS_MAX_NODES")) b.max_nodes = std::strtoull(s, nullptr, 10);
  if (const char* s = std::getenv("HATGUESS_MAX_SECONDS")) b.max_seconds = std::strtod(s, nullptr);
  return b;
}

VerifyResult verify_strategy(const Graph& g, const ColorLists& lists, const StrategyProfile& strat, Budget budget) {
  VerifyResult out;
  auto defeat = first_defeat(g, lists, strat, budget);
  out.wins = !defeat;
  if (defeat) out.counterexample = colors_of(lists, *defeat);
  return out;
}

std::optional<HatAssignment> find_defeating_assignment(const Graph& g, const ColorLists& lists,
                                                       const StrategyProfile& strat, Budget budget) {
  auto defeat = first_defeat(g, lists, strat, budget);
  if (!defeat) return std::nullopt;
  return colors_of(lists, *defeat);
}

bool someone_guesses_right(const Graph& g, const ColorLists& lists, const StrategyProfile& strat,
                           const HatAssignment& assignment) {
  GameIndex idx(g, lists);
  std::vector<int> pos(g.vertex_count());
  for (Vertex v = 0; v < g.vertex_count(); ++v) {
    pos[v] = lists.index_of(v, assignment[v]);
    if (pos[v] < 0) throw ContractError("assignment colour outside the list of vertex " + std::to_string(v));
  }
  for (Vertex v = 0; v < g.vertex_count(); ++v) {
    const auto& guesses = strat.table[v][idx.context(v, pos)];
    if (std::find(guesses.begin(), guesses.end(), assignment[v]) != guesses.end()) return true;
  }
  return false;
}

// ---------------------------------------------------------------------------------------
// Exact solver. A strategy is built guess by guess. Each node picks an assignment no
// guess covers yet (fewest remaining ways to cover it) and branches over the vertices
// that could still cover it; branch i forbids the covering guesses of branches 0..i-1,
// so the branches partition the strategy space.

namespace {

// Dinic max flow on a small dense-ish network, rebuilt per query.
class MaxFlow {
 public:
  void reset(int nodes) {
    head_.assign(nodes, -1);
    to_.clear();
    cap_.clear();
    next_.clear();
  }
  int add_node() {
    head_.push_back(-1);
    return static_cast<int>(head_.size()) - 1;
  }
  void add_edge(int u, int v, int c) {
    push(u, v, c);
    push(v, u, 0);
  }
  std::int64_t run(int s, int t, std::int64_t enough) {
    std::int64_t flow = 0;
    while (flow < enough && bfs(s, t)) {
      iter_ = head_;
      while (int f = dfs(s, t, 1 << 30)) {
        flow += f;
        if (flow >= enough) break;
      }
    }
    return flow;
  }

 private:
  void push(int u, int v, int c) {
    to_.push_back(v);
    cap_.push_back(c);
    next_.push_back(head_[u]);
    head_[u] = static_cast<int>(to_.size()) - 1;
  }
  bool bfs(int s, int t) {
    level_.assign(head_.size(), -1);
    std::vector<int> queue{s};
    level_[s] = 0;
    for (std::size_t i = 0; i < queue.size(); ++i) {
      int u = queue[i];
      for (int e = head_[u]; e != -1; e = next_[e])
        if (cap_[e] > 0 && level_[to_[e]] < 0) {
          level_[to_[e]] = level_[u] + 1;
          queue.push_back(to_[e]);
        }
    }
    return level_[t] >= 0;
  }
  int dfs(int u, int t, int f) {
    if (u == t) return f;
    for (int& e = iter_[u]; e != -1; e = next_[e]) {
      const int v = to_[e];
      if (cap_[e] <= 0 || level_[v] != level_[u] + 1) continue;
      if (int d = dfs(v, t, std::min(f, cap_[e]))) {
        cap_[e] -= d;
        cap_[e ^ 1] += d;
        return d;
      }
    }
    return 0;
  }
  std::vector<int> head_, to_, cap_, next_, level_, iter_;
};

struct Instance {
  int n = 0;
  int s = 1;
  std::uint32_t assignments = 0;
  std::vector<int> radix;
  std::vector<std::uint32_t> slot_offset;   // per vertex
  std::uint32_t slots = 0;
  std::vector<Vertex> slot_vertex;
  std::vector<std::uint8_t> color;          // [a * n + v]
  std::vector<std::uint32_t> slot;          // [a * n + v]
  std::vector<std::uint32_t> group_offset;  // per slot; group (slot, c) = group_offset[slot] + c
  std::vector<std::vector<std::uint32_t>> members;  // per group
};

Instance build_instance(const Graph& g, const ColorLists& lists, int s, std::uint64_t limit) {
  GameIndex idx(g, lists);
  Instance in;
  in.n = g.vertex_count();
  in.s = s;
  const std::uint64_t total = idx.assignment_count();
  if (total == 0 || total > std::min<std::uint64_t>(limit, std::uint64_t{1} << 26))
    throw BudgetExceeded("assignment space too large for the exact solver");
  in.assignments = static_cast<std::uint32_t>(total);
  in.radix.resize(in.n);
  for (Vertex v = 0; v < in.n; ++v) in.radix[v] = idx.list_size(v);
  std::uint64_t slots = 0;
  for (Vertex v = 0; v < in.n; ++v) {
    in.slot_offset.push_back(static_cast<std::uint32_t>(slots));
    slots += idx.context_count(v);
    if (slots > (std::uint64_t{1} << 28)) throw BudgetExceeded("strategy tables too large for the exact solver");
  }
  in.slots = static_cast<std::uint32_t>(slots);
  in.slot_vertex.resize(in.slots);
  std::uint32_t groups = 0;
  for (Vertex v = 0; v < in.n; ++v)
    for (std::uint64_t c = 0; c < idx.context_count(v); ++c) {
      in.slot_vertex[in.slot_offset[v] + c] = v;
      in.group_offset.push_back(groups);
      groups += in.radix[v];
    }
  in.members.resize(groups);
  in.color.resize(std::size_t{in.assignments} * in.n);
  in.slot.resize(std::size_t{in.assignments} * in.n);
  std::vector<int> pos(in.n, 0);
  std::uint32_t a = 0;
  do {
    for (Vertex v = 0; v < in.n; ++v) {
      const std::uint32_t sl = in.slot_offset[v] + static_cast<std::uint32_t>(idx.context(v, pos));
      in.color[std::size_t{a} * in.n + v] = static_cast<std::uint8_t>(pos[v]);
      in.slot[std::size_t{a} * in.n + v] = sl;
      in.members[in.group_offset[sl] + pos[v]].push_back(a);
    }
    ++a;
  } while (advance(pos, idx));
  return in;
}

struct SharedControl {
  std::atomic<std::uint64_t> nodes{0};
  std::atomic<bool> abort{false};
  std::atomic<std::size_t> first_win{~std::size_t{0}};
  Clock::time_point start = Clock::now();
  Budget budget;
};

class Search {
 public:
  Search(const Instance& in, SharedControl& control, std::size_t branch = 0)
      : in_(in), control_(control), branch_(branch) {
    guessed_.assign(in.slots, 0);
    forbidden_.assign(in.slots, 0);
    cover_.assign(in.assignments, 0);
    uncovered_in_group_.resize(in.members.size());
    for (std::size_t gi = 0; gi < in.members.size(); ++gi)
      uncovered_in_group_[gi] = static_cast<int>(in.members[gi].size());
    uncovered_ = in.assignments;
  }

  void add_guess(std::uint32_t sl, int c) {
    guessed_[sl] |= std::uint64_t{1} << c;
    for (std::uint32_t a : in_.members[in_.group_offset[sl] + c])
      if (cover_[a]++ == 0) {
        --uncovered_;
        for (Vertex u = 0; u < in_.n; ++u) --uncovered_in_group_[group_of(a, u)];
      }
  }

  void remove_guess(std::uint32_t sl, int c) {
    guessed_[sl] &= ~(std::uint64_t{1} << c);
    for (std::uint32_t a : in_.members[in_.group_offset[sl] + c])
      if (--cover_[a] == 0) {
        ++uncovered_;
        for (Vertex u = 0; u < in_.n; ++u) ++uncovered_in_group_[group_of(a, u)];
      }
  }

  void forbid(std::uint32_t sl, int c) { forbidden_[sl] |= std::uint64_t{1} << c; }
  void allow(std::uint32_t sl, int c) { forbidden_[sl] &= ~(std::uint64_t{1} << c); }

  // Probe mode: randomized branch order and a private node cap (ProbeLimit when hit).
  void set_probe(Rng* rng, std::uint64_t node_limit) {
    rng_ = rng;
    probe_limit_ = node_limit;
  }
  struct ProbeLimit {};

  bool solve(int depth) {
    ++local_.nodes;
    if (probe_limit_ && local_.nodes > probe_limit_) throw ProbeLimit{};
    if ((control_.nodes.fetch_add(1, std::memory_order_relaxed) & 0xfff) == 0) check_budget();
    if (control_.abort.load(std::memory_order_relaxed) ||
        control_.first_win.load(std::memory_order_relaxed) < branch_)
      throw Cancelled{};
    local_.max_depth = std::max(local_.max_depth, depth);
    if (uncovered_ == 0) return true;
    const std::int64_t slack = capacity_slack();
    if (slack < 0 || !flow_feasible()) {
      ++local_.capacity_prunes;
      return false;
    }
    std::uint32_t best = 0;
    int best_options = in_.n + 1;
    const std::uint32_t offset = rng_ ? static_cast<std::uint32_t>(rng_->below(in_.assignments)) : 0;
    for (std::uint32_t t = 0; t < in_.assignments && best_options > 1; ++t) {
      const std::uint32_t a = (t + offset) % in_.assignments;
      if (cover_[a]) continue;
      int options = 0;
      for (Vertex u = 0; u < in_.n; ++u) options += can_cover(a, u);
      if (options < best_options) best_options = options, best = a;
    }
    if (best_options == 0) {
      ++local_.dead_ends;
      return false;
    }
    if (slack == 0 && best_options > 1) {
      // No slack: every single-room slot must take a colour of maximal new coverage.
      auto [tight_slot, candidates] = tightest_slot();
      if (tight_slot != kNoSlot && static_cast<int>(candidates.size()) < best_options)
        return branch_on_slot(tight_slot, candidates, depth);
    }
    auto order = options_for(best);
    if (rng_) rng_->shuffle(order);
    std::size_t i = 0;
    bool won = false;
    for (; i < order.size(); ++i) {
      const Vertex v = order[i];
      const std::uint32_t sl = slot(best, v);
      const int c = in_.color[std::size_t{best} * in_.n + v];
      add_guess(sl, c);
      won = solve(depth + 1);
      remove_guess(sl, c);
      if (won) break;
      forbid(sl, c);
    }
    // a win leaves the winning guesses recorded in winning_; undo forbids either way
    for (std::size_t j = 0; j < std::min(i, order.size()); ++j) {
      const Vertex v = order[j];
      allow(slot(best, v), in_.color[std::size_t{best} * in_.n + v]);
    }
    if (won) {
      const Vertex v = order[i];
      winning_.push_back({slot(best, v), in_.color[std::size_t{best} * in_.n + v]});
    }
    return won;
  }

  // Vertices able to cover assignment a, most newly covered assignments first.
  std::vector<Vertex> options_for(std::uint32_t a) const {
    std::vector<Vertex> order;
    for (Vertex u = 0; u < in_.n; ++u)
      if (can_cover(a, u)) order.push_back(u);
    std::stable_sort(order.begin(), order.end(), [&](Vertex x, Vertex y) {
      return uncovered_in_group_[group_of(a, x)] > uncovered_in_group_[group_of(a, y)];
    });
    return order;
  }

  std::uint32_t slot(std::uint32_t a, Vertex v) const { return in_.slot[std::size_t{a} * in_.n + v]; }
  int color(std::uint32_t a, Vertex v) const { return in_.color[std::size_t{a} * in_.n + v]; }

  // Guesses (slot, list position) that completed the winning strategy, innermost first.
  const std::vector<std::pair<std::uint32_t, int>>& winning() const { return winning_; }
  const std::vector<std::uint64_t>& guessed() const { return guessed_; }

  struct Counters {
    std::uint64_t nodes = 0;
    std::uint64_t capacity_prunes = 0;
    std::uint64_t dead_ends = 0;
    int max_depth = 0;
  };
  const Counters& counters() const { return local_; }

  struct Cancelled {};

 private:
  std::uint32_t group_of(std::uint32_t a, Vertex u) const {
    return in_.group_offset[in_.slot[std::size_t{a} * in_.n + u]] + in_.color[std::size_t{a} * in_.n + u];
  }

  bool can_cover(std::uint32_t a, Vertex u) const {
    const std::uint32_t sl = in_.slot[std::size_t{a} * in_.n + u];
    const int c = in_.color[std::size_t{a} * in_.n + u];
    return std::popcount(guessed_[sl]) < in_.s && !((forbidden_[sl] >> c) & 1);
  }

  static constexpr std::uint32_t kNoSlot = ~std::uint32_t{0};

  // Each slot can still newly cover at most the sum of its best remaining groups; the
  // slack is that total minus the number of uncovered assignments.
  std::int64_t capacity_slack() const {
    std::int64_t capacity = 0;
    int top[64];
    for (std::uint32_t sl = 0; sl < in_.slots; ++sl) {
      const int room = in_.s - std::popcount(guessed_[sl]);
      if (room <= 0) continue;
      const int k = in_.radix[in_.slot_vertex[sl]];
      const std::uint64_t blocked = guessed_[sl] | forbidden_[sl];
      const std::uint32_t base = in_.group_offset[sl];
      if (room == 1) {
        int best = 0;
        for (int c = 0; c < k; ++c)
          if (!((blocked >> c) & 1)) best = std::max(best, uncovered_in_group_[base + c]);
        capacity += best;
      } else {
        int m = 0;
        for (int c = 0; c < k; ++c)
          if (!((blocked >> c) & 1)) top[m++] = uncovered_in_group_[base + c];
        const int take = std::min(room, m);
        std::partial_sort(top, top + take, top + m, std::greater<int>());
        for (int j = 0; j < take; ++j) capacity += top[j];
      }
    }
    return capacity - static_cast<std::int64_t>(uncovered_);
  }

  // Relaxation of the remaining covering problem: each slot sends at most its best
  // coverage through its open colour groups, each uncovered assignment absorbs one unit.
  // Any completion of the strategy induces such a flow, so a deficit refutes the node.
  bool flow_feasible() {
    flow_.reset(2);
    const int source = 0, sink = 1;
    std::vector<int> assignment_node(in_.assignments, -1);
    int top[64];
    for (std::uint32_t sl = 0; sl < in_.slots; ++sl) {
      const int room = in_.s - std::popcount(guessed_[sl]);
      if (room <= 0) continue;
      const int k = in_.radix[in_.slot_vertex[sl]];
      const std::uint64_t blocked = guessed_[sl] | forbidden_[sl];
      const std::uint32_t base = in_.group_offset[sl];
      int m = 0;
      for (int c = 0; c < k; ++c)
        if (!((blocked >> c) & 1) && uncovered_in_group_[base + c] > 0) top[m++] = c;
      if (m == 0) continue;
      std::vector<int> sizes(m);
      for (int j = 0; j < m; ++j) sizes[j] = uncovered_in_group_[base + top[j]];
      std::sort(sizes.begin(), sizes.end(), std::greater<int>());
      int capacity = 0;
      for (int j = 0; j < std::min(room, m); ++j) capacity += sizes[j];
      const int slot_node = flow_.add_node();
      flow_.add_edge(source, slot_node, capacity);
      for (int j = 0; j < m; ++j) {
        const int c = top[j];
        const int group_node = flow_.add_node();
        flow_.add_edge(slot_node, group_node, uncovered_in_group_[base + c]);
        for (std::uint32_t a : in_.members[base + c]) {
          if (cover_[a]) continue;
          if (assignment_node[a] < 0) {
            assignment_node[a] = flow_.add_node();
            flow_.add_edge(assignment_node[a], sink, 1);
          }
          flow_.add_edge(group_node, assignment_node[a], 1);
        }
      }
    }
    const auto need = static_cast<std::int64_t>(uncovered_);
    return flow_.run(source, sink, need) >= need;
  }

  // Among slots with one guess left and something still to cover, the one with the fewest
  // colours attaining its maximal new coverage.
  std::pair<std::uint32_t, std::vector<int>> tightest_slot() const {
    std::uint32_t best_slot = kNoSlot;
    std::vector<int> best;
    for (std::uint32_t sl = 0; sl < in_.slots; ++sl) {
      if (in_.s - std::popcount(guessed_[sl]) != 1) continue;
      const int k = in_.radix[in_.slot_vertex[sl]];
      const std::uint64_t blocked = guessed_[sl] | forbidden_[sl];
      const std::uint32_t base = in_.group_offset[sl];
      int top = 0;
      for (int c = 0; c < k; ++c)
        if (!((blocked >> c) & 1)) top = std::max(top, uncovered_in_group_[base + c]);
      if (top == 0) continue;
      std::vector<int> cand;
      for (int c = 0; c < k; ++c)
        if (!((blocked >> c) & 1) && uncovered_in_group_[base + c] == top) cand.push_back(c);
      if (best_slot == kNoSlot || cand.size() < best.size()) {
        best_slot = sl;
        best = std::move(cand);
        if (best.size() == 1) break;
      }
    }
    return {best_slot, best};
  }

  bool branch_on_slot(std::uint32_t sl, std::vector<int> candidates, int depth) {
    if (rng_) rng_->shuffle(candidates);
    for (int c : candidates) {
      add_guess(sl, c);
      const bool won = solve(depth + 1);
      remove_guess(sl, c);
      if (won) {
        winning_.push_back({sl, c});
        return true;
      }
    }
    return false;
  }

  void check_budget() {
    if (control_.nodes.load(std::memory_order_relaxed) > control_.budget.max_nodes) {
      control_.abort = true;
      throw BudgetExceeded("solver exceeded its node budget of " + std::to_string(control_.budget.max_nodes));
    }
    if (std::chrono::duration<double>(Clock::now() - control_.start).count() > control_.budget.max_seconds) {
      control_.abort = true;
      throw BudgetExceeded("solver exceeded its time budget");
    }
  }

  const Instance& in_;
  SharedControl& control_;
  std::size_t branch_;
  std::vector<std::uint64_t> guessed_;
  std::vector<std::uint64_t> forbidden_;
  std::vector<int> cover_;
  std::vector<int> uncovered_in_group_;
  std::uint64_t uncovered_ = 0;
  Counters local_;
  Rng* rng_ = nullptr;
  std::uint64_t probe_limit_ = 0;
  std::vector<std::pair<std::uint32_t, int>> winning_;
  MaxFlow flow_;
};

StrategyProfile extract_strategy(const Instance& in, const Graph& g, const ColorLists& lists,
                                 const std::vector<std::uint64_t>& guessed) {
  StrategyProfile strat;
  strat.s = in.s;
  strat.table.resize(in.n);
  for (Vertex v = 0; v < in.n; ++v) {
    const std::uint32_t begin = in.slot_offset[v];
    const std::uint32_t end = v + 1 < in.n ? in.slot_offset[v + 1] : in.slots;
    for (std::uint32_t sl = begin; sl < end; ++sl) {
      std::vector<int> guesses;
      for (int c = 0; c < in.radix[v]; ++c)
        if ((guessed[sl] >> c) & 1) guesses.push_back(lists.lists[v][c]);
      if (guesses.empty()) guesses.push_back(lists.lists[v][0]);  // unconstrained entry
      std::sort(guesses.begin(), guesses.end());
      strat.table[v].push_back(std::move(guesses));
    }
  }
  (void)g;
  return strat;
}

}  // namespace

namespace {

SolveResult players_win_connected(const Graph& g, const ColorLists& lists, int s, const SolverOptions& options) {
  SolveResult result;

  // counting bound: each vertex covers at most s / |L_v| of all assignments
  {
    GameIndex idx(g, lists);
    std::uint64_t lcm_like = 1;  // compare sum s/k_v < 1 exactly via a common denominator
    bool small = true;
    for (Vertex v = 0; v < g.vertex_count() && small; ++v) {
      lcm_like = mul_capped(lcm_like, lists.size(v));
      small = lcm_like != 0;
    }
    if (small) {
      std::uint64_t numerator = 0;
      for (Vertex v = 0; v < g.vertex_count(); ++v) numerator += lcm_like / lists.size(v) * s;
      if (numerator < lcm_like) {
        result.transcript.counting_refutation = true;
        return result;
      }
    }
  }

  const Instance in = build_instance(g, lists, s, options.budget.max_nodes);
  SharedControl control;
  control.budget = options.budget;

  // Luby restart schedule; every probe is seeded by its index.
  auto luby = [](std::uint64_t i) {
    std::uint64_t size = 1, seq = 0;
    for (; size < i + 1; seq++, size = 2 * size + 1) {
    }
    while (size - 1 != i) {
      size = (size - 1) >> 1;
      seq--;
      i = i % size;
    }
    return std::uint64_t{1} << seq;
  };
  for (int p = 0; p < options.probes; ++p) {
    Rng rng(static_cast<std::uint64_t>(p) + 1);
    Probe probe{static_cast<std::uint64_t>(p) + 1, options.probe_unit * luby(p), 0, false};
    Search search(in, control);
    search.set_probe(&rng, probe.node_limit);
    bool finished = true;
    try {
      probe.wins = search.solve(0);
    } catch (const Search::ProbeLimit&) {
      finished = false;
    }
    probe.nodes = search.counters().nodes;
    result.transcript.probes.push_back(probe);
    result.transcript.nodes += probe.nodes;
    if (probe.wins) {
      for (const auto& [sl, c] : search.winning()) search.add_guess(sl, c);
      result.wins = true;
      result.strategy = extract_strategy(in, g, lists, search.guessed());
      if (!verify_strategy(g, lists, *result.strategy, Budget{~std::uint64_t{0}, 1e9}).wins)
        throw ClaimViolation("solver produced a strategy that loses");
      return result;
    }
    if (finished) break;  // a complete search without a win; the exhaustive phase records it
  }

  Search root(in, control);
  const std::uint32_t a0 = 0;
  result.transcript.root_assignment.resize(in.n);
  for (Vertex v = 0; v < in.n; ++v) result.transcript.root_assignment[v] = lists.lists[v][root.color(a0, v)];
  const auto order = root.options_for(a0);
  const std::size_t branches = order.size();

  struct BranchOutcome {
    bool done = false;
    bool wins = false;
    Search::Counters counters;
    std::vector<std::uint64_t> guessed;
  };
  std::vector<BranchOutcome> outcome(branches);
  std::atomic<std::size_t> next{0};
  std::atomic<std::size_t>& first_win = control.first_win;
  std::mutex error_mutex;
  std::exception_ptr error;

  auto run_branch = [&](std::size_t i) {
    Search search(in, control, i);
    for (std::size_t j = 0; j < i; ++j) search.forbid(search.slot(a0, order[j]), search.color(a0, order[j]));
    const Vertex v = order[i];
    search.add_guess(search.slot(a0, v), search.color(a0, v));
    bool won = search.solve(1);
    BranchOutcome& out = outcome[i];
    out.wins = won;
    out.counters = search.counters();
    if (won) {
      // re-apply the winning guesses found along the successful path
      for (const auto& [sl, c] : search.winning()) search.add_guess(sl, c);
      out.guessed = search.guessed();
      std::size_t cur = first_win.load();
      while (i < cur && !first_win.compare_exchange_weak(cur, i)) {
      }
    }
    out.done = true;
  };

  auto worker = [&] {
    while (true) {
      const std::size_t i = next.fetch_add(1);
      if (i >= branches || i > first_win.load()) return;  // first_win starts above every index
      try {
        run_branch(i);
      } catch (const Search::Cancelled&) {
        return;
      } catch (...) {
        std::lock_guard lock(error_mutex);
        if (!error) error = std::current_exception();
        control.abort = true;
        return;
      }
    }
  };

  const int threads = std::max(1, std::min<int>(options.threads, static_cast<int>(branches)));
  if (threads == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (int t = 0; t < threads; ++t) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }
  if (error) std::rethrow_exception(error);

  const bool any_win = first_win.load() < branches;
  const std::size_t last = any_win ? first_win.load() : branches - 1;
  Transcript& tr = result.transcript;
  tr.nodes += 1;  // the root
  tr.max_depth = 0;
  for (std::size_t i = 0; i < branches && i <= last; ++i) {
    if (!outcome[i].done) throw ClaimViolation("root branch finished out of order");
    const auto& c = outcome[i].counters;
    tr.nodes += c.nodes;
    tr.capacity_prunes += c.capacity_prunes;
    tr.dead_ends += c.dead_ends;
    tr.max_depth = std::max(tr.max_depth, c.max_depth);
    tr.root_branches.push_back({order[i], lists.lists[order[i]][root.color(a0, order[i])], c.nodes, outcome[i].wins});
  }
  if (any_win) {
    result.wins = true;
    result.strategy = extract_strategy(in, g, lists, outcome[first_win.load()].guessed);
    auto check = verify_strategy(g, lists, *result.strategy, Budget{~std::uint64_t{0}, 1e9});
    if (!check.wins) throw ClaimViolation("solver produced a strategy that loses");
  }
  return result;
}

}  // namespace

SolveResult players_win(const Graph& g, const ColorLists& lists, int s, const SolverOptions& options) {
  if (s < 1) throw ContractError("guess count s must be at least 1");
  if (g.vertex_count() == 0) throw ContractError("the game needs at least one player");
  validate_lists(g, lists);
  const auto components = connected_components(g);
  if (components.size() == 1) return players_win_connected(g, lists, s, options);

  // Components cannot see each other: the players win iff they win on some component,
  // since defeating assignments of all components combine into one.
  SolveResult result;
  for (const VertexList& part : components) {
    const InducedSubgraph sub = induced_subgraph(g, part);
    ColorLists sub_lists;
    for (Vertex v : sub.original) sub_lists.lists.push_back(lists.lists[v]);
    SolveResult r = players_win_connected(sub.graph, sub_lists, s, options);
    result.transcript.nodes += r.transcript.nodes;
    result.transcript.components.push_back(std::move(r.transcript));
    if (!r.wins) continue;
    GameIndex idx(g, lists);
    StrategyProfile strat;
    strat.s = s;
    strat.table.resize(g.vertex_count());
    for (Vertex v = 0; v < g.vertex_count(); ++v)
      strat.table[v].assign(idx.context_count(v), std::vector<int>{lists.lists[v][0]});
    // induced subgraphs keep ascending neighbour order, so contexts carry over unchanged
    for (std::size_t i = 0; i < sub.original.size(); ++i) strat.table[sub.original[i]] = r.strategy->table[i];
    result.wins = true;
    result.strategy = std::move(strat);
    if (!verify_strategy(g, lists, *result.strategy, Budget{~std::uint64_t{0}, 1e9}).wins)
      throw ClaimViolation("component strategy does not win on the whole graph");
    break;
  }
  return result;
}

bool replay_transcript(const Graph& g, const ColorLists& lists, int s, const SolverOptions& options,
                       const Transcript& expected) {
  return players_win(g, lists, s, options).transcript == expected;
}

int hg_exact(const Graph& g, int s, int k_cap, const SolverOptions& options) {
  if (k_cap < 1) throw ContractError("k_cap must be at least 1");
  int best = 0;
  for (int k = 1; k <= k_cap; ++k) {
    if (!players_win(g, ColorLists::uniform(g.vertex_count(), k), s, options).wins) break;
    best = k;
  }
  return best;
}

StrategyProfile clique_strategy(int n) {
  if (n < 1) throw ContractError("clique strategy needs n >= 1");
  StrategyProfile strat;
  strat.s = 1;
  strat.table.resize(n);
  for (int i = 0; i < n; ++i) {
    std::uint64_t contexts = 1;
    for (int j = 0; j < n - 1; ++j) contexts *= n;
    for (std::uint64_t ctx = 0; ctx < contexts; ++ctx) {
      // neighbours' colours are 1 + digits of ctx
      std::uint64_t rest = ctx;
      long long sum = 0;
      for (int j = 0; j < n - 1; ++j) {
        sum += static_cast<long long>(rest % n) + 1;
        rest /= n;
      }
      const int c = static_cast<int>((((i - sum) % n) + n) % n);
      strat.table[i].push_back({c == 0 ? n : c});
    }
  }
  return strat;
}

std::int64_t lll_bound(int max_degree, int s) {
  if (max_degree < 0 || s < 1) throw ContractError("lll_bound needs max_degree >= 0 and s >= 1");
  const __int128 numerator = static_cast<__int128>(max_degree + 1) * s * 2718281829LL;
  return static_cast<std::int64_t>(numerator / 1000000000LL) + 1;
}

StrategyProfile random_strategy(const Graph& g, const ColorLists& lists, int s, Rng& rng) {
  GameIndex idx(g, lists);
  StrategyProfile strat;
  strat.s = s;
  strat.table.resize(g.vertex_count());
  for (Vertex v = 0; v < g.vertex_count(); ++v) {
    const int size = std::min(s, lists.size(v));
    for (std::uint64_t ctx = 0; ctx < idx.context_count(v); ++ctx) {
      std::vector<int> pool = lists.lists[v];
      for (int j = 0; j < size; ++j) std::swap(pool[j], pool[j + rng.below(pool.size() - j)]);
      std::vector<int> guesses(pool.begin(), pool.begin() + size);
      std::sort(guesses.begin(), guesses.end());
      strat.table[v].push_back(std::move(guesses));
    }
  }
  return strat;
}

}  // namespace hatguess
