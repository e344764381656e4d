#include "hatguess/composition.hpp"

#include <algorithm>
#include <cstdint>
#include <deque>
#include <set>

#include "hatguess/error.hpp"
#include "hatguess/extremal.hpp"

namespace hatguess {

namespace {

mpz_class zpow(const mpz_class& b, unsigned long e) {
  mpz_class out;
  mpz_pow_ui(out.get_mpz_t(), b.get_mpz_t(), e);
  return out;
}

unsigned long to_exponent(const mpz_class& e) {
  if (!e.fits_ulong_p()) throw ContractError("exponent too large for exact evaluation");
  return e.get_ui();
}

// First completion (in `order`, list positions ascending, each vertex limited to its first
// limit[v] positions) under which every vertex of `must_miss` guesses wrong. Vertices outside
// `order` keep their positions in `pos`; unassigned entries are -1 and must never be read.
class Completer {
 public:
  Completer(const Graph& g, const ColorLists& lists, const StrategyProfile& strat, const Budget& budget)
      : g_(g), lists_(lists), strat_(strat), idx_(g, lists), budget_(budget) {}

  std::optional<std::vector<int>> first(std::vector<int> pos, const VertexList& order, const VertexList& must_miss,
                                        const std::vector<int>& limit) {
    const int n = g_.vertex_count();
    std::vector<int> rank(n, -2);  // -1: preassigned
    for (Vertex v = 0; v < n; ++v)
      if (pos[v] >= 0) rank[v] = -1;
    for (std::size_t t = 0; t < order.size(); ++t) rank[order[t]] = static_cast<int>(t);
    ready_.assign(order.size(), {});
    for (Vertex v : must_miss) {
      int at = rank[v];
      for (Vertex u : g_.neighbors(v)) at = std::max(at, rank[u]);
      if (rank[v] == -2) throw ContractError("vertex to defeat has no colour");
      for (Vertex u : g_.neighbors(v))
        if (rank[u] == -2) throw ContractError("vertex to defeat sees an uncoloured neighbour");
      if (at == -1) {
        if (!misses(v, pos)) return std::nullopt;
      } else {
        ready_[at].push_back(v);
      }
    }
    order_ = &order;
    limit_ = &limit;
    pos_ = std::move(pos);
    if (!search(0)) return std::nullopt;
    return pos_;
  }

 private:
  bool misses(Vertex v, const std::vector<int>& pos) const {
    const auto& guesses = strat_.table[v][idx_.context(v, pos)];
    const int color = lists_.lists[v][pos[v]];
    return std::find(guesses.begin(), guesses.end(), color) == guesses.end();
  }

  bool search(std::size_t t) {
    if (t == order_->size()) return true;
    if (++nodes_ > budget_.max_nodes) throw BudgetExceeded("adversary completion exceeded its node budget");
    const Vertex v = (*order_)[t];
    for (int p = 0; p < (*limit_)[v]; ++p) {
      pos_[v] = p;
      bool ok = true;
      for (Vertex w : ready_[t])
        if (!misses(w, pos_)) {
          ok = false;
          break;
        }
      if (ok && search(t + 1)) return true;
    }
    pos_[v] = -1;
    return false;
  }

  const Graph& g_;
  const ColorLists& lists_;
  const StrategyProfile& strat_;
  GameIndex idx_;
  Budget budget_;
  std::vector<VertexList> ready_;
  const VertexList* order_ = nullptr;
  const std::vector<int>* limit_ = nullptr;
  std::vector<int> pos_;
  std::uint64_t nodes_ = 0;
};

HatAssignment colors_of(const ColorLists& lists, const std::vector<int>& pos) {
  HatAssignment out(pos.size());
  for (std::size_t v = 0; v < pos.size(); ++v) out[v] = lists.lists[v][pos[v]];
  return out;
}

std::vector<int> list_sizes(const ColorLists& lists) {
  std::vector<int> out;
  for (const auto& l : lists.lists) out.push_back(static_cast<int>(l.size()));
  return out;
}

// Odometer over positions of `vars`, each in [0, radix); returns false after the last.
bool advance(std::vector<int>& pos, const VertexList& vars, const std::vector<int>& radix) {
  for (std::size_t i = vars.size(); i-- > 0;) {
    if (++pos[vars[i]] < radix[vars[i]]) return true;
    pos[vars[i]] = 0;
  }
  return false;
}

std::vector<std::vector<int>> tree_adjacency(const Graph& g, const std::vector<VertexList>& classes,
                                             const std::vector<int>& class_of) {
  std::vector<std::set<int>> adj(classes.size());
  for (const Edge& e : g.edges()) {
    const int a = class_of[e.u], b = class_of[e.v];
    if (a != b) {
      adj[a].insert(b);
      adj[b].insert(a);
    }
  }
  std::vector<std::vector<int>> out;
  for (const auto& s : adj) out.emplace_back(s.begin(), s.end());
  return out;
}

// Vertices of `into` with a neighbour in `from`.
VertexList touching(const Graph& g, const VertexList& from, const VertexList& into) {
  std::set<Vertex> src(from.begin(), from.end());
  VertexList out;
  for (Vertex v : into)
    for (Vertex u : g.neighbors(v))
      if (src.count(u)) {
        out.push_back(v);
        break;
      }
  return out;
}

struct Padded {
  Graph graph;
  ColorLists lists;
  StrategyProfile strat;
  std::vector<VertexList> classes;
  std::vector<int> class_of;
};

// Extra vertices so that every adjacent class pair has exactly r cross-neighbours each way.
// Original vertices ignore the new neighbours; new vertices guess their first colours.
Padded pad(const Graph& g, const ColorLists& lists, const StrategyProfile& strat, const VertexPartition& part,
           int r, int designated, int l, int k) {
  const int n0 = g.vertex_count();
  std::vector<VertexList> classes = part.classes();
  std::vector<int> class_of(n0);
  for (Vertex v = 0; v < n0; ++v) class_of[v] = part.class_of(v);
  std::vector<Edge> edges = g.edges();
  int n = n0;
  auto fresh = [&](int cls) {
    classes[cls].push_back(n);
    class_of.push_back(cls);
    return n++;
  };
  const auto adj = tree_adjacency(g, classes, class_of);
  for (int i = 0; i < static_cast<int>(classes.size()); ++i)
    for (int j : adj[i]) {
      if (j < i) continue;
      const Graph cur(n, edges);
      VertexList in_j = touching(cur, classes[i], classes[j]);
      VertexList in_i = touching(cur, classes[j], classes[i]);
      while (static_cast<int>(in_j.size()) < r) {
        const Vertex x = fresh(j);
        Vertex y;
        if (static_cast<int>(in_i.size()) < r) {
          y = fresh(i);
          in_i.push_back(y);
        } else {
          y = in_i.front();
        }
        edges.push_back({x, y});
        in_j.push_back(x);
      }
      while (static_cast<int>(in_i.size()) < r) {
        const Vertex y = fresh(i);
        edges.push_back({in_j.front(), y});
        in_i.push_back(y);
      }
    }

  Padded out{Graph(n, edges), lists, {}, classes, class_of};
  for (Vertex v = n0; v < n; ++v) {
    const int size = class_of[v] == designated ? l : k;
    std::vector<int> list(size);
    for (int c = 0; c < size; ++c) list[c] = c + 1;
    out.lists.lists.push_back(list);
  }
  const GameIndex idx(out.graph, out.lists);
  const GameIndex orig(g, lists);
  out.strat.s = strat.s;
  out.strat.table.resize(n);
  for (Vertex v = 0; v < n; ++v) {
    auto& table = out.strat.table[v];
    table.resize(idx.context_count(v));
    for (std::uint64_t ctx = 0; ctx < table.size(); ++ctx) {
      if (v >= n0) {
        const int s = std::min(strat.s, out.lists.size(v));
        table[ctx].assign(out.lists.lists[v].begin(), out.lists.lists[v].begin() + s);
        continue;
      }
      const auto digits = idx.decode_context(v, ctx);
      std::vector<int> pos(n0, 0);
      const auto nb = out.graph.neighbors(v);
      for (std::size_t t = 0; t < nb.size(); ++t)
        if (nb[t] < n0) pos[nb[t]] = digits[t];
      table[ctx] = strat.table[v][orig.context(v, pos)];
    }
  }
  return out;
}

}  // namespace

mpz_class lemma22_guess_inflation(const mpz_class& s, const mpz_class& hg_b, int d) {
  if (s < 1 || hg_b < 0 || d < 0) throw ContractError("lemma22_guess_inflation needs s >= 1, hg_b >= 0, d >= 0");
  return s * zpow(hg_b + 1, static_cast<unsigned long>(d));
}

mpz_class theorem25_bound(int r, const mpz_class& l) {
  if (r < 1 || l < 1) throw ContractError("theorem25_bound needs r >= 1 and l >= 1");
  if (r == 1) return l * (l - 1);
  const Power p = theorem25_power(r, l);
  return zpow(p.base, to_exponent(p.exp));
}

Power theorem25_power(int r, const mpz_class& l) {
  if (r < 2 || l < 1) throw ContractError("theorem25_power needs r >= 2 and l >= 1");
  return {3 * l, r * zpow(l, static_cast<unsigned long>(r - 1))};
}

bool pigeonhole_claim_check(int r, const mpz_class& l, const mpz_class& k, const mpz_class& ex_value) {
  if (r < 1) throw ContractError("pigeonhole check needs r >= 1");
  return zpow(l, r) * ex_value < zpow(k, r);
}

void validate_scheme(const Graph& g, const PartitionScheme& scheme) {
  const auto& p = scheme.partition;
  const std::size_t m = p.size();
  if (p.vertex_count() != g.vertex_count()) throw ContractError("partition does not match the graph");
  if (scheme.d.size() != m || scheme.ells.size() != m) throw ContractError("scheme needs one row of d and one l per class");
  for (const auto& row : scheme.d)
    if (row.size() != m) throw ContractError("d must be a square matrix");
  for (const auto& l : scheme.ells)
    if (l < 1) throw ContractError("each l_i must be positive");
  if (scheme.s < 1) throw ContractError("s must be positive");
  for (Vertex v = 0; v < g.vertex_count(); ++v) {
    std::vector<int> count(m, 0);
    for (Vertex u : g.neighbors(v)) ++count[p.class_of(u)];
    const std::size_t i = p.class_of(v);
    for (std::size_t j = i + 1; j < m; ++j)
      if (count[j] > scheme.d[i][j])
        throw ContractError("vertex " + std::to_string(v) + " has more neighbours in class " + std::to_string(j) +
                            " than d allows");
  }
}

ChainResult lemma23_chain(const PartitionScheme& scheme) {
  const std::size_t m = scheme.ells.size();
  if (m == 0 || scheme.d.size() != m) throw ContractError("scheme needs at least one class and a square d");
  ChainResult out;
  out.s_values.resize(m);
  for (std::size_t i = 0; i < m; ++i) {
    mpz_class v = scheme.s;
    for (std::size_t j = i + 1; j < m; ++j) {
      if (scheme.d[i][j] < 0) throw ContractError("d entries must be nonnegative");
      v *= zpow(scheme.ells[j], static_cast<unsigned long>(scheme.d[i][j]));
    }
    out.s_values[i] = v;
  }
  out.bound = *std::max_element(scheme.ells.begin(), scheme.ells.end());
  return out;
}

Lemma22Report lemma22_adversary(const Graph& g, const VertexList& a, const VertexList& b, const StrategyProfile& strat,
                                int k, const SolverOptions& options) {
  const int n = g.vertex_count();
  const ColorLists lists = ColorLists::uniform(n, k);
  validate_strategy(g, lists, strat);
  std::vector<int> side(n, -1);
  for (Vertex v : a) {
    if (v < 0 || v >= n || side[v] != -1) throw ContractError("A and B must partition the vertices");
    side[v] = 0;
  }
  for (Vertex v : b) {
    if (v < 0 || v >= n || side[v] != -1) throw ContractError("A and B must partition the vertices");
    side[v] = 1;
  }
  if (std::count(side.begin(), side.end(), -1) > 0) throw ContractError("A and B must partition the vertices");

  Lemma22Report report;
  const int s = strat.s;
  if (!b.empty()) {
    report.hg_b = hg_exact(induced_subgraph(g, b).graph, s, k, options);
    if (report.hg_b >= k) throw ContractError("HG_s(G[B]) is not below k; B lists would not fit");
  }
  const int b_list = report.hg_b + 1;  // B keeps colours 1..hg_b+1
  for (Vertex v : a) {
    int d = 0;
    for (Vertex u : g.neighbors(v)) d += side[u] == 1;
    report.d = std::max(report.d, d);
  }
  report.s_prime = lemma22_guess_inflation(s, report.hg_b, report.d);

  // union of guesses over every colouring of N(v) ∩ B from the B lists
  const auto ga = induced_subgraph(g, a);
  const ColorLists lists_a = ColorLists::uniform(ga.graph.vertex_count(), k);
  const GameIndex idx(g, lists), idx_a(ga.graph, lists_a);
  StrategyProfile strat_a;
  strat_a.s = report.s_prime < k ? static_cast<int>(report.s_prime.get_si()) : k;
  strat_a.table.resize(ga.graph.vertex_count());
  for (Vertex x = 0; x < ga.graph.vertex_count(); ++x) {
    strat_a.table[x].resize(idx_a.context_count(x));
    const Vertex v = ga.original[x];
    VertexList nb_b;
    for (Vertex u : g.neighbors(v))
      if (side[u] == 1) nb_b.push_back(u);
    std::vector<int> radix(n, b_list);
    for (std::uint64_t ctx = 0; ctx < idx_a.context_count(x); ++ctx) {
      const auto digits = idx_a.decode_context(x, ctx);
      std::vector<int> pos(n, 0);
      const auto nb_a = ga.graph.neighbors(x);
      for (std::size_t t = 0; t < nb_a.size(); ++t) pos[ga.original[nb_a[t]]] = digits[t];
      std::set<int> guesses;
      do {
        const auto& gs = strat.table[v][idx.context(v, pos)];
        guesses.insert(gs.begin(), gs.end());
      } while (advance(pos, nb_b, radix));
      strat_a.table[x][ctx].assign(guesses.begin(), guesses.end());
    }
  }
  const auto defeat_a = find_defeating_assignment(ga.graph, lists_a, strat_a, options.budget);
  if (!defeat_a)
    throw ConstructionFailure("players win on G[A] with " + report.s_prime.get_str() + " guesses and " +
                              std::to_string(k) + " colours; k is not above HG_{s'}(G[A])");

  std::vector<int> pos(n, -1);
  for (Vertex x = 0; x < ga.graph.vertex_count(); ++x) pos[ga.original[x]] = (*defeat_a)[x] - 1;
  std::vector<int> limit(n, b_list);
  Completer completer(g, lists, strat, options.budget);
  VertexList everyone(n);
  for (Vertex v = 0; v < n; ++v) everyone[v] = v;
  // B's guesses now depend on G[B] only; fewer than hg_b+1 colours always lose
  const auto full = completer.first(pos, b, everyone, limit);
  if (!full) throw ClaimViolation("no defeating colouring of B from lists of size HG_s(G[B])+1");
  report.assignment = colors_of(lists, *full);
  if (someone_guesses_right(g, lists, strat, report.assignment))
    throw ClaimViolation("two-part adversary produced an assignment with a correct guess");
  return report;
}

void validate_tree_scheme(const Graph& g, const TreePartitionScheme& scheme) {
  const auto& p = scheme.partition;
  if (p.vertex_count() != g.vertex_count()) throw ContractError("partition does not match the graph");
  if (scheme.r < 1 || scheme.l < 1 || scheme.s < 1) throw ContractError("tree scheme needs r, l, s >= 1");
  const Graph q = quotient(g, p);
  if (!is_connected(q) || !is_acyclic(q)) throw ContractError("quotient graph is not a tree");
  for (const Edge& e : q.edges()) {
    const int a = cross_neighbor_count(g, p[e.u], p[e.v]);
    const int b = cross_neighbor_count(g, p[e.v], p[e.u]);
    if (a > scheme.r || b > scheme.r)
      throw ContractError("classes " + std::to_string(e.u) + " and " + std::to_string(e.v) + " exceed r cross-neighbours");
  }
}

Theorem25Report theorem25_adversary(const Graph& g, const TreePartitionScheme& scheme, const StrategyProfile& strat,
                                    const ColorLists& lists, int designated, std::optional<mpz_class> ex_upper,
                                    const Budget& budget) {
  validate_tree_scheme(g, scheme);
  validate_strategy(g, lists, strat);
  if (strat.s != scheme.s) throw ContractError("strategy guess count differs from the scheme's s");
  const auto& part = scheme.partition;
  const int t = static_cast<int>(part.size());
  if (designated < 0 || designated >= t) throw ContractError("designated class out of range");
  const int r = scheme.r, l = scheme.l;
  int k = -1;
  for (Vertex v = 0; v < g.vertex_count(); ++v) {
    if (part.class_of(v) == designated) {
      if (lists.size(v) != l) throw ContractError("designated class must have lists of exactly l colours");
    } else {
      if (k == -1) k = lists.size(v);
      if (lists.size(v) != k) throw ContractError("lists outside the designated class must share one size k");
    }
  }

  Theorem25Report report;
  std::optional<mpz_class> ex = std::move(ex_upper);
  if (k != -1) {
    if (!ex) {
      if (r == 1)
        ex = mpz_class(l - 1);
      else if (l <= k && zpow(k, r) <= 64)
        ex = mpz_class(static_cast<long>(ex_exact(r, k, l, true, budget).value));
    }
    if (ex) {
      report.ex_value = *ex;
      if (!pigeonhole_claim_check(r, l, k, *ex))
        throw ContractError("k is below the pigeonhole threshold: l^r * ex >= k^r");
    } else if (k <= theorem25_bound(r, l)) {
      throw ContractError("no certified bound on ex^(r)(k,l) for this k; supply one");
    }
  }

  // every class must satisfy HG_s(G[V_j]) < l
  for (int c = 0; c < t; ++c) {
    const Graph gc = induced_subgraph(g, part[c]).graph;
    SolverOptions opts;
    opts.budget = budget;
    if (players_win(gc, ColorLists::uniform(gc.vertex_count(), l), scheme.s, opts).wins)
      throw ContractError("class " + std::to_string(c) + " has HG_s >= l");
  }

  Padded pd = pad(g, lists, strat, part, r, designated, l, k);
  report.padded_vertices = pd.graph.vertex_count() - g.vertex_count();
  const int n = pd.graph.vertex_count();
  const auto adj = tree_adjacency(pd.graph, pd.classes, pd.class_of);
  const auto radix = list_sizes(pd.lists);
  Completer completer(pd.graph, pd.lists, pd.strat, budget);
  const VertexList& vi = pd.classes[designated];

  struct Pending {
    VertexList comp, u, w, rest;
    std::vector<int> colouring;  // positions on u
  };
  std::vector<Pending> pending;
  std::vector<int> pos(n, -1);

  for (int j : adj[designated]) {
    Pending pj;
    std::vector<char> seen(pd.classes.size(), 0);
    seen[designated] = seen[j] = 1;
    std::deque<int> queue{j};
    while (!queue.empty()) {
      const int c = queue.front();
      queue.pop_front();
      pj.comp.insert(pj.comp.end(), pd.classes[c].begin(), pd.classes[c].end());
      for (int x : adj[c])
        if (!seen[x]) {
          seen[x] = 1;
          queue.push_back(x);
        }
    }
    std::sort(pj.comp.begin(), pj.comp.end());
    pj.u = touching(pd.graph, vi, pd.classes[j]);
    pj.w = touching(pd.graph, pd.classes[j], vi);
    for (Vertex v : pj.comp)
      if (!std::binary_search(pj.u.begin(), pj.u.end(), v)) pj.rest.push_back(v);

    // membership[alpha][c]: colouring c of U_j extends to a defeat of C_j given alpha on W_j
    std::vector<std::vector<char>> membership;
    std::vector<int> probe(n, -1);
    for (Vertex v : pj.w) probe[v] = 0;
    do {
      std::vector<char> row;
      for (Vertex v : pj.u) probe[v] = 0;
      do {
        row.push_back(completer.first(probe, pj.rest, pj.comp, radix).has_value());
      } while (advance(probe, pj.u, radix));
      for (Vertex v : pj.u) probe[v] = -1;
      membership.push_back(std::move(row));
    } while (advance(probe, pj.w, radix));

    ComponentStep step;
    step.neighbor_class = j;
    for (Vertex v : pj.u)
      if (v < g.vertex_count()) step.u.push_back(v);
    for (Vertex v : pj.w)
      if (v < g.vertex_count()) step.w.push_back(v);
    step.min_restriction_count = SIZE_MAX;
    for (const auto& row : membership)
      step.min_restriction_count =
          std::min(step.min_restriction_count, static_cast<std::size_t>(std::count(row.begin(), row.end(), 1)));
    const std::size_t cols = membership.front().size();
    std::optional<std::size_t> chosen;
    for (std::size_t c = 0; c < cols; ++c) {
      const bool all = std::all_of(membership.begin(), membership.end(), [&](const auto& row) { return row[c] != 0; });
      if (all) {
        ++step.intersection_count;
        if (!chosen) chosen = c;
      }
    }
    if (k != -1 && ex) {
      step.claimed_min = zpow(k, r) - report.ex_value;
      if (mpz_class(static_cast<unsigned long>(step.min_restriction_count)) < *step.claimed_min)
        throw ClaimViolation("some A_{alpha,j} has fewer than k^r - ex colourings");
    }
    if (!chosen)
      throw ConstructionFailure("empty intersection of restriction sets at the component through class " +
                                std::to_string(j) + " (minimum |A_alpha| = " +
                                std::to_string(step.min_restriction_count) + ")");
    // decode the lexicographically least colouring of U_j in the intersection
    std::size_t code = *chosen;
    pj.colouring.assign(pj.u.size(), 0);
    for (std::size_t q = pj.u.size(); q-- > 0;) {
      pj.colouring[q] = static_cast<int>(code % radix[pj.u[q]]);
      code /= radix[pj.u[q]];
    }
    report.steps.push_back(std::move(step));
    pending.push_back(std::move(pj));
  }

  for (const auto& pj : pending)
    for (std::size_t q = 0; q < pj.u.size(); ++q) pos[pj.u[q]] = pj.colouring[q];
  // the designated class now sees only itself and the fixed U_j
  auto with_vi = completer.first(pos, vi, vi, radix);
  if (!with_vi) throw ClaimViolation("no defeating colouring of the designated class from its l-lists");
  pos = *with_vi;
  for (const auto& pj : pending) {
    auto extended = completer.first(pos, pj.rest, pj.comp, radix);
    if (!extended) throw ClaimViolation("chosen U_j colouring does not extend for the realised alpha");
    pos = *extended;
  }

  const HatAssignment padded = colors_of(pd.lists, pos);
  if (someone_guesses_right(pd.graph, pd.lists, pd.strat, padded))
    throw ClaimViolation("tree-partition adversary produced a correct guess on the padded graph");
  report.assignment.assign(padded.begin(), padded.begin() + g.vertex_count());
  if (someone_guesses_right(g, lists, strat, report.assignment))
    throw ClaimViolation("tree-partition adversary produced a correct guess");
  return report;
}

}  // namespace hatguess
