// hatguess command-line frontend. stdout carries one JSON document {"manifest", "result"}
// (or {"manifest", "error"}); stderr carries diagnostics.
#include <CLI11.hpp>

#include <algorithm>
#include <functional>
#include <iostream>
#include <optional>
#include <sstream>

#include "hatguess/bounds.hpp"
#include "hatguess/composition.hpp"
#include "hatguess/decomposition.hpp"
#include "hatguess/error.hpp"
#include "hatguess/extremal.hpp"
#include "hatguess/game.hpp"
#include "hatguess/generators.hpp"
#include "hatguess/io.hpp"
#include "hatguess/random.hpp"

using namespace hatguess;

namespace {

constexpr const char* kVersion = "hatguess 1.0.0";

enum Exit { Ok = 0, BudgetHit = 2, BadInput = 3, Violated = 4 };

struct Globals {
  bool pretty = false;
  int threads = 1;
  std::optional<std::uint64_t> max_nodes;
  std::optional<double> max_seconds;
};

// Records what went into a run, for the manifest.
struct Run {
  Json digests = Json::object();
  std::optional<std::uint64_t> seed;
  Budget budget;

  std::string input(const std::string& name, const std::string& path) {
    std::string text = read_input(path);
    digests[name] = sha256_hex(text);
    return text;
  }
  void literal(const std::string& name, const std::string& text) { digests[name] = sha256_hex(text); }
};

struct GraphInput {
  std::string graph6;
  std::string path;
  std::string format = "graph6";
};

void add_graph_input(CLI::App* app, GraphInput& in) {
  app->add_option("--graph6", in.graph6, "graph in graph6 form");
  app->add_option("--input", in.path, "graph file, or - for stdin");
  app->add_option("--format", in.format, "input format")->check(CLI::IsMember({"graph6", "json"}));
}

Graph load_graph(const GraphInput& in, Run& run) {
  if (!in.graph6.empty() && !in.path.empty()) throw ContractError("give either --graph6 or --input, not both");
  if (!in.graph6.empty()) {
    run.literal("graph", in.graph6);
    return parse_graph6(in.graph6);
  }
  if (in.path.empty()) throw ContractError("a graph is required (--graph6 or --input)");
  const std::string text = run.input("graph", in.path);
  if (in.format == "graph6") return parse_graph6(text);
  return graph_from_json(Json::parse(text));
}

Json load_json(Run& run, const std::string& name, const std::string& path) {
  const std::string text = run.input(name, path);
  try {
    return Json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(name + ": " + e.what(), e.byte);
  }
}

ColorLists load_lists(const Graph& g, Run& run, int k, const std::string& path) {
  if (!path.empty()) {
    auto lists = lists_from_json(load_json(run, "lists", path));
    validate_lists(g, lists);
    return lists;
  }
  if (k < 1) throw ContractError("give --k or --lists");
  return ColorLists::uniform(g.vertex_count(), k);
}

StrategyProfile load_or_draw_strategy(const Graph& g, const ColorLists& lists, Run& run, const std::string& path,
                                      std::optional<std::uint64_t> seed, int s) {
  if (!path.empty()) {
    auto strat = strategy_from_json(load_json(run, "strategy", path));
    validate_strategy(g, lists, strat);
    return strat;
  }
  if (!seed) throw ContractError("give --strategy or --seed for a random strategy");
  run.seed = seed;
  Rng rng(*seed);
  return random_strategy(g, lists, s, rng);
}

VertexList parse_ints(const std::string& text) {
  VertexList out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ','))
    if (!item.empty()) {
      try {
        out.push_back(std::stoi(item));
      } catch (const std::exception&) {
        throw ContractError("not an integer: " + item);
      }
    }
  return out;
}

// "0,1;2,3" -> {{0,1},{2,3}}
std::vector<VertexList> parse_classes(const std::string& text) {
  std::vector<VertexList> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ';')) out.push_back(parse_ints(item));
  return out;
}

Json log2_summary(const mpz_class& v) {
  Json j;
  j["bit_length"] = mpz_sizeinbase(v.get_mpz_t(), 2);
  j["log2_upper"] = log2_upper(mpq_class(v)).get_d() + 1e-9;  // display only; the bit length is exact
  return j;
}

Json big(const mpz_class& v, bool log2_only) {
  if (log2_only) return log2_summary(v);
  Json j = log2_summary(v);
  j["value"] = v.get_str();
  return j;
}

Json tower_or_null(const std::optional<TowerValue>& t) { return t ? to_json(*t) : Json(nullptr); }

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Hat guessing numbers: exact solver, adversaries, decompositions and bounds"};
  app.option_defaults()->always_capture_default();
  app.require_subcommand(1);
  Globals globals;
  app.add_flag("--pretty", globals.pretty, "indented JSON");
  app.add_option("--threads", globals.threads, "worker threads")->check(CLI::PositiveNumber);
  app.add_option("--max-nodes", globals.max_nodes, "search node budget");
  app.add_option("--max-seconds", globals.max_seconds, "wall-time budget per search");

  std::function<Json(Run&)> handler;
  auto leaf = [&](CLI::App* sub, std::function<Json(Run&)> f) {
    sub->fallthrough();
    sub->callback([&handler, f] { handler = f; });
  };

  // solve
  auto* solve = app.add_subcommand("solve", "exact hat guessing number or a single game");
  GraphInput solve_in;
  int solve_s = 1, solve_cap = 0, solve_k = 0, solve_probes = 48;
  std::string solve_lists;
  bool emit_strategy = false;
  add_graph_input(solve, solve_in);
  solve->add_option("--s", solve_s, "guesses per player")->check(CLI::PositiveNumber);
  solve->add_option("--cap", solve_cap, "largest k tried");
  solve->add_option("--k", solve_k, "colours per vertex for a single game");
  solve->add_option("--lists", solve_lists, "colour lists file for a single game");
  solve->add_option("--probes", solve_probes, "randomized restarts before the exhaustive search");
  solve->add_flag("--emit-strategy", emit_strategy, "include the winning strategy");
  SolverOptions solver;
  leaf(solve, [&](Run& run) {
    const Graph g = load_graph(solve_in, run);
    solver.budget = run.budget;
    solver.threads = globals.threads;
    solver.probes = solve_probes;
    Json out;
    if (solve_cap > 0) {
      if (solve_k > 0 || !solve_lists.empty()) throw ContractError("--cap excludes --k and --lists");
      const int hg = hg_exact(g, solve_s, solve_cap, solver);
      out["hg"] = hg;
      out["at_cap"] = hg == solve_cap;
      return out;
    }
    const ColorLists lists = load_lists(g, run, solve_k, solve_lists);
    const SolveResult r = players_win(g, lists, solve_s, solver);
    out["wins"] = r.wins;
    if (emit_strategy && r.strategy) out["strategy"] = to_json(*r.strategy);
    out["transcript"] = to_json(r.transcript);
    return out;
  });

  // verify
  auto* verify = app.add_subcommand("verify", "check a strategy or an adversary assignment");
  verify->require_subcommand(1);
  GraphInput ver_in;
  int ver_k = 0;
  std::string ver_lists, ver_strategy, ver_assignment;
  auto* ver_strat = verify->add_subcommand("strategy", "does the strategy win on every assignment?");
  auto* ver_adv = verify->add_subcommand("adversary", "does the assignment defeat the strategy?");
  for (auto* sub : {ver_strat, ver_adv}) {
    add_graph_input(sub, ver_in);
    sub->add_option("--k", ver_k, "colours per vertex");
    sub->add_option("--lists", ver_lists, "colour lists file");
    sub->add_option("--strategy", ver_strategy, "strategy file")->required();
  }
  ver_adv->add_option("--assignment", ver_assignment, "assignment file")->required();
  leaf(ver_strat, [&](Run& run) {
    const Graph g = load_graph(ver_in, run);
    const ColorLists lists = load_lists(g, run, ver_k, ver_lists);
    const auto strat = strategy_from_json(load_json(run, "strategy", ver_strategy));
    const VerifyResult r = verify_strategy(g, lists, strat, run.budget);
    Json out;
    out["wins"] = r.wins;
    out["counterexample"] = r.counterexample ? Json(*r.counterexample) : Json(nullptr);
    return out;
  });
  leaf(ver_adv, [&](Run& run) {
    const Graph g = load_graph(ver_in, run);
    const ColorLists lists = load_lists(g, run, ver_k, ver_lists);
    const auto strat = strategy_from_json(load_json(run, "strategy", ver_strategy));
    validate_strategy(g, lists, strat);
    const auto a = assignment_from_json(load_json(run, "assignment", ver_assignment));
    if (static_cast<int>(a.size()) != g.vertex_count()) throw ContractError("assignment size differs from the graph");
    for (Vertex v = 0; v < g.vertex_count(); ++v)
      if (lists.index_of(v, a[v]) < 0) throw ContractError("assignment colour outside the list of " + std::to_string(v));
    Json out;
    out["defeats"] = !someone_guesses_right(g, lists, strat, a);
    return out;
  });

  // adversary
  auto* adversary = app.add_subcommand("adversary", "constructive defeating assignments");
  adversary->require_subcommand(1);
  GraphInput adv_in;
  int adv_k = 0, adv_s = 1, adv_r = 1, adv_l = 2, adv_designated = 0;
  std::optional<std::uint64_t> adv_seed;
  std::string adv_strategy, adv_a, adv_b, adv_classes, adv_partition, adv_ex;
  auto* adv22 = adversary->add_subcommand("lemma22", "split into A and B and defeat the strategy");
  auto* adv25 = adversary->add_subcommand("theorem25", "tree-like partition adversary");
  for (auto* sub : {adv22, adv25}) {
    add_graph_input(sub, adv_in);
    sub->add_option("--k", adv_k, "colours per vertex")->required();
    sub->add_option("--s", adv_s, "guesses per player (random strategies)")->check(CLI::PositiveNumber);
    sub->add_option("--strategy", adv_strategy, "strategy file");
    sub->add_option("--seed", adv_seed, "seed for a random strategy");
  }
  adv22->add_option("--a", adv_a, "comma-separated A")->required();
  adv22->add_option("--b", adv_b, "comma-separated B")->required();
  adv25->add_option("--classes", adv_classes, "classes as 0,1;2,3");
  adv25->add_option("--partition", adv_partition, "partition file");
  adv25->add_option("--r", adv_r, "cross-neighbour bound")->check(CLI::PositiveNumber);
  adv25->add_option("--l", adv_l, "colours on the designated class");
  adv25->add_option("--designated", adv_designated, "class receiving l colours");
  adv25->add_option("--ex-upper", adv_ex, "certified upper bound on ex(k, l)");
  leaf(adv22, [&](Run& run) {
    const Graph g = load_graph(adv_in, run);
    const auto lists = ColorLists::uniform(g.vertex_count(), adv_k);
    const auto strat = load_or_draw_strategy(g, lists, run, adv_strategy, adv_seed, adv_s);
    SolverOptions opts;
    opts.budget = run.budget;
    opts.threads = globals.threads;
    const auto rep = lemma22_adversary(g, parse_ints(adv_a), parse_ints(adv_b), strat, adv_k, opts);
    Json out;
    out["assignment"] = rep.assignment;
    out["hg_b"] = rep.hg_b;
    out["d"] = rep.d;
    out["s_prime"] = rep.s_prime.get_str();
    out["defeats"] = !someone_guesses_right(g, lists, strat, rep.assignment);
    return out;
  });
  leaf(adv25, [&](Run& run) {
    const Graph g = load_graph(adv_in, run);
    if (adv_classes.empty() == adv_partition.empty()) throw ContractError("give exactly one of --classes, --partition");
    VertexPartition part = adv_partition.empty()
                               ? VertexPartition(g.vertex_count(), parse_classes(adv_classes))
                               : partition_from_json(load_json(run, "partition", adv_partition));
    if (!adv_classes.empty()) run.literal("classes", adv_classes);
    if (adv_designated < 0 || adv_designated >= static_cast<int>(part.size()))
      throw ContractError("designated class out of range");
    ColorLists lists = ColorLists::uniform(g.vertex_count(), adv_k);
    for (Vertex v : part[adv_designated]) {
      lists.lists[v].clear();
      for (int c = 1; c <= adv_l; ++c) lists.lists[v].push_back(c);
    }
    const auto strat = load_or_draw_strategy(g, lists, run, adv_strategy, adv_seed, adv_s);
    TreePartitionScheme scheme{part, adv_r, adv_l, adv_s};
    std::optional<mpz_class> ex;
    if (!adv_ex.empty()) ex = mpz_class(adv_ex);
    const auto rep = theorem25_adversary(g, scheme, strat, lists, adv_designated, ex, run.budget);
    Json out;
    out["assignment"] = rep.assignment;
    out["padded_vertices"] = rep.padded_vertices;
    out["ex_value"] = rep.ex_value.get_str();
    Json steps = Json::array();
    for (const auto& st : rep.steps) {
      Json js;
      js["neighbor_class"] = st.neighbor_class;
      js["u"] = st.u;
      js["w"] = st.w;
      js["min_restriction_count"] = st.min_restriction_count;
      js["intersection_count"] = st.intersection_count;
      js["claimed_min"] = st.claimed_min ? Json(st.claimed_min->get_str()) : Json(nullptr);
      steps.push_back(js);
    }
    out["steps"] = steps;
    out["defeats"] = !someone_guesses_right(g, lists, strat, rep.assignment);
    return out;
  });

  // decompose
  auto* decompose = app.add_subcommand("decompose", "vertex partitions with checked postconditions");
  GraphInput dec_in;
  std::string method, dec_root;
  decompose->add_option("method,--method", method, "decomposition")
      ->required()
      ->check(CLI::IsMember({"petunia", "outerplanar", "layered", "genus-peel"}));
  add_graph_input(decompose, dec_in);
  decompose->add_option("--root", dec_root, "root edge u,v for the outerplanar split");
  leaf(decompose, [&](Run& run) -> Json {
    Json out;
    if (method == "petunia") {
      const Graph g = load_graph(dec_in, run);
      const auto cert = is_petunia(g);
      out["petunia"] = cert.has_value();
      if (cert) {
        out["certificate"] = to_json(*cert);
        out["partition"] = to_json(petunia_forest_partition(g, *cert));
      }
      return out;
    }
    if (dec_in.path.empty()) throw ContractError(method + " needs a JSON --input document");
    const Json doc = load_json(run, "input", dec_in.path);
    if (method == "outerplanar") {
      const auto og = outerplane_from_json(doc);
      Edge root;
      if (dec_root.empty()) {
        const auto edges = og.graph.edges();
        if (edges.empty()) throw ContractError("graph has no edge to root the split at");
        root = edges.front();
      } else {
        const auto uv = parse_ints(dec_root);
        if (uv.size() != 2) throw ContractError("--root needs u,v");
        root = {uv[0], uv[1]};
      }
      const auto split = outerplanar_split(og, root);
      out["root"] = {root.u, root.v};
      out["a"] = split.a;
      out["b"] = split.b;
      out["certificate"] = to_json(split.certificate);
      Json completion = Json::array();
      for (const Edge& e : split.completion) completion.push_back({e.u, e.v});
      out["completion"] = completion;
      return out;
    }
    if (method == "layered") {
      const auto lp = layered_from_json(doc);
      const auto coloring = layered_five_coloring(lp);
      const auto c = measure_claims(layered_graph(lp), coloring);
      out["coloring"] = to_json(coloring);
      out["claims"] = {{"green_outerplanar", c.green_outerplanar},   {"green_other_max", c.green_other_max},
                       {"blue_outerplanar", c.blue_outerplanar},     {"blue_irp_max", c.blue_irp_max},
                       {"indigo_outerplanar", c.indigo_outerplanar}, {"indigo_rp_max", c.indigo_rp_max},
                       {"red_petunia", c.red_petunia},               {"red_pink_max", c.red_pink_max},
                       {"pink_degree_max", c.pink_degree_max}};
      return out;
    }
    const auto rs = rotation_from_json(doc);
    const auto peel = genus_peel(rs, {run.budget.max_nodes});
    out["cycle"] = peel.cycle;
    out["a"] = peel.a;
    out["b"] = peel.b;
    out["max_cycle_neighbors"] = peel.max_cycle_neighbors;
    out["d_check"] = peel.d_check;
    return out;
  });

  // bound
  auto* bound = app.add_subcommand("bound", "exact or certified bound formulas");
  std::string theorem;
  long bound_s = 1;
  int bound_g = 0, bound_r = 1;
  std::string bound_l = "2";
  bool log2_only = false;
  bound->add_option("--theorem", theorem, "3.1 petunia, 3.4 outerplanar, 4.2 layered, 5.2 genus, 2.5 tree")
      ->required()
      ->check(CLI::IsMember({"3.1", "3.4", "4.2", "5.2", "2.5"}));
  bound->add_option("--s", bound_s, "guesses per player")->check(CLI::PositiveNumber);
  bound->add_option("--g", bound_g, "genus")->check(CLI::NonNegativeNumber);
  bound->add_option("--r", bound_r, "cross-neighbour bound")->check(CLI::PositiveNumber);
  bound->add_option("--l", bound_l, "class bound l");
  bound->add_flag("--log2", log2_only, "report only the binary logarithm");
  leaf(bound, [&](Run&) -> Json {
    Json out;
    if (theorem == "3.1") return big(petunia_bound(bound_s), log2_only);
    if (theorem == "3.4") {
      const mpz_class v = outerplanar_bound(bound_s);
      out = big(v, log2_only);
      mpz_class cap;
      mpz_ui_pow_ui(cap.get_mpz_t(), 2, 125000);
      out["below_2_pow_125000"] = v < cap;
      return out;
    }
    if (theorem == "5.2") {
      out = big(genus_bound_param(bound_g, mpz_class(bound_s)), log2_only);
      out["meaning"] = "guess count at which the planar bound is evaluated";
      return out;
    }
    if (theorem == "2.5") {
      mpz_class l;
      if (l.set_str(bound_l, 10) != 0 || l < 2) throw ContractError("--l must be an integer >= 2");
      return big(theorem25_bound(bound_r, l), log2_only);
    }
    const LayeredChain chain = layered_chain(bound_s);
    Json entries = Json::array();
    for (const auto& e : chain.entries) {
      Json je;
      je["name"] = e.name;
      je["exact"] = e.exact ? Json(e.exact->get_str()) : Json(nullptr);
      je["upper"] = to_json(e.upper);
      je["claimed"] = tower_or_null(e.claimed);
      je["claim_holds"] = e.claim_holds;
      entries.push_back(je);
    }
    out["entries"] = entries;
    out["final_bound"] = to_json(chain.final_bound);
    out["certified"] = chain.certified;
    return out;
  });

  // extremal
  auto* extremal = app.add_subcommand("extremal", "partite hypergraph Turan numbers");
  extremal->require_subcommand(1);
  int ex_r = 1, ex_n = 1, ex_l = 1;
  std::string ex_m;
  bool unpruned = false;
  auto* ex_ex = extremal->add_subcommand("ex", "exact ex(r, n, l)");
  auto* ex_th = extremal->add_subcommand("threshold", "density threshold 3 n^(r - 1/l^(r-1))");
  auto* ex_kst = extremal->add_subcommand("kst", "bipartite bound for r = 2");
  for (auto* sub : {ex_ex, ex_th}) sub->add_option("--r", ex_r, "uniformity")->required();
  for (auto* sub : {ex_ex, ex_th, ex_kst}) {
    sub->add_option("--n", ex_n, "part size")->required();
    sub->add_option("--l", ex_l, "part size of the forbidden copy")->required();
  }
  ex_ex->add_flag("--unpruned", unpruned, "plain enumeration oracle");
  for (auto* sub : {ex_th, ex_kst}) sub->add_option("--m", ex_m, "edge count to compare");
  leaf(ex_ex, [&](Run& run) {
    const auto r = ex_exact(ex_r, ex_n, ex_l, !unpruned, run.budget);
    Json out;
    out["ex"] = r.value;
    Json edges = Json::array();
    for (const auto& e : r.extremal.edges) edges.push_back(e);
    out["extremal_edges"] = edges;
    out["nodes"] = r.nodes;
    return out;
  });
  leaf(ex_th, [&](Run&) {
    const auto t = erdos_threshold(ex_r, ex_n, ex_l);
    Json out;
    out["ceiling"] = t.ceiling().get_str();
    if (!ex_m.empty()) out["reached_by_m"] = t.reached_by(mpz_class(ex_m));
    return out;
  });
  leaf(ex_kst, [&](Run&) {
    const auto k = kst_bound(ex_n, ex_l);
    Json out;
    out["floor"] = k.floor().get_str();
    if (!ex_m.empty()) {
      const auto c = k.compare(mpz_class(ex_m));
      out["m_vs_bound"] = c < 0 ? "below" : (c > 0 ? "above" : "equal");
    }
    return out;
  });

  // generate
  auto* generate = app.add_subcommand("generate", "deterministic and seeded random instances");
  std::string family, gen_format = "graph6";
  int gen_n = 4, gen_levels = 2, gen_max = 6, gen_rows = 3, gen_cols = 3;
  double gen_p = 0.5, gen_keep = 0.5;
  std::optional<std::uint64_t> gen_seed;
  generate->add_option("--family", family, "instance family")
      ->required()
      ->check(CLI::IsMember({"path", "cycle", "complete", "star", "petal", "tree", "gnp", "maximal-outerplanar",
                             "outerplanar", "petunia", "layered", "planar-triangulation", "torus-grid",
                             "toroidal-k5"}));
  generate->add_option("--n", gen_n, "vertex count");
  generate->add_option("--seed", gen_seed, "seed (required for random families)");
  generate->add_option("--p", gen_p, "edge probability for gnp");
  generate->add_option("--keep", gen_keep, "chord keep probability for outerplanar");
  generate->add_option("--levels", gen_levels, "level count for layered");
  generate->add_option("--max-size", gen_max, "largest level for layered");
  generate->add_option("--rows", gen_rows, "torus grid rows");
  generate->add_option("--cols", gen_cols, "torus grid columns");
  generate->add_option("--format", gen_format, "abstract graph output")->check(CLI::IsMember({"graph6", "json"}));
  leaf(generate, [&](Run& run) -> Json {
    auto seed = [&] {
      if (!gen_seed) throw ContractError("random family " + family + " needs --seed");
      run.seed = gen_seed;
      return *gen_seed;
    };
    auto graph_out = [&](const Graph& g) {
      Json out;
      if (gen_format == "graph6")
        out["graph6"] = emit_graph6(g);
      else
        out["graph"] = to_json(g);
      return out;
    };
    if (family == "path") return graph_out(path_graph(gen_n));
    if (family == "cycle") return graph_out(cycle_graph(gen_n));
    if (family == "complete") return graph_out(complete_graph(gen_n));
    if (family == "star") return graph_out(star_graph(gen_n));
    if (family == "petal") return graph_out(petal_graph(gen_n));
    if (family == "tree") return graph_out(random_tree(gen_n, seed()));
    if (family == "gnp") return graph_out(random_gnp(gen_n, gen_p, seed()));
    if (family == "petunia") return graph_out(random_petunia(gen_n, seed()));
    Json out;
    if (family == "maximal-outerplanar" || family == "outerplanar") {
      const auto og = family == "outerplanar" ? random_outerplanar(gen_n, gen_keep, seed())
                                              : random_maximal_outerplanar(gen_n, seed());
      out["outerplane"] = to_json(og);
      out["graph6"] = emit_graph6(og.graph);
      return out;
    }
    if (family == "layered") {
      const auto lp = random_layered(gen_levels, gen_max, seed());
      out["layered"] = to_json(lp);
      out["graph6"] = emit_graph6(layered_graph(lp));
      return out;
    }
    RotationSystem rs = family == "planar-triangulation" ? random_planar_triangulation(gen_n, seed())
                        : family == "torus-grid"         ? torus_grid(gen_rows, gen_cols)
                                                         : toroidal_k5();
    out["rotation"] = to_json(rs);
    out["graph6"] = emit_graph6(rs.graph);
    return out;
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? Ok : BadInput;
  }

  // manifest: the leaf command path and every option value of it
  std::string command;
  Json params = Json::object();
  for (CLI::App* cur = &app; cur;) {
    auto subs = cur->get_subcommands();
    if (subs.empty()) break;
    cur = subs.front();
    command += (command.empty() ? "" : " ") + cur->get_name();
    for (const CLI::Option* opt : cur->get_options()) {
      if (opt->get_single_name() == "help") continue;
      if (opt->get_type_size() == 0)
        params[opt->get_single_name()] = opt->count() > 0;
      else if (opt->count() > 0)
        params[opt->get_single_name()] = opt->results().size() == 1 ? Json(opt->results()[0]) : Json(opt->results());
      else if (!opt->get_default_str().empty())
        params[opt->get_single_name()] = opt->get_default_str();
    }
  }
  params["threads"] = globals.threads;

  Run run;
  try {
    run.budget = Budget::from_environment();
  } catch (const std::exception& e) {
    std::cerr << "hatguess: " << e.what() << "\n";
    return BadInput;
  }
  if (globals.max_nodes) run.budget.max_nodes = *globals.max_nodes;
  if (globals.max_seconds) run.budget.max_seconds = *globals.max_seconds;

  Json result;
  std::optional<std::pair<std::string, std::string>> error;
  int code = Ok;
  try {
    result = handler(run);
  } catch (const BudgetExceeded& e) {
    error = {"budget_exceeded", e.what()};
    code = BudgetHit;
  } catch (const ClaimViolation& e) {
    error = {"claim_violation", e.what()};
    code = Violated;
  } catch (const ContractError& e) {
    error = {"contract_error", e.what()};
    code = BadInput;
  } catch (const nlohmann::json::exception& e) {
    error = {"contract_error", e.what()};
    code = BadInput;
  } catch (const std::exception& e) {
    error = {"error", e.what()};
    code = BadInput;
  }

  Json manifest;
  manifest["command"] = command;
  manifest["parameters"] = params;
  manifest["input_digests"] = run.digests;
  manifest["seed"] = run.seed ? Json(*run.seed) : Json(nullptr);
  manifest["budget"] = {{"max_nodes", run.budget.max_nodes}, {"max_seconds", run.budget.max_seconds}};
  manifest["version"] = kVersion;
  Json doc;
  doc["manifest"] = manifest;
  if (error) {
    doc["error"] = {{"kind", error->first}, {"message", error->second}};
    std::cerr << "hatguess: " << error->first << ": " << error->second << "\n";
  } else {
    manifest["outcome_digest"] = sha256_hex(result.dump());
    doc["manifest"] = manifest;
    doc["result"] = result;
  }
  std::cout << (globals.pretty ? doc.dump(2) : doc.dump()) << "\n";
  return code;
}
