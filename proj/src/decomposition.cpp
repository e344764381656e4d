#include "hatguess/decomposition.hpp"

#include <algorithm>
#include <deque>
#include <functional>
#include <set>

#include "hatguess/error.hpp"

namespace hatguess {

namespace {

std::string list_text(const VertexList& xs) {
  std::string out;
  for (Vertex x : xs) out += (out.empty() ? "" : ",") + std::to_string(x);
  return "[" + out + "]";
}

// Concatenation of the paths of h - stem, or nullopt if h - stem is not a linear forest.
std::optional<VertexList> linear_order_without(const Graph& h, std::optional<Vertex> stem) {
  const int n = h.vertex_count();
  auto live = [&](Vertex x) { return !stem || x != *stem; };
  std::vector<int> deg(n, 0);
  for (const Edge& e : h.edges())
    if (live(e.u) && live(e.v)) {
      if (++deg[e.u] > 2 || ++deg[e.v] > 2) return std::nullopt;
    }
  std::vector<char> seen(n, 0);
  VertexList order;
  auto walk = [&](Vertex start) {
    Vertex prev = -1, cur = start;
    while (cur != -1) {
      seen[cur] = 1;
      order.push_back(cur);
      Vertex next = -1;
      for (Vertex y : h.neighbors(cur))
        if (live(y) && y != prev && !seen[y]) next = y;
      prev = cur;
      cur = next;
    }
  };
  for (Vertex x = 0; x < n; ++x)
    if (live(x) && !seen[x] && deg[x] <= 1) walk(x);
  for (Vertex x = 0; x < n; ++x)
    if (live(x) && !seen[x]) return std::nullopt;  // left on a cycle
  return order;
}

}  // namespace

std::optional<PetuniaCertificate> is_petunia(const Graph& g) {
  PetuniaCertificate cert;
  for (const VertexList& block : blocks(g).blocks) {
    if (block.size() <= 2) {
      cert.blocks.push_back({std::nullopt, block});
      continue;
    }
    const auto sub = induced_subgraph(g, block);
    std::optional<PetuniaBlock> found;
    for (Vertex s = 0; s < sub.graph.vertex_count() && !found; ++s) {
      if (auto order = linear_order_without(sub.graph, s)) {
        PetuniaBlock pb{sub.original[s], {}};
        for (Vertex x : *order) pb.order.push_back(sub.original[x]);
        found = std::move(pb);
      }
    }
    if (!found) return std::nullopt;
    cert.blocks.push_back(std::move(*found));
  }
  return cert;
}

std::optional<Violation> validate_petunia_certificate(const Graph& g, const PetuniaCertificate& cert) {
  const auto bd = blocks(g);
  if (bd.blocks.size() != cert.blocks.size())
    return Violation{"block_count", "certificate lists " + std::to_string(cert.blocks.size()) + " blocks, graph has " +
                                        std::to_string(bd.blocks.size()),
                     {}};
  for (std::size_t i = 0; i < cert.blocks.size(); ++i) {
    const PetuniaBlock& pb = cert.blocks[i];
    VertexList all = pb.order;
    if (pb.stem) all.push_back(*pb.stem);
    std::sort(all.begin(), all.end());
    if (all != bd.blocks[i]) return Violation{"block_mismatch", "certificate block differs from graph block", all};
    std::vector<int> pos(g.vertex_count(), -1);
    for (std::size_t k = 0; k < pb.order.size(); ++k) pos[pb.order[k]] = static_cast<int>(k);
    const auto sub = induced_subgraph(g, bd.blocks[i]);
    for (const Edge& e : sub.graph.edges()) {
      const Vertex a = sub.original[e.u], b = sub.original[e.v];
      if (pb.stem && (a == *pb.stem || b == *pb.stem)) continue;
      if (std::abs(pos[a] - pos[b]) != 1)
        return Violation{"non_path_edge", "edge joins non-consecutive vertices of the order", {a, b}};
    }
  }
  return std::nullopt;
}

VertexPartition petunia_forest_partition(const Graph& g, const PetuniaCertificate& cert) {
  if (auto bad = validate_petunia_certificate(g, cert)) throw ContractError("invalid petunia certificate: " + bad->message);
  const int n = g.vertex_count();

  // petal completion
  std::set<Edge> extra;
  for (const PetuniaBlock& pb : cert.blocks) {
    for (std::size_t k = 0; k + 1 < pb.order.size(); ++k) extra.insert(Edge{pb.order[k], pb.order[k + 1]}.normalized());
    if (pb.stem)
      for (Vertex x : pb.order) extra.insert(Edge{*pb.stem, x}.normalized());
  }
  const std::vector<Edge> extra_list(extra.begin(), extra.end());
  const Graph full = with_edges(g, extra_list);

  enum : int { Unset = -1, Red = 0, Blue = 1 };
  std::vector<int> color(n, Unset);
  std::vector<std::vector<int>> blocks_at(n);
  for (std::size_t i = 0; i < cert.blocks.size(); ++i) {
    if (cert.blocks[i].stem) blocks_at[*cert.blocks[i].stem].push_back(static_cast<int>(i));
    for (Vertex x : cert.blocks[i].order) blocks_at[x].push_back(static_cast<int>(i));
  }
  std::vector<char> done(cert.blocks.size(), 0);
  std::deque<Vertex> queue;
  auto extend = [&](const PetuniaBlock& pb, Vertex entry) {
    const auto& ord = pb.order;
    if (pb.stem && entry == *pb.stem) {
      for (std::size_t k = 0; k < ord.size(); ++k) color[ord[k]] = k % 2 == 0 ? Red : Blue;
    } else {
      const auto p = std::find(ord.begin(), ord.end(), entry) - ord.begin();
      for (std::size_t k = 0; k < ord.size(); ++k)
        color[ord[k]] = (static_cast<long>(k) - p) % 2 == 0 ? color[entry] : 1 - color[entry];
      if (pb.stem) color[*pb.stem] = Red;
    }
    for (Vertex x : ord)
      if (x != entry) queue.push_back(x);
    if (pb.stem && *pb.stem != entry) queue.push_back(*pb.stem);
  };
  for (Vertex root = 0; root < n; ++root) {
    if (color[root] != Unset) continue;
    color[root] = Red;
    queue.push_back(root);
    while (!queue.empty()) {
      const Vertex x = queue.front();
      queue.pop_front();
      for (int b : blocks_at[x]) {
        if (done[b]) continue;
        done[b] = 1;
        const PetuniaBlock& pb = cert.blocks[b];
        VertexList members = pb.order;
        if (pb.stem) members.push_back(*pb.stem);
        for (Vertex y : members)
          if (y != x && color[y] != Unset) throw ClaimViolation("block reached twice in the block tree");
        extend(pb, x);
      }
    }
  }

  // monochromatic components of the completion
  std::vector<int> label(n, -1);
  int next = 0;
  for (Vertex s = 0; s < n; ++s) {
    if (label[s] != -1) continue;
    std::vector<Vertex> stack{s};
    label[s] = next;
    while (!stack.empty()) {
      const Vertex x = stack.back();
      stack.pop_back();
      for (Vertex y : full.neighbors(x))
        if (label[y] == -1 && color[y] == color[x]) {
          label[y] = next;
          stack.push_back(y);
        }
    }
    ++next;
  }
  auto part = VertexPartition::from_labels(label);

  // checked on the completion, which is stronger than on g
  for (const VertexList& cls : part.classes())
    if (!is_acyclic(induced_subgraph(full, cls).graph))
      throw ClaimViolation("forest class " + list_text(cls) + " contains a cycle");
  const Graph q = quotient(full, part);
  if (!is_acyclic(q)) throw ClaimViolation("quotient of the forest partition has a cycle");
  for (const Edge& e : q.edges()) {
    const int c1 = cross_neighbor_count(full, part[e.u], part[e.v]);
    const int c2 = cross_neighbor_count(full, part[e.v], part[e.u]);
    if (c1 > 3 || c2 > 3)
      throw ClaimViolation("classes " + list_text(part[e.u]) + " and " + list_text(part[e.v]) +
                           " exceed cross count 3");
  }
  return part;
}


namespace {

// Recursion on a triangulated polygon; poly is a cyclic sub-walk of the outer cycle.
class Splitter {
 public:
  explicit Splitter(const Graph& g) : g_(g), side_(g.vertex_count(), 0) {}

  void run(VertexList poly, Vertex u, Vertex v) {
    const int m = static_cast<int>(poly.size());
    if (m <= 2) {
      for (Vertex x : poly) put(x, InA);
      return;
    }
    std::rotate(poly.begin(), std::find(poly.begin(), poly.end(), u), poly.end());
    if (!g_.has_edge(u, v)) throw ContractError("root edge is not an edge of the polygon");
    put(u, InA);
    std::vector<int> w;
    for (int i = 1; i < m; ++i)
      if (g_.has_edge(u, poly[i])) {
        w.push_back(i);
        put(poly[i], InA);
      }
    for (std::size_t k = 0; k + 1 < w.size(); ++k) {
      const int a = w[k], b = w[k + 1];
      if (b - a < 2) continue;
      // apex of the second triangle on w_i w_{i+1}
      int c = -1;
      for (int i = a + 1; i < b && c < 0; ++i)
        if (g_.has_edge(poly[i], poly[a]) && g_.has_edge(poly[i], poly[b])) c = i;
      if (c < 0) throw ContractError("polygon is not triangulated");
      put(poly[c], InB);
      std::vector<int> y;
      for (int i = a; i <= b; ++i)
        if (i != c && g_.has_edge(poly[c], poly[i])) {
          y.push_back(i);
          put(poly[i], InA);
        }
      for (std::size_t t = 0; t + 1 < y.size(); ++t) {
        const int p = y[t], q = y[t + 1];
        if (q - p < 2 || (p < c && q > c)) continue;
        VertexList sub(poly.begin() + p, poly.begin() + q + 1);
        // the end farther from the apex is the tail
        if (q < c)
          run(std::move(sub), poly[p], poly[q]);
        else
          run(std::move(sub), poly[q], poly[p]);
      }
    }
  }

  VertexList members(int side) const {
    VertexList out;
    for (Vertex x = 0; x < g_.vertex_count(); ++x)
      if (side_[x] == side) out.push_back(x);
    return out;
  }

  static constexpr int InA = 1, InB = 2;

 private:
  void put(Vertex x, int side) {
    if (side_[x] != 0 && side_[x] != side) throw ClaimViolation("vertex " + std::to_string(x) + " placed in both A and B");
    side_[x] = side;
  }

  const Graph& g_;
  std::vector<int> side_;
};

int neighbors_in(const Graph& g, Vertex x, const std::vector<char>& in) {
  int c = 0;
  for (Vertex y : g.neighbors(x)) c += in[y];
  return c;
}

}  // namespace

OuterplanarSplit outerplanar_split(const OuterplaneGraph& og, Edge root) {
  if (auto bad = validate_outerplane(og)) throw ContractError("invalid outerplane embedding: " + bad->message);
  const Graph& g = og.graph;
  const int n = g.vertex_count();
  if (!g.contains(root.u) || !g.contains(root.v) || !g.has_edge(root.u, root.v))
    throw ContractError("root edge is not an edge of the graph");

  OuterplanarSplit out;
  Graph host = g;
  if (n <= 2) {
    for (Vertex x = 0; x < n; ++x) out.a.push_back(x);
  } else {
    const Triangulation tri = triangulate(og);
    out.completion = tri.added;
    host = tri.graph;
    Splitter splitter(host);
    splitter.run(tri.polygon.boundary, root.u, root.v);
    out.a = splitter.members(Splitter::InA);
    out.b = splitter.members(Splitter::InB);
    if (static_cast<int>(out.a.size() + out.b.size()) != n) throw ClaimViolation("split leaves vertices unassigned");
  }

  // conditions on the triangulation imply them on g
  std::vector<char> in_b(n, 0), in_a(n, 0);
  for (Vertex x : out.b) in_b[x] = 1;
  for (Vertex x : out.a) in_a[x] = 1;
  if (!in_a[root.u] || !in_a[root.v]) throw ClaimViolation("root edge not inside A");
  for (Vertex x : out.b)
    if (neighbors_in(host, x, in_b) > 0) throw ClaimViolation("B is not independent at " + std::to_string(x));
  if (neighbors_in(host, root.u, in_b) > 0) throw ClaimViolation("root tail has a neighbour in B");
  if (neighbors_in(host, root.v, in_b) > 2) throw ClaimViolation("root head has more than two neighbours in B");
  for (Vertex x : out.a)
    if (neighbors_in(host, x, in_b) > 3)
      throw ClaimViolation("vertex " + std::to_string(x) + " has more than three neighbours in B");
  if (!is_petunia(induced_subgraph(host, out.a).graph)) throw ClaimViolation("G[A] of the triangulation is not a petunia");
  auto cert = is_petunia(induced_subgraph(g, out.a).graph);
  if (!cert) throw ClaimViolation("G[A] is not a petunia");
  // certificate in original ids
  for (auto& pb : cert->blocks) {
    if (pb.stem) pb.stem = out.a[*pb.stem];
    for (Vertex& x : pb.order) x = out.a[x];
  }
  out.certificate = std::move(*cert);
  return out;
}

std::string to_string(Color c) {
  switch (c) {
    case Color::Green: return "green";
    case Color::Blue: return "blue";
    case Color::Indigo: return "indigo";
    case Color::Red: return "red";
    case Color::Pink: return "pink";
  }
  return "?";
}

VertexList FiveColoring::of(Color c) const {
  VertexList out;
  for (Vertex x = 0; x < static_cast<int>(color.size()); ++x)
    if (color[x] == c) out.push_back(x);
  return out;
}

bool ColoringClaims::all_hold() const {
  return green_outerplanar && green_other_max <= 5 && blue_outerplanar && blue_irp_max <= 6 && indigo_outerplanar &&
         indigo_rp_max <= 6 && red_petunia && red_pink_max <= 6 && pink_degree_max <= 6;
}

ColoringClaims measure_claims(const Graph& g, const FiveColoring& coloring) {
  if (static_cast<int>(coloring.color.size()) != g.vertex_count()) throw ContractError("colouring is not total");
  auto count = [&](Vertex x, std::initializer_list<Color> cs) {
    int c = 0;
    for (Vertex y : g.neighbors(x)) c += std::find(cs.begin(), cs.end(), coloring.color[y]) != cs.end();
    return c;
  };
  auto induced = [&](Color c) { return induced_subgraph(g, coloring.of(c)).graph; };
  ColoringClaims out;
  out.green_outerplanar = is_outerplanar(induced(Color::Green));
  out.blue_outerplanar = is_outerplanar(induced(Color::Blue));
  out.indigo_outerplanar = is_outerplanar(induced(Color::Indigo));
  out.red_petunia = is_petunia(induced(Color::Red)).has_value();
  for (Vertex x = 0; x < g.vertex_count(); ++x) {
    switch (coloring.color[x]) {
      case Color::Green:
        out.green_other_max = std::max(out.green_other_max, count(x, {Color::Blue, Color::Indigo, Color::Red, Color::Pink}));
        break;
      case Color::Blue:
        out.blue_irp_max = std::max(out.blue_irp_max, count(x, {Color::Indigo, Color::Red, Color::Pink}));
        break;
      case Color::Indigo:
        out.indigo_rp_max = std::max(out.indigo_rp_max, count(x, {Color::Red, Color::Pink}));
        break;
      case Color::Red:
        out.red_pink_max = std::max(out.red_pink_max, count(x, {Color::Pink}));
        break;
      case Color::Pink:
        out.pink_degree_max = std::max(out.pink_degree_max, count(x, {Color::Pink}));
        break;
    }
  }
  return out;
}

FiveColoring layered_five_coloring(const LayeredPlanarGraph& lp) {
  const LayeredStructure st = analyze_layered(lp);
  const int n = lp.vertex_count;
  std::vector<int> pos(n, -1);
  for (const auto& level : lp.levels)
    for (std::size_t k = 0; k < level.boundary.size(); ++k) pos[level.boundary[k]] = static_cast<int>(k);

  std::vector<std::optional<Color>> color(n);
  // green: the previous-level vertices strictly clockwise between the extreme parents
  for (Vertex v = 0; v < n; ++v) {
    const auto& par = st.parents[v];
    if (par.size() < 2) continue;
    const auto& cycle = lp.levels[st.level_of[v] - 1].boundary;
    const int m = static_cast<int>(cycle.size());
    for (int k = (pos[par.front()] + 1) % m; k != pos[par.back()]; k = (k + 1) % m) color[cycle[k]] = Color::Green;
  }
  std::vector<char> red(n, 0);
  for (Vertex v = 0; v < n; ++v) {
    if (st.children[v].size() < 3) continue;
    if (color[v]) throw ClaimViolation("vertex " + std::to_string(v) + " is green with three or more children");
    red[v] = 1;
    color[v] = Color::Red;
  }
  // pink is decided against the red set before any recolouring
  for (Vertex v = 0; v < n; ++v) {
    if (!red[v]) continue;
    VertexList rc;
    for (Vertex c : st.children[v])
      if (red[c]) rc.push_back(c);
    if (rc.empty()) continue;
    color[rc.front()] = Color::Pink;
    color[rc.back()] = Color::Pink;
  }
  FiveColoring out;
  out.color.resize(n);
  for (Vertex v = 0; v < n; ++v)
    out.color[v] = color[v] ? *color[v] : ((st.level_of[v] + 1) % 2 == 0 ? Color::Blue : Color::Indigo);

  const ColoringClaims claims = measure_claims(st.graph, out);
  if (!claims.all_hold()) {
    std::string why;
    if (!claims.green_outerplanar) why += " green class not outerplanar;";
    if (claims.green_other_max > 5) why += " green vertex with " + std::to_string(claims.green_other_max) + " other-coloured neighbours;";
    if (!claims.blue_outerplanar) why += " blue class not outerplanar;";
    if (claims.blue_irp_max > 6) why += " blue vertex with " + std::to_string(claims.blue_irp_max) + " indigo/red/pink neighbours;";
    if (!claims.indigo_outerplanar) why += " indigo class not outerplanar;";
    if (claims.indigo_rp_max > 6) why += " indigo vertex with " + std::to_string(claims.indigo_rp_max) + " red/pink neighbours;";
    if (!claims.red_petunia) why += " red class not a petunia;";
    if (claims.red_pink_max > 6) why += " red vertex with " + std::to_string(claims.red_pink_max) + " pink neighbours;";
    if (claims.pink_degree_max > 6) why += " pink degree " + std::to_string(claims.pink_degree_max) + ";";
    throw ClaimViolation("layered colouring claim failed:" + why);
  }
  return out;
}

}  // namespace hatguess
