#include "hatguess/generators.hpp"

#include <gmpxx.h>

#include <algorithm>
#include <array>
#include <functional>
#include <set>

#include "hatguess/error.hpp"
#include "hatguess/random.hpp"

namespace hatguess {

namespace {

void require(bool ok, const char* what) {
  if (!ok) throw ContractError(what);
}

Graph from_set(int n, const std::set<Edge>& edges) {
  std::vector<Edge> list(edges.begin(), edges.end());
  return Graph(n, list);
}

mpz_class random_below(Rng& rng, const mpz_class& bound) {
  const std::size_t bits = mpz_sizeinbase(bound.get_mpz_t(), 2);
  while (true) {
    mpz_class x = 0;
    for (std::size_t got = 0; got < bits; got += 64) {
      x <<= 64;
      const std::uint64_t w = rng.next();
      x += mpz_class(static_cast<unsigned long>(w >> 32)) * mpz_class(4294967296UL) +
           mpz_class(static_cast<unsigned long>(w & 0xffffffffu));
    }
    const std::size_t extra = ((bits + 63) / 64) * 64 - bits;
    x >>= extra;
    if (x < bound) return x;
  }
}

std::vector<mpz_class> catalan_table(int m) {
  std::vector<mpz_class> c(m + 1);
  c[0] = 1;
  for (int i = 1; i <= m; ++i) c[i] = c[i - 1] * (2 * (2 * i - 1)) / (i + 1);
  return c;
}

// Chords of a uniformly random triangulation of the polygon on positions 0..n-1.
std::vector<Edge> random_triangulation_chords(int n, Rng& rng) {
  std::vector<Edge> chords;
  if (n < 4) return chords;
  const auto cat = catalan_table(n);
  std::vector<std::pair<int, int>> stack{{0, n - 1}};
  while (!stack.empty()) {
    auto [i, j] = stack.back();
    stack.pop_back();
    if (j - i < 2) continue;
    mpz_class pick = random_below(rng, cat[j - i - 1]);
    int k = i + 1;
    for (;; ++k) {
      mpz_class w = cat[k - i - 1] * cat[j - k - 1];
      if (pick < w) break;
      pick -= w;
    }
    if (k - i >= 2) chords.push_back({i, k});
    if (j - k >= 2) chords.push_back({k, j});
    stack.push_back({i, k});
    stack.push_back({k, j});
  }
  return chords;
}

}  // namespace

Graph path_graph(int n) {
  require(n >= 1, "path needs n >= 1");
  std::set<Edge> e;
  for (int i = 0; i + 1 < n; ++i) e.insert({i, i + 1});
  return from_set(n, e);
}

Graph cycle_graph(int n) {
  require(n >= 3, "cycle needs n >= 3");
  std::set<Edge> e;
  for (int i = 0; i < n; ++i) e.insert(Edge{i, (i + 1) % n}.normalized());
  return from_set(n, e);
}

Graph complete_graph(int n) {
  require(n >= 1, "clique needs n >= 1");
  std::set<Edge> e;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) e.insert({i, j});
  return from_set(n, e);
}

Graph star_graph(int n) {
  require(n >= 1, "star needs n >= 1");
  std::set<Edge> e;
  for (int i = 1; i < n; ++i) e.insert({0, i});
  return from_set(n, e);
}

Graph petal_graph(int n) {
  require(n >= 1, "petal needs n >= 1");
  std::set<Edge> e;
  for (int i = 1; i < n; ++i) e.insert({0, i});
  for (int i = 1; i + 1 < n; ++i) e.insert({i, i + 1});
  return from_set(n, e);
}

Graph random_tree(int n, std::uint64_t seed) {
  require(n >= 1, "tree needs n >= 1");
  Rng rng(seed);
  VertexList label(n);
  for (int i = 0; i < n; ++i) label[i] = i;
  rng.shuffle(label);
  std::set<Edge> e;
  for (int i = 1; i < n; ++i) e.insert(Edge{label[i], label[rng.below(i)]}.normalized());
  return from_set(n, e);
}

Graph random_gnp(int n, double p, std::uint64_t seed) {
  require(n >= 1, "graph needs n >= 1");
  Rng rng(seed);
  std::set<Edge> e;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      if (rng.chance(p)) e.insert({i, j});
  return from_set(n, e);
}

OuterplaneGraph random_maximal_outerplanar(int n, std::uint64_t seed) { return random_outerplanar(n, 1.0, seed); }

OuterplaneGraph random_outerplanar(int n, double keep, std::uint64_t seed) {
  require(n >= 1, "outerplanar graph needs n >= 1");
  Rng rng(seed);
  VertexList label(n);
  for (int i = 0; i < n; ++i) label[i] = i;
  rng.shuffle(label);
  auto chords = random_triangulation_chords(n, rng);
  OuterplaneBlock block{label, {}};
  for (const Edge& c : chords)
    if (keep >= 1.0 || rng.chance(keep)) block.chords.push_back(Edge{label[c.u], label[c.v]}.normalized());
  std::sort(block.chords.begin(), block.chords.end());
  return make_outerplane(n, {block});
}

Graph random_petunia(int n, std::uint64_t seed) {
  require(n >= 1, "petunia needs n >= 1");
  Rng rng(seed);
  std::set<Edge> e;
  int used = 1;
  while (used < n) {
    const int piece = std::min(rng.between(2, 7), n - used + 1);
    // piece vertices: one existing vertex plus piece-1 new ones; position 0 is the stem
    VertexList vs(piece);
    const int slot = static_cast<int>(rng.below(piece));
    const Vertex anchor = static_cast<Vertex>(rng.below(used));
    for (int i = 0, fresh = used; i < piece; ++i) vs[i] = (i == slot) ? anchor : fresh++;
    used += piece - 1;
    for (int i = 1; i < piece; ++i) e.insert(Edge{vs[0], vs[i]}.normalized());
    for (int i = 1; i + 1 < piece; ++i) e.insert(Edge{vs[i], vs[i + 1]}.normalized());
  }
  std::set<Edge> kept;
  for (const Edge& x : e)
    if (!rng.chance(0.15)) kept.insert(x);
  VertexList label(n);
  for (int i = 0; i < n; ++i) label[i] = i;
  rng.shuffle(label);
  std::set<Edge> relabeled;
  for (const Edge& x : kept) relabeled.insert(Edge{label[x.u], label[x.v]}.normalized());
  return from_set(n, relabeled);
}

LayeredPlanarGraph random_layered(int level_count, int max_level_size, std::uint64_t seed) {
  require(level_count >= 1, "need at least one level");
  require(max_level_size >= 3, "levels need at least three vertices");
  Rng rng(seed);
  LayeredPlanarGraph lp;
  lp.nesting_faces.push_back({});
  int next = 0;
  for (int i = 0; i < level_count; ++i) {
    const int m = rng.between(3, max_level_size);
    OuterplaneBlock level;
    for (int j = 0; j < m; ++j) level.boundary.push_back(next + j);
    for (const Edge& c : random_triangulation_chords(m, rng))
      if (rng.chance(0.6)) level.chords.push_back(Edge{next + c.u, next + c.v}.normalized());
    std::sort(level.chords.begin(), level.chords.end());
    next += m;
    if (i > 0) {
      auto faces = inner_faces(lp.levels.back());
      const VertexList face = faces[rng.below(faces.size())];
      lp.nesting_faces.push_back(face);
      // a random monotone ladder around the annulus, thinned out
      const int f = static_cast<int>(face.size());
      const int shift = static_cast<int>(rng.below(m));
      std::set<Edge> ladder;
      int p = 0, q = 0;
      ladder.insert({face[0], level.boundary[shift]});
      while (p < f || q < m) {
        bool advance_face = (q == m) || (p < f && rng.chance(0.5));
        if (advance_face) ++p; else ++q;
        ladder.insert({face[p % f], level.boundary[(shift + q) % m]});
      }
      for (const Edge& x : ladder)
        if (rng.chance(0.75)) lp.cross_edges.push_back(x);
    }
    lp.levels.push_back(std::move(level));
  }
  lp.vertex_count = next;
  return lp;
}

RotationSystem random_planar_triangulation(int n, std::uint64_t seed) {
  require(n >= 3, "triangulation needs n >= 3");
  Rng rng(seed);
  std::vector<VertexList> rot{{1, 2}, {2, 0}, {0, 1}};
  std::vector<std::array<Vertex, 3>> faces{{0, 1, 2}, {0, 2, 1}};
  auto insert_after = [&](Vertex at, Vertex after, Vertex x) {
    auto& r = rot[at];
    r.insert(std::find(r.begin(), r.end(), after) + 1, x);
  };
  std::set<Edge> edges{{0, 1}, {0, 2}, {1, 2}};
  for (Vertex d = 3; d < n; ++d) {
    const std::size_t fi = rng.below(faces.size());
    auto [a, b, c] = faces[fi];
    insert_after(b, a, d);
    insert_after(a, c, d);
    insert_after(c, b, d);
    rot.push_back({b, a, c});
    edges.insert(Edge{a, d}.normalized());
    edges.insert(Edge{b, d}.normalized());
    edges.insert(Edge{c, d}.normalized());
    faces[fi] = {a, b, d};
    faces.push_back({b, c, d});
    faces.push_back({c, a, d});
  }
  return make_rotation_system(from_set(n, edges), std::move(rot));
}

RotationSystem random_rotation(const Graph& g, std::uint64_t seed) {
  Rng rng(seed);
  std::vector<VertexList> rot(g.vertex_count());
  for (Vertex v = 0; v < g.vertex_count(); ++v) {
    rot[v].assign(g.neighbors(v).begin(), g.neighbors(v).end());
    rng.shuffle(rot[v]);
  }
  return make_rotation_system(g, std::move(rot));
}

RotationSystem torus_grid(int rows, int cols) {
  require(rows >= 3 && cols >= 3, "torus grid needs both cycles of length >= 3");
  auto id = [&](int i, int j) { return ((i + rows) % rows) * cols + (j + cols) % cols; };
  std::set<Edge> edges;
  std::vector<VertexList> rot(rows * cols);
  for (int i = 0; i < rows; ++i)
    for (int j = 0; j < cols; ++j) {
      rot[id(i, j)] = {id(i, j + 1), id(i - 1, j), id(i, j - 1), id(i + 1, j)};
      edges.insert(Edge{id(i, j), id(i, j + 1)}.normalized());
      edges.insert(Edge{id(i, j), id(i + 1, j)}.normalized());
    }
  return make_rotation_system(from_set(rows * cols, edges), std::move(rot));
}

RotationSystem toroidal_k5() {
  const Graph k5 = complete_graph(5);
  std::vector<VertexList> rot(5);
  // vertex 0's rotation fixed up to cyclic shift; search the others
  std::function<bool(int)> search = [&](int v) -> bool {
    if (v == 5) return trace_faces(RotationSystem{k5, rot}).faces.size() == 5;
    VertexList nb(k5.neighbors(v).begin(), k5.neighbors(v).end());
    // cyclic orders of four items: fix the first, permute the rest
    std::sort(nb.begin() + 1, nb.end());
    do {
      rot[v] = nb;
      if (search(v + 1)) return true;
    } while (std::next_permutation(nb.begin() + 1, nb.end()));
    return false;
  };
  if (!search(0)) throw ClaimViolation("no toroidal embedding of K5 found");
  return make_rotation_system(k5, rot);
}

}  // namespace hatguess
