#include "hatguess/io.hpp"

#include <openssl/sha.h>

#include <fstream>
#include <iostream>
#include <iterator>
#include <sstream>

#include "hatguess/error.hpp"

namespace hatguess {

namespace {

Json header(const char* kind) {
  Json j;
  j["format"] = std::string("hatguess.") + kind;
  j["version"] = kFormatVersion;
  return j;
}

void expect(const Json& j, const char* kind) {
  if (!j.is_object()) throw ContractError(std::string("expected a ") + kind + " document");
  const std::string want = std::string("hatguess.") + kind;
  if (j.value("format", std::string()) != want)
    throw ContractError("expected format \"" + want + "\", got \"" + j.value("format", std::string()) + "\"");
  if (j.value("version", 0) != kFormatVersion)
    throw ContractError("unsupported " + want + " version " + std::to_string(j.value("version", 0)));
}

// nlohmann type errors become contract errors
template <class T>
T field(const Json& j, const char* key) {
  if (!j.contains(key)) throw ContractError(std::string("missing field \"") + key + "\"");
  try {
    return j.at(key).get<T>();
  } catch (const nlohmann::json::exception& e) {
    throw ContractError(std::string("field \"") + key + "\": " + e.what());
  }
}

Json edges_json(const std::vector<Edge>& edges) {
  Json out = Json::array();
  for (const Edge& e : edges) out.push_back({e.u, e.v});
  return out;
}

std::vector<Edge> edges_from(const Json& j, const char* key) {
  std::vector<Edge> out;
  for (const auto& pair : field<std::vector<std::vector<int>>>(j, key)) {
    if (pair.size() != 2) throw ContractError(std::string("\"") + key + "\" entries must be pairs");
    out.push_back({pair[0], pair[1]});
  }
  return out;
}

Json block_json(const OuterplaneBlock& b) { return {{"boundary", b.boundary}, {"chords", edges_json(b.chords)}}; }

OuterplaneBlock block_from(const Json& j) { return {field<VertexList>(j, "boundary"), edges_from(j, "chords")}; }

std::vector<OuterplaneBlock> blocks_from(const Json& j, const char* key) {
  if (!j.contains(key) || !j.at(key).is_array()) throw ContractError(std::string("missing array \"") + key + "\"");
  std::vector<OuterplaneBlock> out;
  for (const auto& b : j.at(key)) out.push_back(block_from(b));
  return out;
}

}  // namespace

Json to_json(const Graph& g) {
  Json j = header("graph");
  j["n"] = g.vertex_count();
  j["edges"] = edges_json(g.edges());
  return j;
}

Graph graph_from_json(const Json& j) {
  expect(j, "graph");
  const auto edges = edges_from(j, "edges");
  return Graph(field<int>(j, "n"), edges);
}

Json to_json(const OuterplaneGraph& og) {
  Json j = header("outerplane");
  j["n"] = og.graph.vertex_count();
  Json blocks = Json::array();
  for (const auto& b : og.blocks) blocks.push_back(block_json(b));
  j["blocks"] = blocks;
  return j;
}

OuterplaneGraph outerplane_from_json(const Json& j) {
  expect(j, "outerplane");
  auto og = make_outerplane(field<int>(j, "n"), blocks_from(j, "blocks"));
  if (auto bad = validate_outerplane(og)) throw ContractError("invalid outerplane embedding: " + bad->message);
  return og;
}

Json to_json(const LayeredPlanarGraph& lp) {
  Json j = header("layered");
  j["n"] = lp.vertex_count;
  Json levels = Json::array();
  for (const auto& b : lp.levels) levels.push_back(block_json(b));
  j["levels"] = levels;
  j["cross_edges"] = edges_json(lp.cross_edges);
  j["nesting_faces"] = lp.nesting_faces;
  return j;
}

LayeredPlanarGraph layered_from_json(const Json& j) {
  expect(j, "layered");
  LayeredPlanarGraph lp;
  lp.vertex_count = field<int>(j, "n");
  lp.levels = blocks_from(j, "levels");
  lp.cross_edges = edges_from(j, "cross_edges");
  lp.nesting_faces = field<std::vector<VertexList>>(j, "nesting_faces");
  if (auto bad = validate_layered(lp)) throw ContractError("invalid layered planar graph: " + bad->message);
  return lp;
}

Json to_json(const RotationSystem& rs) {
  Json j = header("rotation");
  j["n"] = rs.graph.vertex_count();
  j["rotation"] = rs.rotation;
  return j;
}

RotationSystem rotation_from_json(const Json& j) {
  expect(j, "rotation");
  const int n = field<int>(j, "n");
  auto rot = field<std::vector<VertexList>>(j, "rotation");
  if (static_cast<int>(rot.size()) != n) throw ContractError("rotation needs one list per vertex");
  std::vector<Edge> edges;
  for (Vertex v = 0; v < n; ++v)
    for (Vertex w : rot[v])
      if (v < w) edges.push_back({v, w});
  return make_rotation_system(Graph(n, edges), std::move(rot));
}

Json to_json(const VertexPartition& p) {
  Json j = header("partition");
  j["n"] = p.vertex_count();
  j["classes"] = p.classes();
  return j;
}

VertexPartition partition_from_json(const Json& j) {
  expect(j, "partition");
  return VertexPartition(field<int>(j, "n"), field<std::vector<VertexList>>(j, "classes"));
}

Json to_json(const ColorLists& lists) {
  Json j = header("lists");
  j["lists"] = lists.lists;
  return j;
}

ColorLists lists_from_json(const Json& j) {
  expect(j, "lists");
  return {field<std::vector<std::vector<int>>>(j, "lists")};
}

Json to_json(const StrategyProfile& strat) {
  Json j = header("strategy");
  j["s"] = strat.s;
  j["neighbor_order"] = "ascending";
  j["table"] = strat.table;
  return j;
}

StrategyProfile strategy_from_json(const Json& j) {
  expect(j, "strategy");
  if (j.value("neighbor_order", std::string("ascending")) != "ascending")
    throw ContractError("only ascending neighbour order is supported");
  return {field<int>(j, "s"), field<std::vector<std::vector<std::vector<int>>>>(j, "table")};
}

Json assignment_to_json(const HatAssignment& a) {
  Json j = header("assignment");
  j["colors"] = a;
  return j;
}

HatAssignment assignment_from_json(const Json& j) {
  expect(j, "assignment");
  return field<HatAssignment>(j, "colors");
}

Json to_json(const Transcript& t) {
  Json j = header("transcript");
  j["nodes"] = t.nodes;
  j["capacity_prunes"] = t.capacity_prunes;
  j["dead_ends"] = t.dead_ends;
  j["max_depth"] = t.max_depth;
  j["counting_refutation"] = t.counting_refutation;
  Json probes = Json::array();
  for (const Probe& p : t.probes)
    probes.push_back({{"seed", p.seed}, {"node_limit", p.node_limit}, {"nodes", p.nodes}, {"wins", p.wins}});
  j["probes"] = probes;
  j["root_assignment"] = t.root_assignment;
  Json branches = Json::array();
  for (const RootBranch& b : t.root_branches)
    branches.push_back({{"vertex", b.vertex}, {"color", b.color}, {"nodes", b.nodes}, {"wins", b.wins}});
  j["root_branches"] = branches;
  Json comps = Json::array();
  for (const Transcript& c : t.components) comps.push_back(to_json(c));
  j["components"] = comps;
  return j;
}

Json to_json(const PetuniaCertificate& cert) {
  Json j = header("petunia_certificate");
  Json blocks = Json::array();
  for (const auto& b : cert.blocks) {
    Json jb;
    jb["stem"] = b.stem ? Json(*b.stem) : Json(nullptr);
    jb["order"] = b.order;
    blocks.push_back(jb);
  }
  j["blocks"] = blocks;
  return j;
}

PetuniaCertificate petunia_certificate_from_json(const Json& j) {
  expect(j, "petunia_certificate");
  if (!j.contains("blocks") || !j.at("blocks").is_array()) throw ContractError("missing array \"blocks\"");
  PetuniaCertificate cert;
  for (const auto& jb : j.at("blocks")) {
    PetuniaBlock b;
    if (jb.contains("stem") && !jb.at("stem").is_null()) b.stem = field<int>(jb, "stem");
    b.order = field<VertexList>(jb, "order");
    cert.blocks.push_back(std::move(b));
  }
  return cert;
}

Json to_json(const FiveColoring& coloring) {
  Json j = header("five_coloring");
  Json colors = Json::array();
  for (Color c : coloring.color) colors.push_back(to_string(c));
  j["colors"] = colors;
  return j;
}

Json to_json(const TowerValue& t) {
  Json j;
  j["height"] = t.height();
  j["top"] = t.top().get_str();
  j["text"] = t.to_string();
  if (auto z = t.to_integer(1u << 16)) j["exact"] = z->get_str();
  if (auto l = t.log2()) j["log2"] = l->to_string();
  return j;
}

std::string sha256_hex(std::string_view data) {
  unsigned char digest[SHA256_DIGEST_LENGTH];
  SHA256(reinterpret_cast<const unsigned char*>(data.data()), data.size(), digest);
  static const char* hex = "0123456789abcdef";
  std::string out;
  for (unsigned char b : digest) {
    out += hex[b >> 4];
    out += hex[b & 15];
  }
  return out;
}

std::string read_input(const std::string& path) {
  if (path == "-") return {std::istreambuf_iterator<char>(std::cin), std::istreambuf_iterator<char>()};
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ContractError("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace hatguess
