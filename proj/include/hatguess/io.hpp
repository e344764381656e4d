#pragma once

#include <json.hpp>

#include <string>
#include <string_view>

#include "hatguess/bounds.hpp"
#include "hatguess/decomposition.hpp"
#include "hatguess/game.hpp"
#include "hatguess/graph.hpp"
#include "hatguess/layered.hpp"
#include "hatguess/outerplane.hpp"
#include "hatguess/rotation.hpp"

namespace hatguess {

using Json = nlohmann::ordered_json;

// Every document carries "format": "hatguess.<kind>" and "version": 1. Decoders throw
// ContractError on a wrong tag, version or shape.
inline constexpr int kFormatVersion = 1;

Json to_json(const Graph& g);
Graph graph_from_json(const Json& j);

Json to_json(const OuterplaneGraph& og);
OuterplaneGraph outerplane_from_json(const Json& j);

Json to_json(const LayeredPlanarGraph& lp);
LayeredPlanarGraph layered_from_json(const Json& j);

Json to_json(const RotationSystem& rs);
RotationSystem rotation_from_json(const Json& j);

Json to_json(const VertexPartition& p);
VertexPartition partition_from_json(const Json& j);

Json to_json(const ColorLists& lists);
ColorLists lists_from_json(const Json& j);

Json to_json(const StrategyProfile& strat);
StrategyProfile strategy_from_json(const Json& j);

Json assignment_to_json(const HatAssignment& a);
HatAssignment assignment_from_json(const Json& j);

Json to_json(const Transcript& t);

Json to_json(const PetuniaCertificate& cert);
PetuniaCertificate petunia_certificate_from_json(const Json& j);

Json to_json(const FiveColoring& coloring);

// {"height": h, "top": "p/q", "log2": ...}; the exact integer as a decimal string when small.
Json to_json(const TowerValue& t);

// Lowercase hex SHA-256.
std::string sha256_hex(std::string_view data);

// Whole file, or standard input for "-".
std::string read_input(const std::string& path);

}  // namespace hatguess
