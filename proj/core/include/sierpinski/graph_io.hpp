#pragma once

#include <filesystem>

#include <nlohmann/json.hpp>

#include "sierpinski/fractal_graph.hpp"

namespace sierpinski {

/// Graph interchange document:
/// {"kind","generation","n","edges":[[i,j],...],"coords":[[x,y],...],
///  "roles":{"outer":[...],"inner":[...]}} with edges sorted and i < j.
nlohmann::json to_json(const Network& network);

/// Parses and validates an interchange document. Missing coords/roles are
/// allowed for custom graphs.
Network network_from_json(const nlohmann::json& doc);

void save_network(const Network& network, const std::filesystem::path& path);
Network load_network(const std::filesystem::path& path);

}  // namespace sierpinski
