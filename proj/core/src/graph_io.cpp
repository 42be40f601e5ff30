#include "sierpinski/graph_io.hpp"

#include <fstream>

#include "sierpinski/error.hpp"

namespace sierpinski {

nlohmann::json to_json(const Network& network) {
  nlohmann::json edges = nlohmann::json::array();
  for (const auto& e : network.edges()) edges.push_back({e.a, e.b});
  nlohmann::json coords = nlohmann::json::array();
  for (const auto& c : network.coords()) coords.push_back({c.x, c.y});
  return {
      {"kind", to_string(network.kind())},
      {"generation", network.generation()},
      {"n", network.node_count()},
      {"edges", std::move(edges)},
      {"coords", std::move(coords)},
      {"roles", {{"outer", network.roles().outer}, {"inner", network.roles().inner}}},
  };
}

Network network_from_json(const nlohmann::json& doc) {
  try {
    const auto kind = parse_kind(doc.value("kind", std::string("custom")));
    const int generation = doc.value("generation", 0);
    const auto n = doc.at("n").get<std::size_t>();

    std::vector<Edge> edges;
    for (const auto& e : doc.at("edges")) {
      if (!e.is_array() || e.size() != 2) {
        throw Error(ErrorCode::invalid_graph, "edge entries must be [i, j] pairs");
      }
      edges.push_back({e[0].get<std::size_t>(), e[1].get<std::size_t>()});
    }
    std::vector<Coord> coords;
    if (doc.contains("coords")) {
      for (const auto& c : doc.at("coords")) {
        coords.push_back({c.at(0).get<std::int64_t>(), c.at(1).get<std::int64_t>()});
      }
    }
    NodeRoles roles;
    if (doc.contains("roles")) {
      const auto& r = doc.at("roles");
      roles.outer = r.value("outer", std::vector<std::size_t>{});
      roles.inner = r.value("inner", std::vector<std::size_t>{});
    }
    if (kind != FractalKind::Custom && coords.empty()) {
      throw Error(ErrorCode::invalid_graph, "fractal graphs must carry coordinates");
    }
    return Network(kind, generation, n, std::move(edges), std::move(coords), std::move(roles));
  } catch (const nlohmann::json::exception& ex) {
    throw Error(ErrorCode::invalid_graph, std::string("malformed graph document: ") + ex.what());
  }
}

void save_network(const Network& network, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw Error(ErrorCode::io_error, "cannot write " + path.string());
  out << to_json(network).dump() << '\n';
}

Network load_network(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::io_error, "cannot read " + path.string());
  nlohmann::json doc;
  try {
    in >> doc;
  } catch (const nlohmann::json::exception& ex) {
    throw Error(ErrorCode::invalid_graph, path.string() + ": " + ex.what());
  }
  return network_from_json(doc);
}

}  // namespace sierpinski
