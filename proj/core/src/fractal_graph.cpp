#include "sierpinski/fractal_graph.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>

#include "sierpinski/error.hpp"

namespace sierpinski {

namespace {

using Lattice = std::array<std::int64_t, 2>;

std::int64_t ipow(std::int64_t base, int exp) {
  std::int64_t r = 1;
  for (int i = 0; i < exp; ++i) r *= base;
  return r;
}

std::uint64_t saturating_pow(std::uint64_t base, int exp) {
  std::uint64_t r = 1;
  for (int i = 0; i < exp; ++i) {
    if (__builtin_mul_overflow(r, base, &r)) {
      return std::numeric_limits<std::uint64_t>::max();
    }
  }
  return r;
}

// Upward unit triangles (u, v) of a gasket made of 3^level of them.
std::vector<Lattice> gasket_triangles(int level) {
  std::vector<Lattice> tris{{0, 0}};
  for (int k = 1; k <= level; ++k) {
    const std::int64_t s = std::int64_t{1} << (k - 1);
    std::vector<Lattice> next;
    next.reserve(tris.size() * 3);
    for (const Lattice shift : {Lattice{0, 0}, Lattice{s, 0}, Lattice{0, s}}) {
      for (const auto& t : tris) next.push_back({t[0] + shift[0], t[1] + shift[1]});
    }
    tris = std::move(next);
  }
  return tris;
}

bool in_carpet(std::int64_t cx, std::int64_t cy, int level) {
  for (int k = 0; k < level; ++k) {
    if (cx % 3 == 1 && cy % 3 == 1) return false;
    cx /= 3;
    cy /= 3;
  }
  return true;
}

// Retained unit cells of the level-`level` carpet, in row-major order.
std::vector<Lattice> carpet_cells(int level) {
  const std::int64_t side = ipow(3, level);
  std::vector<Lattice> cells;
  for (std::int64_t cy = 0; cy < side; ++cy) {
    for (std::int64_t cx = 0; cx < side; ++cx) {
      if (in_carpet(cx, cy, level)) cells.push_back({cx, cy});
    }
  }
  return cells;
}

Coord gasket_vertex(std::int64_t u, std::int64_t v) { return {2 * u + v, v}; }

Coord triangle_centre(const Lattice& t) {
  return {6 * t[0] + 3 * t[1] + 3, 3 * t[1] + 1};
}

Coord cell_centre(const Lattice& c) { return {2 * c[0] + 1, 2 * c[1] + 1}; }

std::optional<std::size_t> locate(const std::vector<Coord>& sorted, const Coord& c) {
  auto it = std::lower_bound(sorted.begin(), sorted.end(), c, row_major_less);
  if (it == sorted.end() || !(*it == c)) return std::nullopt;
  return static_cast<std::size_t>(it - sorted.begin());
}

std::size_t must_locate(const std::vector<Coord>& sorted, const Coord& c) {
  auto idx = locate(sorted, c);
  if (!idx) throw Error(ErrorCode::invalid_graph, "construction produced a dangling vertex");
  return *idx;
}

std::vector<Coord> sorted_unique(std::vector<Coord> pts) {
  std::sort(pts.begin(), pts.end(), row_major_less);
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
  return pts;
}

// Graph whose nodes are polygon vertices and whose edges are polygon sides.
template <std::size_t K>
std::pair<std::vector<Coord>, std::vector<Edge>> polygon_graph(
    const std::vector<std::array<Coord, K>>& polygons) {
  std::vector<Coord> pts;
  pts.reserve(polygons.size() * K);
  for (const auto& p : polygons) pts.insert(pts.end(), p.begin(), p.end());
  pts = sorted_unique(std::move(pts));

  std::vector<Edge> edges;
  edges.reserve(polygons.size() * K);
  for (const auto& p : polygons) {
    for (std::size_t i = 0; i < K; ++i) {
      auto a = must_locate(pts, p[i]);
      auto b = must_locate(pts, p[(i + 1) % K]);
      edges.push_back({std::min(a, b), std::max(a, b)});
    }
  }
  std::sort(edges.begin(), edges.end());
  edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
  return {std::move(pts), std::move(edges)};
}

// Dual gasket: one node per triangle, linked when two triangles share a vertex.
std::pair<std::vector<Coord>, std::vector<Edge>> triangle_dual(
    const std::vector<Lattice>& tris) {
  std::vector<Coord> centres;
  centres.reserve(tris.size());
  for (const auto& t : tris) centres.push_back(triangle_centre(t));
  std::vector<std::size_t> order(tris.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return row_major_less(centres[a], centres[b]);
  });
  std::vector<Coord> sorted(tris.size());
  for (std::size_t i = 0; i < order.size(); ++i) sorted[i] = centres[order[i]];

  // (vertex, node) incidences grouped by vertex
  std::vector<std::pair<Coord, std::size_t>> incidence;
  incidence.reserve(tris.size() * 3);
  for (std::size_t node = 0; node < order.size(); ++node) {
    const auto& t = tris[order[node]];
    incidence.emplace_back(gasket_vertex(t[0], t[1]), node);
    incidence.emplace_back(gasket_vertex(t[0] + 1, t[1]), node);
    incidence.emplace_back(gasket_vertex(t[0], t[1] + 1), node);
  }
  std::sort(incidence.begin(), incidence.end(), [](const auto& a, const auto& b) {
    if (!(a.first == b.first)) return row_major_less(a.first, b.first);
    return a.second < b.second;
  });

  std::vector<Edge> edges;
  for (std::size_t i = 0; i < incidence.size();) {
    std::size_t j = i;
    while (j < incidence.size() && incidence[j].first == incidence[i].first) ++j;
    for (std::size_t p = i; p < j; ++p) {
      for (std::size_t q = p + 1; q < j; ++q) {
        edges.push_back({incidence[p].second, incidence[q].second});
      }
    }
    i = j;
  }
  std::sort(edges.begin(), edges.end());
  edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
  return {std::move(sorted), std::move(edges)};
}

// Dual carpet: one node per cell, linked to horizontal/vertical neighbours.
std::pair<std::vector<Coord>, std::vector<Edge>> cell_dual(std::vector<Lattice> cells) {
  std::sort(cells.begin(), cells.end(), [](const Lattice& a, const Lattice& b) {
    return a[1] != b[1] ? a[1] < b[1] : a[0] < b[0];
  });
  std::vector<Coord> centres;
  centres.reserve(cells.size());
  for (const auto& c : cells) centres.push_back(cell_centre(c));

  std::vector<Edge> edges;
  for (std::size_t i = 0; i < cells.size(); ++i) {
    const auto& c = cells[i];
    for (const Lattice step : {Lattice{1, 0}, Lattice{0, 1}}) {
      if (auto j = locate(centres, cell_centre({c[0] + step[0], c[1] + step[1]}))) {
        edges.push_back({std::min(i, *j), std::max(i, *j)});
      }
    }
  }
  std::sort(edges.begin(), edges.end());
  return {std::move(centres), std::move(edges)};
}

NodeRoles roles_from_coords(FractalKind kind, int g, const std::vector<Coord>& pts) {
  NodeRoles roles;
  auto pick = [&](std::vector<std::size_t>& out, const Coord& c) {
    out.push_back(must_locate(pts, c));
  };
  switch (kind) {
    case FractalKind::SG: {
      const std::int64_t s = std::int64_t{1} << (g - 1);
      for (const Coord c : {Coord{0, 0}, Coord{2 * s, 0}, Coord{s, s}}) pick(roles.outer, c);
      if (g >= 2) {
        const std::int64_t h = s / 2;
        for (const Coord c : {gasket_vertex(h, 0), gasket_vertex(0, h), gasket_vertex(h, h)}) {
          pick(roles.inner, c);
        }
      }
      break;
    }
    case FractalKind::DSG: {
      if (g < 1) break;
      const std::int64_t side = std::int64_t{1} << g;
      for (const Lattice t : {Lattice{0, 0}, Lattice{side - 1, 0}, Lattice{0, side - 1}}) {
        pick(roles.outer, triangle_centre(t));
      }
      if (g >= 2) {
        const std::int64_t h = side / 2;
        // each hole corner touches two triangles; take the lower-indexed one
        for (const Lattice corner : {Lattice{h, 0}, Lattice{0, h}, Lattice{h, h}}) {
          std::optional<std::size_t> best;
          for (const Lattice t : {corner, Lattice{corner[0] - 1, corner[1]},
                                  Lattice{corner[0], corner[1] - 1}}) {
            if (t[0] < 0 || t[1] < 0) continue;
            if (auto idx = locate(pts, triangle_centre(t))) {
              if (!best || *idx < *best) best = idx;
            }
          }
          if (!best) throw Error(ErrorCode::invalid_graph, "dual gasket hole corner has no cell");
          roles.inner.push_back(*best);
        }
      }
      break;
    }
    case FractalKind::SC: {
      const std::int64_t side = ipow(3, g - 1);
      for (const Coord c : {Coord{0, 0}, Coord{side, 0}, Coord{0, side}, Coord{side, side}}) {
        pick(roles.outer, c);
      }
      if (g >= 2) {
        const std::int64_t t = side / 3;
        for (const Coord c : {Coord{t, t}, Coord{2 * t, t}, Coord{t, 2 * t}, Coord{2 * t, 2 * t}}) {
          pick(roles.inner, c);
        }
      }
      break;
    }
    case FractalKind::DSC: {
      if (g < 1) break;
      const std::int64_t side = ipow(3, g);
      for (const Lattice c : {Lattice{0, 0}, Lattice{side - 1, 0}, Lattice{0, side - 1},
                              Lattice{side - 1, side - 1}}) {
        pick(roles.outer, cell_centre(c));
      }
      if (g >= 2) {
        // cells touching the central hole only at its corner points
        const std::int64_t t = side / 3;
        for (const Lattice c : {Lattice{t - 1, t - 1}, Lattice{2 * t, t - 1},
                                Lattice{t - 1, 2 * t}, Lattice{2 * t, 2 * t}}) {
          pick(roles.inner, cell_centre(c));
        }
      }
      break;
    }
    case FractalKind::Custom:
      break;
  }
  std::sort(roles.outer.begin(), roles.outer.end());
  std::sort(roles.inner.begin(), roles.inner.end());
  return roles;
}

Network assemble(FractalKind kind, int g, std::pair<std::vector<Coord>, std::vector<Edge>> graph) {
  auto roles = roles_from_coords(kind, g, graph.first);
  const std::size_t n = graph.first.size();
  return Network(kind, g, n, std::move(graph.second), std::move(graph.first), std::move(roles));
}

bool has_edge(const std::vector<Edge>& sorted_edges, std::size_t a, std::size_t b) {
  const Edge e{std::min(a, b), std::max(a, b)};
  return std::binary_search(sorted_edges.begin(), sorted_edges.end(), e);
}

}  // namespace

std::string_view to_string(FractalKind kind) noexcept {
  switch (kind) {
    case FractalKind::SG: return "SG";
    case FractalKind::DSG: return "DSG";
    case FractalKind::SC: return "SC";
    case FractalKind::DSC: return "DSC";
    case FractalKind::Custom: return "custom";
  }
  return "custom";
}

FractalKind parse_kind(std::string_view text) {
  std::string lower(text);
  std::transform(lower.begin(), lower.end(), lower.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  if (lower == "sg") return FractalKind::SG;
  if (lower == "dsg") return FractalKind::DSG;
  if (lower == "sc") return FractalKind::SC;
  if (lower == "dsc") return FractalKind::DSC;
  if (lower == "custom") return FractalKind::Custom;
  throw Error(ErrorCode::invalid_argument, "unknown fractal kind '" + std::string(text) + "'");
}

std::optional<Dimensions> dimensions(FractalKind kind) noexcept {
  switch (kind) {
    case FractalKind::SG:
    case FractalKind::DSG:
      return Dimensions{std::log(3.0) / std::log(2.0), 2.0 * std::log(3.0) / std::log(5.0)};
    case FractalKind::SC:
    case FractalKind::DSC:
      return Dimensions{std::log(8.0) / std::log(3.0), 1.805};
    case FractalKind::Custom:
      break;
  }
  return std::nullopt;
}

bool is_connected(std::size_t node_count, const std::vector<Edge>& edges) {
  if (node_count == 0) return false;
  std::vector<std::vector<std::size_t>> adj(node_count);
  for (const auto& e : edges) {
    adj[e.a].push_back(e.b);
    adj[e.b].push_back(e.a);
  }
  std::vector<char> seen(node_count, 0);
  std::vector<std::size_t> queue{0};
  seen[0] = 1;
  std::size_t reached = 1;
  for (std::size_t head = 0; head < queue.size(); ++head) {
    for (auto next : adj[queue[head]]) {
      if (!seen[next]) {
        seen[next] = 1;
        ++reached;
        queue.push_back(next);
      }
    }
  }
  return reached == node_count;
}

Network::Network(FractalKind kind, int generation, std::size_t node_count,
                 std::vector<Edge> edges, std::vector<Coord> coords, NodeRoles roles)
    : kind_(kind),
      generation_(generation),
      node_count_(node_count),
      edges_(std::move(edges)),
      coords_(std::move(coords)),
      roles_(std::move(roles)) {
  if (generation_ < 0) throw Error(ErrorCode::invalid_graph, "negative generation");
  if (node_count_ == 0) throw Error(ErrorCode::invalid_graph, "graph has no nodes");
  for (auto& e : edges_) {
    if (e.a == e.b) throw Error(ErrorCode::invalid_graph, "self-loop on node " + std::to_string(e.a));
    if (e.a > e.b) std::swap(e.a, e.b);
    if (e.b >= node_count_) throw Error(ErrorCode::invalid_graph, "edge endpoint out of range");
  }
  std::sort(edges_.begin(), edges_.end());
  if (std::adjacent_find(edges_.begin(), edges_.end()) != edges_.end()) {
    throw Error(ErrorCode::invalid_graph, "duplicate edge");
  }
  if (!coords_.empty()) {
    if (coords_.size() != node_count_) {
      throw Error(ErrorCode::invalid_graph, "coordinate count does not match node count");
    }
    auto sorted = coords_;
    std::sort(sorted.begin(), sorted.end(), row_major_less);
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
      throw Error(ErrorCode::invalid_graph, "duplicate coordinates");
    }
  }
  for (const auto* list : {&roles_.outer, &roles_.inner}) {
    for (auto idx : *list) {
      if (idx >= node_count_) throw Error(ErrorCode::invalid_graph, "role index out of range");
    }
  }
  if (!is_connected(node_count_, edges_)) {
    throw Error(ErrorCode::invalid_graph, "graph is not connected");
  }
}

std::vector<std::size_t> Network::degrees() const {
  std::vector<std::size_t> deg(node_count_, 0);
  for (const auto& e : edges_) {
    ++deg[e.a];
    ++deg[e.b];
  }
  return deg;
}

std::optional<std::size_t> Network::find(const Coord& c) const {
  if (std::is_sorted(coords_.begin(), coords_.end(), row_major_less)) {
    return locate(coords_, c);
  }
  auto it = std::find(coords_.begin(), coords_.end(), c);
  if (it == coords_.end()) return std::nullopt;
  return static_cast<std::size_t>(it - coords_.begin());
}

std::uint64_t closed_form_node_count(FractalKind kind, int g) {
  if (g < 0) throw Error(ErrorCode::invalid_generation, "generation must be non-negative");
  constexpr auto max = std::numeric_limits<std::uint64_t>::max();
  switch (kind) {
    case FractalKind::SG: {
      auto p = saturating_pow(3, g);
      return p == max ? max : (p + 3) / 2;
    }
    case FractalKind::DSG:
      return saturating_pow(3, g);
    case FractalKind::SC: {
      // (11/70) 8^g + (8/15) 3^g + 8/7 == (33 * 8^g + 112 * 3^g + 240) / 210
      std::uint64_t a = saturating_pow(8, g);
      std::uint64_t total = 0;
      if (a == max || __builtin_mul_overflow(a, std::uint64_t{33}, &total) ||
          __builtin_add_overflow(total, 112 * saturating_pow(3, g) + 240, &total)) {
        return max;
      }
      return total / 210;
    }
    case FractalKind::DSC:
      return saturating_pow(8, g);
    case FractalKind::Custom:
      break;
  }
  throw Error(ErrorCode::invalid_argument, "custom graphs have no closed-form size");
}

Network generate(FractalKind kind, int g, const GenerateOptions& options) {
  if (kind == FractalKind::Custom) {
    throw Error(ErrorCode::invalid_argument, "custom graphs cannot be generated");
  }
  if (g < 1) throw Error(ErrorCode::invalid_generation, "generation must be >= 1");
  const auto expected = closed_form_node_count(kind, g);
  if (expected > options.node_cap) {
    throw Error(ErrorCode::generation_too_large,
                std::string(to_string(kind)) + " generation " + std::to_string(g) + " has " +
                    std::to_string(expected) + " nodes, above the cap of " +
                    std::to_string(options.node_cap));
  }

  switch (kind) {
    case FractalKind::SG: {
      std::vector<std::array<Coord, 3>> polys;
      for (const auto& t : gasket_triangles(g - 1)) {
        polys.push_back({gasket_vertex(t[0], t[1]), gasket_vertex(t[0] + 1, t[1]),
                         gasket_vertex(t[0], t[1] + 1)});
      }
      return assemble(kind, g, polygon_graph(polys));
    }
    case FractalKind::DSG:
      return assemble(kind, g, triangle_dual(gasket_triangles(g)));
    case FractalKind::SC: {
      std::vector<std::array<Coord, 4>> polys;
      for (const auto& c : carpet_cells(g - 1)) {
        const auto x = c[0], y = c[1];
        polys.push_back({Coord{x, y}, Coord{x + 1, y}, Coord{x + 1, y + 1}, Coord{x, y + 1}});
      }
      return assemble(kind, g, polygon_graph(polys));
    }
    case FractalKind::DSC:
      return assemble(kind, g, cell_dual(carpet_cells(g)));
    case FractalKind::Custom:
      break;
  }
  throw Error(ErrorCode::invalid_argument, "unsupported kind");
}

NodeRoles node_roles(const Network& network) {
  if (network.kind() == FractalKind::Custom) return network.roles();
  return roles_from_coords(network.kind(), network.generation(), network.coords());
}

std::vector<std::size_t> inner_hole_corners(const Network& network) {
  if (network.kind() != FractalKind::Custom && network.generation() < 2) {
    throw Error(ErrorCode::no_inner_hole,
                "generation " + std::to_string(network.generation()) + " has no inner hole");
  }
  auto roles = node_roles(network);
  if (roles.inner.empty()) throw Error(ErrorCode::no_inner_hole, "network defines no inner hole");
  return roles.inner;
}

Network dualize(const Network& network) {
  const auto& pts = network.coords();
  const auto& edges = network.edges();
  const int g = network.generation();
  switch (network.kind()) {
    case FractalKind::SG: {
      std::vector<Lattice> tris;
      for (std::size_t i = 0; i < pts.size(); ++i) {
        const auto [x, y] = pts[i];
        auto right = network.find({x + 2, y});
        auto apex = network.find({x + 1, y + 1});
        if (!right || !apex) continue;
        if (has_edge(edges, i, *right) && has_edge(edges, i, *apex) &&
            has_edge(edges, *right, *apex)) {
          tris.push_back({(x - y) / 2, y});
        }
      }
      return assemble(FractalKind::DSG, g - 1, triangle_dual(tris));
    }
    case FractalKind::SC: {
      std::vector<Lattice> cells;
      for (std::size_t i = 0; i < pts.size(); ++i) {
        const auto [x, y] = pts[i];
        auto r = network.find({x + 1, y});
        auto u = network.find({x, y + 1});
        auto ru = network.find({x + 1, y + 1});
        if (!r || !u || !ru) continue;
        // holes of side one are framed by edges too; the digit rule tells them apart
        if (has_edge(edges, i, *r) && has_edge(edges, i, *u) && has_edge(edges, *r, *ru) &&
            has_edge(edges, *u, *ru) && in_carpet(x, y, g - 1)) {
          cells.push_back({x, y});
        }
      }
      return assemble(FractalKind::DSC, g - 1, cell_dual(std::move(cells)));
    }
    default:
      throw Error(ErrorCode::not_dualizable,
                  std::string(to_string(network.kind())) + " networks cannot be dualized");
  }
}

Laplacian laplacian(const Network& network) {
  const auto n = static_cast<Eigen::Index>(network.node_count());
  std::vector<Eigen::Triplet<double>> entries;
  entries.reserve(network.edges().size() * 2 + network.node_count());
  const auto deg = network.degrees();
  for (Eigen::Index k = 0; k < n; ++k) {
    entries.emplace_back(k, k, static_cast<double>(deg[static_cast<std::size_t>(k)]));
  }
  for (const auto& e : network.edges()) {
    const auto a = static_cast<Eigen::Index>(e.a);
    const auto b = static_cast<Eigen::Index>(e.b);
    entries.emplace_back(a, b, -1.0);
    entries.emplace_back(b, a, -1.0);
  }
  Eigen::SparseMatrix<double> m(n, n);
  m.setFromTriplets(entries.begin(), entries.end());
  m.makeCompressed();
  return Laplacian(std::move(m));
}

}  // namespace sierpinski
