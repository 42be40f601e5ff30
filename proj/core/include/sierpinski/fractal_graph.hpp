#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <string_view>
#include <vector>

#include <Eigen/Dense>
#include <Eigen/SparseCore>

namespace sierpinski {

/// Sierpinski gasket, dual gasket, carpet, dual carpet. `Custom` marks graphs
/// loaded from a file that carry no fractal metadata.
enum class FractalKind { SG, DSG, SC, DSC, Custom };

std::string_view to_string(FractalKind kind) noexcept;

/// Accepts "sg", "DSG", ... (case-insensitive) and "custom".
FractalKind parse_kind(std::string_view text);

/// Integer lattice position. Gaskets use the sheared frame x = 2u + v, y = v
/// of the triangular lattice; dual cells store their centre scaled to stay
/// integral (centroid x3 for triangles, centre x2 for squares).
struct Coord {
  std::int64_t x{};
  std::int64_t y{};

  friend bool operator==(const Coord&, const Coord&) = default;
};

/// Node order: by row (y), then by column (x).
inline bool row_major_less(const Coord& a, const Coord& b) noexcept {
  return a.y != b.y ? a.y < b.y : a.x < b.x;
}

/// Undirected edge, always stored with a < b.
struct Edge {
  std::size_t a{};
  std::size_t b{};

  friend auto operator<=>(const Edge&, const Edge&) = default;
};

/// Fractal and spectral dimension of a family (stored as metadata only).
struct Dimensions {
  double fractal{};
  double spectral{};
};

std::optional<Dimensions> dimensions(FractalKind kind) noexcept;

/// Distinguished nodes used for trap placement.
struct NodeRoles {
  std::vector<std::size_t> outer;  ///< outer corners (3 gaskets, 4 carpets)
  std::vector<std::size_t> inner;  ///< corners of the largest inner hole

  friend bool operator==(const NodeRoles&, const NodeRoles&) = default;
};

/// Immutable connected simple graph with lattice coordinates and fractal
/// metadata. The constructor validates every structural invariant.
class Network {
public:
  Network(FractalKind kind, int generation, std::size_t node_count,
          std::vector<Edge> edges, std::vector<Coord> coords = {},
          NodeRoles roles = {});

  FractalKind kind() const noexcept { return kind_; }
  int generation() const noexcept { return generation_; }
  std::size_t node_count() const noexcept { return node_count_; }
  const std::vector<Edge>& edges() const noexcept { return edges_; }
  const std::vector<Coord>& coords() const noexcept { return coords_; }
  const NodeRoles& roles() const noexcept { return roles_; }
  std::optional<Dimensions> dimensions() const noexcept {
    return sierpinski::dimensions(kind_);
  }

  std::vector<std::size_t> degrees() const;

  /// Index of the node at `c`, if any. Requires coordinates.
  std::optional<std::size_t> find(const Coord& c) const;

  friend bool operator==(const Network&, const Network&) = default;

private:
  FractalKind kind_;
  int generation_;
  std::size_t node_count_;
  std::vector<Edge> edges_;
  std::vector<Coord> coords_;
  NodeRoles roles_;
};

/// Closed-form node count of a fractal family at generation g. Saturates at
/// UINT64_MAX instead of overflowing.
std::uint64_t closed_form_node_count(FractalKind kind, int generation);

struct GenerateOptions {
  std::size_t node_cap = 500'000;
};

/// Deterministic construction of SG/DSG/SC/DSC at generation g >= 1.
Network generate(FractalKind kind, int generation,
                 const GenerateOptions& options = {});

/// Recomputes outer and inner-hole corners from coordinates. The inner list
/// is empty for g = 1. Custom graphs return the roles they were built with.
NodeRoles node_roles(const Network& network);

/// Inner-hole corners, throwing `no_inner_hole` where the hole does not exist.
std::vector<std::size_t> inner_hole_corners(const Network& network);

/// Replaces each smallest triangle (square) by a node. The dual of SG (SC) at
/// generation g is the DSG (DSC) at generation g - 1.
Network dualize(const Network& network);

bool is_connected(std::size_t node_count, const std::vector<Edge>& edges);

/// Graph Laplacian: degrees on the diagonal, -1 for each edge.
class Laplacian {
public:
  explicit Laplacian(Eigen::SparseMatrix<double> matrix)
      : matrix_(std::move(matrix)) {}

  std::size_t dimension() const noexcept {
    return static_cast<std::size_t>(matrix_.rows());
  }
  const Eigen::SparseMatrix<double>& sparse() const noexcept { return matrix_; }
  Eigen::MatrixXd dense() const { return Eigen::MatrixXd(matrix_); }
  Eigen::VectorXd diagonal() const { return matrix_.diagonal(); }

private:
  Eigen::SparseMatrix<double> matrix_;
};

Laplacian laplacian(const Network& network);

}  // namespace sierpinski
