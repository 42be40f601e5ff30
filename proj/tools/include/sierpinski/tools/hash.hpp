#pragma once

#include <filesystem>
#include <string>
#include <string_view>

#include "sierpinski/fractal_graph.hpp"

namespace sierpinski::tools {

/// Lower-case hex SHA-256.
std::string sha256_hex(std::string_view data);
std::string sha256_file(const std::filesystem::path& path);

/// Hash of the canonical Laplacian text (node count plus sorted edge list).
std::string laplacian_hash(const Network& network);

}  // namespace sierpinski::tools
