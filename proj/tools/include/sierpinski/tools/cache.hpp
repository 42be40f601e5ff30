#pragma once

#include <filesystem>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "sierpinski/fractal_graph.hpp"
#include "sierpinski/spectral.hpp"

namespace sierpinski::tools {

/// On-disk store of Laplacian decompositions keyed by (kind, generation,
/// Laplacian hash). Each entry is `<stem>.values.csv`, an optional
/// `<stem>.vectors.bin` and a `<stem>.meta.json` holding content hashes.
/// Writers take an exclusive flock on `<dir>/.lock` and publish files by
/// rename; readers take a shared lock.
class SpectrumCache {
public:
  using WarningSink = std::function<void(const std::string&)>;

  explicit SpectrumCache(std::filesystem::path directory, WarningSink warn = {});

  /// A decomposition for `network`, or nullopt on a miss. A corrupt entry is
  /// reported through the warning sink and treated as a miss.
  std::optional<SpectralDecomposition> load(const Network& network, bool need_vectors);

  void store(const Network& network, const SpectralDecomposition& decomposition);

  const std::filesystem::path& directory() const noexcept { return dir_; }
  const std::vector<std::string>& warnings() const noexcept { return warnings_; }

  static std::string stem(const Network& network);

private:
  void warn(const std::string& message);

  std::filesystem::path dir_;
  WarningSink sink_;
  std::vector<std::string> warnings_;
};

/// --cache-dir wins, then SIERPINSKI_CACHE_DIR; otherwise caching is off.
std::optional<std::filesystem::path> resolve_cache_dir(
    const std::optional<std::filesystem::path>& flag);

/// decompose(), going through `cache` when it is not null.
SpectralDecomposition cached_decompose(const Network& network, bool want_vectors,
                                       SpectrumCache* cache, const SolverBudget& budget = {});

}  // namespace sierpinski::tools
