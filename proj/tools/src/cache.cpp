#include "sierpinski/tools/cache.hpp"

#include <cstdint>
#include <cstdlib>
#include <cstring>
#include <fstream>
#include <iostream>

#include <fcntl.h>
#include <sys/file.h>
#include <unistd.h>

#include <nlohmann/json.hpp>

#include "sierpinski/error.hpp"
#include "sierpinski/report_io.hpp"
#include "sierpinski/tools/hash.hpp"

namespace sierpinski::tools {

namespace fs = std::filesystem;

namespace {

constexpr char kMagic[4] = {'S', 'I', 'E', 'V'};
constexpr std::uint32_t kFormat = 1;

class FileLock {
public:
  FileLock(const fs::path& path, bool exclusive) {
    fd_ = ::open(path.c_str(), O_RDWR | O_CREAT | O_CLOEXEC, 0644);
    if (fd_ < 0) throw Error(ErrorCode::io_error, "cannot open lock file " + path.string());
    if (::flock(fd_, exclusive ? LOCK_EX : LOCK_SH) != 0) {
      ::close(fd_);
      throw Error(ErrorCode::io_error, "cannot lock " + path.string());
    }
  }
  ~FileLock() {
    ::flock(fd_, LOCK_UN);
    ::close(fd_);
  }
  FileLock(const FileLock&) = delete;
  FileLock& operator=(const FileLock&) = delete;

private:
  int fd_;
};

void write_vectors(const Eigen::MatrixXd& v, const fs::path& path) {
  std::ofstream out(path, std::ios::binary);
  const auto n = static_cast<std::uint64_t>(v.rows());
  out.write(kMagic, sizeof kMagic);
  out.write(reinterpret_cast<const char*>(&kFormat), sizeof kFormat);
  out.write(reinterpret_cast<const char*>(&n), sizeof n);
  out.write(reinterpret_cast<const char*>(v.data()),
            static_cast<std::streamsize>(v.size() * sizeof(double)));
  if (!out) throw Error(ErrorCode::io_error, "write to " + path.string() + " failed");
}

Eigen::MatrixXd read_vectors(const fs::path& path, std::size_t n) {
  std::ifstream in(path, std::ios::binary);
  char magic[4];
  std::uint32_t format = 0;
  std::uint64_t size = 0;
  in.read(magic, sizeof magic);
  in.read(reinterpret_cast<char*>(&format), sizeof format);
  in.read(reinterpret_cast<char*>(&size), sizeof size);
  if (!in || std::memcmp(magic, kMagic, sizeof magic) != 0 || format != kFormat || size != n) {
    throw Error(ErrorCode::cache_corrupt, path.filename().string() + " has a bad header");
  }
  const auto dim = static_cast<Eigen::Index>(n);
  Eigen::MatrixXd v(dim, dim);
  in.read(reinterpret_cast<char*>(v.data()), static_cast<std::streamsize>(v.size() * sizeof(double)));
  if (!in || in.peek() != std::char_traits<char>::eof()) {
    throw Error(ErrorCode::cache_corrupt, path.filename().string() + " has the wrong length");
  }
  return v;
}

// Writes through a temporary name so readers never see a partial file.
template <class Writer>
void publish(const fs::path& target, Writer&& write) {
  auto tmp = target;
  tmp += ".tmp." + std::to_string(::getpid());
  write(tmp);
  fs::rename(tmp, target);
}

}  // namespace

SpectrumCache::SpectrumCache(fs::path directory, WarningSink warn)
    : dir_(std::move(directory)), sink_(std::move(warn)) {
  std::error_code ec;
  fs::create_directories(dir_, ec);
  if (ec) throw Error(ErrorCode::io_error, "cannot create cache directory " + dir_.string());
}

std::string SpectrumCache::stem(const Network& network) {
  std::string kind(to_string(network.kind()));
  for (auto& c : kind) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return kind + "-g" + std::to_string(network.generation()) + "-" +
         laplacian_hash(network).substr(0, 16);
}

void SpectrumCache::warn(const std::string& message) {
  warnings_.push_back(message);
  if (sink_) {
    sink_(message);
  } else {
    std::cerr << "warning: " << message << '\n';
  }
}

std::optional<SpectralDecomposition> SpectrumCache::load(const Network& network, bool need_vectors) {
  const auto base = dir_ / stem(network);
  const auto meta_path = fs::path(base.string() + ".meta.json");
  FileLock lock(dir_ / ".lock", false);
  if (!fs::exists(meta_path)) return std::nullopt;
  try {
    const auto meta = read_json(meta_path);
    const auto values_path = fs::path(base.string() + ".values.csv");
    if (meta.at("format").get<std::uint32_t>() != kFormat ||
        meta.at("laplacian_sha256").get<std::string>() != laplacian_hash(network) ||
        meta.at("n").get<std::size_t>() != network.node_count()) {
      throw Error(ErrorCode::cache_corrupt, "metadata does not describe this network");
    }
    const bool has_vectors = !meta.at("vectors_sha256").is_null();
    if (need_vectors && !has_vectors) return std::nullopt;
    if (sha256_file(values_path) != meta.at("values_sha256").get<std::string>()) {
      throw Error(ErrorCode::cache_corrupt, "eigenvalue file hash mismatch");
    }
    auto values = read_spectrum_csv(values_path);
    if (static_cast<std::size_t>(values.size()) != network.node_count()) {
      throw Error(ErrorCode::cache_corrupt, "eigenvalue count mismatch");
    }
    if (!need_vectors) return SpectralDecomposition(std::move(values));
    const auto vectors_path = fs::path(base.string() + ".vectors.bin");
    if (sha256_file(vectors_path) != meta.at("vectors_sha256").get<std::string>()) {
      throw Error(ErrorCode::cache_corrupt, "eigenvector file hash mismatch");
    }
    return SpectralDecomposition(std::move(values), read_vectors(vectors_path, network.node_count()));
  } catch (const std::exception& e) {
    warn(std::string("cache-corrupt: ") + stem(network) + ": " + e.what() + "; recomputing");
    return std::nullopt;
  }
}

void SpectrumCache::store(const Network& network, const SpectralDecomposition& decomposition) {
  const auto base = dir_ / stem(network);
  const auto meta_path = fs::path(base.string() + ".meta.json");
  const auto values_path = fs::path(base.string() + ".values.csv");
  const auto vectors_path = fs::path(base.string() + ".vectors.bin");
  FileLock lock(dir_ / ".lock", true);

  if (!decomposition.has_vectors() && fs::exists(meta_path)) {
    // keep an intact entry that already carries eigenvectors
    try {
      const auto meta = read_json(meta_path);
      if (!meta.at("vectors_sha256").is_null() &&
          meta.at("laplacian_sha256").get<std::string>() == laplacian_hash(network) &&
          meta.at("values_sha256").get<std::string>() == sha256_file(values_path) &&
          meta.at("vectors_sha256").get<std::string>() == sha256_file(vectors_path)) {
        return;
      }
    } catch (const std::exception&) {
    }
  }

  publish(values_path, [&](const fs::path& p) { write_spectrum_csv(decomposition.eigenvalues(), p); });
  nlohmann::json meta{{"format", kFormat},
                      {"kind", to_string(network.kind())},
                      {"generation", network.generation()},
                      {"n", network.node_count()},
                      {"laplacian_sha256", laplacian_hash(network)},
                      {"values_sha256", sha256_file(values_path)},
                      {"vectors_sha256", nullptr}};
  if (decomposition.has_vectors()) {
    publish(vectors_path, [&](const fs::path& p) { write_vectors(decomposition.eigenvectors(), p); });
    meta["vectors_sha256"] = sha256_file(vectors_path);
  }
  publish(meta_path, [&](const fs::path& p) { write_json(meta, p); });
}

std::optional<fs::path> resolve_cache_dir(const std::optional<fs::path>& flag) {
  if (flag && !flag->empty()) return flag;
  if (const char* env = std::getenv("SIERPINSKI_CACHE_DIR"); env && *env) return fs::path(env);
  return std::nullopt;
}

SpectralDecomposition cached_decompose(const Network& network, bool want_vectors,
                                       SpectrumCache* cache, const SolverBudget& budget) {
  if (cache) {
    if (auto hit = cache->load(network, want_vectors)) return std::move(*hit);
  }
  auto result = decompose(laplacian(network), want_vectors, budget);
  if (cache) cache->store(network, result);
  return result;
}

}  // namespace sierpinski::tools
