#pragma once

#include <cstdint>
#include <filesystem>
#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "sierpinski/fractal_graph.hpp"
#include "sierpinski/time_series.hpp"
#include "sierpinski/trapping.hpp"

namespace sierpinski::tools {

enum class Command { generate, spectrum, dynamics, trap, recurrence, counting, report_tables };

std::string_view to_string(Command c) noexcept;
Command parse_command(std::string_view text);

/// Unset fields fall back to per-command defaults.
struct GridSpec {
  std::optional<GridScheme> scheme;
  std::optional<double> t_min;
  std::optional<double> t_max;
  std::optional<std::size_t> points;
  std::optional<double> rate;  ///< Poisson sampling rate
};

/// Fully serializable description of one CLI invocation.
struct ExperimentSpec {
  Command command{Command::generate};
  std::optional<FractalKind> kind;
  std::optional<int> generation;
  std::optional<std::string> graph_file;

  std::size_t k{0};
  std::size_t j{0};
  std::string observable{"p_kj"};
  std::optional<double> energy;  ///< dominant eigenvalue for alpha_dominant
  GridSpec grid;

  TrapScheme trap_scheme{TrapScheme::outer_corners};
  double gamma{1.0};
  std::vector<std::size_t> traps;
  std::optional<double> threshold;
  ZeroCriterion criterion{ZeroCriterion::refined};
  bool classical{false};

  std::uint64_t seed{1};
  std::vector<std::string> tables;
  std::optional<int> max_generation;

  std::string out{"out"};
  std::optional<std::string> cache_dir;
};

nlohmann::json to_json(const ExperimentSpec& spec);
ExperimentSpec spec_from_json(const nlohmann::json& doc);

/// SHA-256 of the canonical spec text, ignoring the cache location.
std::string input_hash(const ExperimentSpec& spec);

/// Builds the time grid of `spec`, filling gaps from the given defaults.
TimeGrid make_grid(const GridSpec& grid, GridScheme default_scheme, double default_t_min,
                   double default_t_max, std::size_t default_points, std::uint64_t seed);

struct RunOptions {
  std::function<void(const std::string&)> progress;
  std::function<void(const std::string&)> warning;
};

struct RunResult {
  std::vector<std::filesystem::path> outputs;  ///< relative to spec.out
  nlohmann::json summary;
  nlohmann::json manifest;
  std::vector<std::string> warnings;
};

/// Executes the spec, writes its artifacts plus spec.json and manifest.json
/// below `spec.out`.
RunResult run(const ExperimentSpec& spec, const RunOptions& options = {});

/// Exit status for a failure: 3 for numerical failures, 2 otherwise.
int exit_code_for(const std::exception& error) noexcept;

/// {"error": code, "message": text, "exit_code": n}
nlohmann::json error_json(const std::exception& error);

}  // namespace sierpinski::tools
