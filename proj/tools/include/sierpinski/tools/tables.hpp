#pragma once

#include <cstddef>
#include <filesystem>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "sierpinski/tools/cache.hpp"
#include "sierpinski/tools/reference_tables.hpp"
#include "sierpinski/trapping.hpp"

namespace sierpinski::tools {

struct TableContext {
  SpectrumCache* cache = nullptr;
  ZeroThreshold threshold{};
  std::function<void(const std::string&)> progress;
};

struct DegeneracyRow {
  int generation{};
  std::size_t n{};
  std::vector<std::size_t> multiplicity;  ///< D(E) per tracked eigenvalue
  std::vector<Fraction> expected;
  double chi_lb{};
  std::optional<double> expected_chi_lb;
  bool rho_matched{};
  std::optional<bool> chi_matched;  ///< absent when the table prints no value

  bool matched() const noexcept { return rho_matched && chi_matched.value_or(true); }
};

struct TrapSide {
  std::size_t n0{};
  std::size_t n0_lo{};
  std::size_t n0_hi{};
  std::optional<std::size_t> n0_exact;
  Fraction expected;
  bool count_matched{};

  bool stable() const noexcept { return n0_lo == n0 && n0_hi == n0; }
  bool matched() const noexcept { return count_matched && stable(); }
};

struct TrappingRow {
  int generation{};
  std::size_t n{};
  TrapSide outer;
  TrapSide inner;

  bool matched() const noexcept { return outer.matched() && inner.matched(); }
};

struct TableReport {
  TableId id{};
  std::vector<DegeneracyRow> degeneracy;
  std::vector<TrappingRow> trapping;
  std::vector<int> skipped;  ///< printed generations above the requested maximum

  bool matched() const noexcept;
};

/// Recomputes every printed row up to `max_generation` (the table's
/// desk-scale default when absent) and tags it against the reference values.
TableReport run_table(TableId id, std::optional<int> max_generation, const TableContext& context);

nlohmann::json to_json(const TableReport& report);
void write_table_csv(const TableReport& report, const std::filesystem::path& path);

}  // namespace sierpinski::tools
