#pragma once

#include <cstddef>
#include <optional>
#include <string_view>
#include <vector>

#include "sierpinski/fractal_graph.hpp"

namespace sierpinski::tools {

/// Exact fraction as printed (numerator over denominator, not reduced).
struct Fraction {
  long long num{};
  long long den{};

  /// num/den == count/n in exact integer arithmetic.
  bool equals(std::size_t count, std::size_t n) const noexcept {
    return num * static_cast<long long>(n) == static_cast<long long>(count) * den;
  }
  double value() const noexcept { return static_cast<double>(num) / static_cast<double>(den); }
};

enum class TableId { I, II, III, IV, V, VI, VII, VIII };

std::string_view to_string(TableId id) noexcept;
/// Accepts roman numerals (any case) or 1..8.
TableId parse_table_id(std::string_view text);
const std::vector<TableId>& all_tables();

enum class TableKind { degeneracy, trapping };

/// Degeneracy tables (I, III, V, VII): rho of one or two eigenvalues and the
/// printed long-time average.
struct DegeneracyEntry {
  int generation{};
  std::vector<Fraction> rho;        ///< one per tracked eigenvalue
  std::optional<double> chi_lb;     ///< printed value, absent when the table shows "--"
};

/// Trapping tables (II, IV, VI, VIII): N0 for outer and inner traps.
struct TrappingEntry {
  int generation{};
  Fraction outer;
  Fraction inner;
};

struct ChiTolerance {
  bool relative{};
  double value{};
};

struct ReferenceTable {
  TableId id;
  TableKind kind;
  FractalKind fractal;
  std::vector<double> energies;  ///< tracked eigenvalues (degeneracy tables)
  ChiTolerance chi_tolerance;
  int default_max_generation{};  ///< largest generation inside the desk-scale budget
  std::vector<DegeneracyEntry> degeneracy;
  std::vector<TrappingEntry> trapping;
};

const ReferenceTable& reference_table(TableId id);

}  // namespace sierpinski::tools
