#include "sierpinski/tools/tables.hpp"

#include <cmath>
#include <fstream>

#include "sierpinski/error.hpp"
#include "sierpinski/report_io.hpp"
#include "sierpinski/spectral.hpp"

namespace sierpinski::tools {

namespace {

std::string fraction_text(std::size_t count, std::size_t n) {
  return std::to_string(count) + "/" + std::to_string(n);
}

std::string fraction_text(const Fraction& f) {
  return std::to_string(f.num) + "/" + std::to_string(f.den);
}

std::string energy_label(double e) { return std::to_string(static_cast<long long>(std::lround(e))); }

void note(const TableContext& ctx, const std::string& message) {
  if (ctx.progress) ctx.progress(message);
}

DegeneracyRow degeneracy_row(const ReferenceTable& table, const DegeneracyEntry& entry,
                             const TableContext& ctx) {
  const auto net = generate(table.fractal, entry.generation);
  note(ctx, "table " + std::string(to_string(table.id)) + ": g=" +
                std::to_string(entry.generation) + " N=" + std::to_string(net.node_count()));
  const auto spec = cached_decompose(net, false, ctx.cache);
  const auto dos = degeneracies(spec);

  DegeneracyRow row;
  row.generation = entry.generation;
  row.n = net.node_count();
  row.expected = entry.rho;
  row.rho_matched = true;
  for (std::size_t i = 0; i < table.energies.size(); ++i) {
    const auto d = dos.multiplicity(table.energies[i]);
    row.multiplicity.push_back(d);
    row.rho_matched = row.rho_matched && entry.rho[i].equals(d, row.n);
  }
  row.chi_lb = chi_lb(dos);
  row.expected_chi_lb = entry.chi_lb;
  if (entry.chi_lb) {
    const double diff = std::abs(row.chi_lb - *entry.chi_lb);
    row.chi_matched = table.chi_tolerance.relative
                          ? diff <= table.chi_tolerance.value * std::abs(*entry.chi_lb)
                          : diff <= table.chi_tolerance.value;
  }
  return row;
}

TrapSide trap_side(const Network& net, const Laplacian& lap, TrapScheme scheme,
                   const Fraction& expected, const TableContext& ctx) {
  const auto config = resolve_traps(net, scheme, 1.0);
  ComplexSolveOptions options;
  options.threshold = ctx.threshold;
  const auto spectrum = complex_spectrum(lap, config, options);
  TrapSide side;
  side.n0 = spectrum.n0;
  side.n0_lo = spectrum.n0_lo;
  side.n0_hi = spectrum.n0_hi;
  side.n0_exact = spectrum.n0_exact;
  side.expected = expected;
  side.count_matched = expected.equals(spectrum.n0, spectrum.size());
  return side;
}

TrappingRow trapping_row(const ReferenceTable& table, const TrappingEntry& entry,
                         const TableContext& ctx) {
  const auto net = generate(table.fractal, entry.generation);
  const auto lap = laplacian(net);
  TrappingRow row;
  row.generation = entry.generation;
  row.n = net.node_count();
  note(ctx, "table " + std::string(to_string(table.id)) + ": g=" +
                std::to_string(entry.generation) + " N=" + std::to_string(row.n) + " outer traps");
  row.outer = trap_side(net, lap, TrapScheme::outer_corners, entry.outer, ctx);
  note(ctx, "table " + std::string(to_string(table.id)) + ": g=" +
                std::to_string(entry.generation) + " N=" + std::to_string(row.n) + " inner traps");
  row.inner = trap_side(net, lap, TrapScheme::inner_hole_corners, entry.inner, ctx);
  return row;
}

nlohmann::json side_json(const TrapSide& s, std::size_t n) {
  nlohmann::json doc{{"N0", s.n0},
                     {"pi_inf", static_cast<double>(s.n0) / static_cast<double>(n)},
                     {"sensitivity", {{"lo", s.n0_lo}, {"hi", s.n0_hi}}},
                     {"reference", fraction_text(s.expected)},
                     {"matched", s.matched()}};
  if (s.n0_exact) doc["N0_exact"] = *s.n0_exact;
  return doc;
}

}  // namespace

bool TableReport::matched() const noexcept {
  for (const auto& r : degeneracy) {
    if (!r.matched()) return false;
  }
  for (const auto& r : trapping) {
    if (!r.matched()) return false;
  }
  return true;
}

TableReport run_table(TableId id, std::optional<int> max_generation, const TableContext& context) {
  const auto& table = reference_table(id);
  const int limit = max_generation.value_or(table.default_max_generation);
  TableReport report;
  report.id = id;
  if (table.kind == TableKind::degeneracy) {
    for (const auto& entry : table.degeneracy) {
      if (entry.generation > limit) {
        report.skipped.push_back(entry.generation);
        continue;
      }
      report.degeneracy.push_back(degeneracy_row(table, entry, context));
    }
  } else {
    for (const auto& entry : table.trapping) {
      if (entry.generation > limit) {
        report.skipped.push_back(entry.generation);
        continue;
      }
      report.trapping.push_back(trapping_row(table, entry, context));
    }
  }
  return report;
}

nlohmann::json to_json(const TableReport& report) {
  const auto& table = reference_table(report.id);
  nlohmann::json rows = nlohmann::json::array();
  for (const auto& r : report.degeneracy) {
    nlohmann::json rho = nlohmann::json::object();
    for (std::size_t i = 0; i < table.energies.size(); ++i) {
      rho[energy_label(table.energies[i])] = {{"computed", fraction_text(r.multiplicity[i], r.n)},
                                              {"reference", fraction_text(r.expected[i])}};
    }
    nlohmann::json row{{"g", r.generation},
                       {"N", r.n},
                       {"rho", std::move(rho)},
                       {"chi_lb", r.chi_lb},
                       {"ref_chi_lb", r.expected_chi_lb ? nlohmann::json(*r.expected_chi_lb) : nlohmann::json()},
                       {"status", r.matched() ? "matched" : "mismatched"}};
    rows.push_back(std::move(row));
  }
  for (const auto& r : report.trapping) {
    rows.push_back({{"g", r.generation},
                    {"N", r.n},
                    {"outer", side_json(r.outer, r.n)},
                    {"inner", side_json(r.inner, r.n)},
                    {"status", r.matched() ? "matched" : "mismatched"}});
  }
  return {{"table", to_string(report.id)},
          {"fractal", to_string(table.fractal)},
          {"rows", std::move(rows)},
          {"skipped_generations", report.skipped},
          {"matched", report.matched()}};
}

void write_table_csv(const TableReport& report, const std::filesystem::path& path) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::ofstream out(path);
  if (!out) throw Error(ErrorCode::io_error, "cannot write " + path.string());
  const auto& table = reference_table(report.id);
  if (table.kind == TableKind::degeneracy) {
    out << "g,N";
    for (double e : table.energies) out << ",rho(" << energy_label(e) << ")";
    out << ",chi_lb";
    for (double e : table.energies) out << ",ref_rho(" << energy_label(e) << ")";
    out << ",ref_chi_lb,status\n";
    for (const auto& r : report.degeneracy) {
      out << r.generation << ',' << r.n;
      for (auto d : r.multiplicity) out << ',' << fraction_text(d, r.n);
      out << ',' << format_double(r.chi_lb);
      for (const auto& f : r.expected) out << ',' << fraction_text(f);
      out << ',' << (r.expected_chi_lb ? format_double(*r.expected_chi_lb) : std::string("--"));
      out << ',' << (r.matched() ? "matched" : "mismatched") << '\n';
    }
  } else {
    out << "g,N,N0_outer,pi_inf_outer,N0_outer_lo,N0_outer_hi,N0_outer_exact,"
           "N0_inner,pi_inf_inner,N0_inner_lo,N0_inner_hi,N0_inner_exact,"
           "ref_outer,ref_inner,status\n";
    auto side = [&](const TrapSide& s, std::size_t n) {
      out << ',' << s.n0 << ',' << format_double(static_cast<double>(s.n0) / static_cast<double>(n))
          << ',' << s.n0_lo << ',' << s.n0_hi << ','
          << (s.n0_exact ? std::to_string(*s.n0_exact) : std::string());
    };
    for (const auto& r : report.trapping) {
      out << r.generation << ',' << r.n;
      side(r.outer, r.n);
      side(r.inner, r.n);
      out << ',' << fraction_text(r.outer.expected) << ',' << fraction_text(r.inner.expected) << ','
          << (r.matched() ? "matched" : "mismatched") << '\n';
    }
  }
  if (!out) throw Error(ErrorCode::io_error, "write to " + path.string() + " failed");
}

}  // namespace sierpinski::tools
