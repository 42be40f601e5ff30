#include <doctest.h>

#include <cmath>
#include <fstream>
#include <regex>
#include <sstream>

#include "sierpinski/tools/reference_tables.hpp"

using namespace sierpinski::tools;

// The embedded reference values are re-read from the source document and
// compared entry by entry.

namespace {

struct PrintedRow {
  int g{};
  std::vector<std::string> cells;
};

std::vector<std::vector<PrintedRow>> printed_tables() {
  std::ifstream in(SIERPINSKI_REFERENCE_SOURCE);
  REQUIRE(in);
  std::stringstream ss;
  ss << in.rdbuf();
  const std::string text = ss.str();
  std::vector<std::vector<PrintedRow>> tables;
  std::size_t pos = 0;
  while ((pos = text.find("\\begin{tabular}", pos)) != std::string::npos) {
    const auto end = text.find("\\end{tabular}", pos);
    const auto body = text.substr(pos, end - pos);
    pos = end;
    std::vector<PrintedRow> rows;
    std::istringstream lines(body.substr(body.find("\\hline") + 6));
    std::string line;
    while (std::getline(lines, line)) {
      line = std::regex_replace(line, std::regex(R"(\$|\\\\|\s+$)"), "");
      if (line.find('&') == std::string::npos) continue;
      PrintedRow row;
      std::istringstream cells(line);
      std::string cell;
      std::getline(cells, cell, '&');
      row.g = std::stoi(cell);
      while (std::getline(cells, cell, '&')) row.cells.push_back(cell);
      rows.push_back(row);
    }
    tables.push_back(rows);
  }
  return tables;
}

Fraction fraction_of(const std::string& cell) {
  std::smatch m;
  if (std::regex_search(cell, m, std::regex(R"((\d+)\s*(?:\\,)?\s*/\s*(?:\\,)?\s*(\d+))"))) {
    return {std::stoll(m[1]), std::stoll(m[2])};
  }
  REQUIRE(std::regex_match(cell, std::regex(R"(\s*0\s*)")));
  return {0, 1};
}

std::optional<double> decimal_of(const std::string& cell) {
  if (cell.find("--") != std::string::npos) return std::nullopt;
  std::smatch m;
  if (std::regex_search(cell, m, std::regex(R"(([0-9.]+)\\times\s*10\^\{(-?\d+)\})"))) {
    return std::stod(m[1]) * std::pow(10.0, std::stoi(m[2]));
  }
  REQUIRE(std::regex_search(cell, m, std::regex(R"([0-9]+\.[0-9]+)")));
  return std::stod(m[0]);
}

bool same(const Fraction& a, const Fraction& b) { return a.num * b.den == b.num * a.den; }

}  // namespace

TEST_SUITE("reference") {

TEST_CASE("embedded tables match the source document") {
  const auto tables = printed_tables();
  REQUIRE(tables.size() == 8);
  for (std::size_t t = 0; t < 8; ++t) {
    const auto& ref = reference_table(all_tables()[t]);
    CAPTURE(to_string(ref.id));
    const auto& rows = tables[t];
    if (ref.kind == TableKind::degeneracy) {
      REQUIRE(rows.size() == ref.degeneracy.size());
      for (std::size_t r = 0; r < rows.size(); ++r) {
        const auto& e = ref.degeneracy[r];
        CAPTURE(rows[r].g);
        CHECK(e.generation == rows[r].g);
        REQUIRE(rows[r].cells.size() == e.rho.size() + 1);
        for (std::size_t i = 0; i < e.rho.size(); ++i) {
          CHECK(same(e.rho[i], fraction_of(rows[r].cells[i])));
        }
        const auto chi = decimal_of(rows[r].cells.back());
        CHECK(chi.has_value() == e.chi_lb.has_value());
        if (chi && e.chi_lb) CHECK(*e.chi_lb == doctest::Approx(*chi).epsilon(1e-12));
      }
    } else {
      REQUIRE(rows.size() == ref.trapping.size());
      for (std::size_t r = 0; r < rows.size(); ++r) {
        const auto& e = ref.trapping[r];
        CAPTURE(rows[r].g);
        CHECK(e.generation == rows[r].g);
        REQUIRE(rows[r].cells.size() == 2);
        CHECK(same(e.outer, fraction_of(rows[r].cells[0])));
        CHECK(same(e.inner, fraction_of(rows[r].cells[1])));
      }
    }
  }
}

TEST_CASE("table metadata") {
  CHECK(reference_table(TableId::I).fractal == sierpinski::FractalKind::DSG);
  CHECK(reference_table(TableId::I).energies == std::vector<double>{3.0, 5.0});
  CHECK(reference_table(TableId::III).energies == std::vector<double>{6.0});
  CHECK(reference_table(TableId::V).energies == std::vector<double>{3.0});
  CHECK(reference_table(TableId::VII).energies == std::vector<double>{4.0});
  CHECK(reference_table(TableId::I).chi_tolerance.value == 5e-5);
  CHECK(reference_table(TableId::VII).chi_tolerance.relative);
  CHECK(reference_table(TableId::VI).default_max_generation == 4);
  CHECK(reference_table(TableId::VIII).default_max_generation == 5);
}

}
