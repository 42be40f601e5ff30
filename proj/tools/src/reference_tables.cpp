#include "sierpinski/tools/reference_tables.hpp"

#include <cctype>
#include <string>

#include "sierpinski/error.hpp"

namespace sierpinski::tools {

namespace {

ReferenceTable make_table_i() {
  ReferenceTable t{TableId::I, TableKind::degeneracy, FractalKind::DSG, {3.0, 5.0}, {false, 5e-5}, 8, {}, {}};
  t.degeneracy = {
      {2, {{1, 3}, {1, 9}}, 0.2346},
      {3, {{2, 9}, {4, 27}}, 0.1221},
      {4, {{5, 27}, {13, 81}}, 0.0870},
      {5, {{14, 81}, {40, 243}}, 0.0763},
      {6, {{41, 243}, {121, 729}}, 0.0730},
      {7, {{122, 729}, {364, 2187}}, 0.0719},
      {8, {{365, 2187}, {1093, 6561}}, 0.0716},
  };
  return t;
}

ReferenceTable make_table_ii() {
  ReferenceTable t{TableId::II, TableKind::trapping, FractalKind::DSG, {}, {}, 7, {}, {}};
  t.trapping = {
      {2, {1, 9}, {0, 9}},
      {3, {9, 27}, {6, 27}},
      {4, {43, 81}, {36, 81}},
      {5, {165, 243}, {150, 243}},
      {6, {571, 729}, {540, 729}},
      {7, {1869, 2187}, {1806, 2187}},
  };
  return t;
}

ReferenceTable make_table_iii() {
  ReferenceTable t{TableId::III, TableKind::degeneracy, FractalKind::SG, {6.0}, {false, 5e-5}, 8, {}, {}};
  t.degeneracy = {
      {2, {{0, 6}}, 0.2778},
      {3, {{3, 15}}, 0.1378},
      {4, {{12, 42}}, 0.1179},
      {5, {{39, 123}}, 0.1296},
      {6, {{120, 366}}, 0.1374},
      {7, {{363, 1095}}, 0.1408},
      {8, {{1092, 3282}}, 0.1421},
      {9, {{3279, 9843}}, 0.1426},
  };
  return t;
}

ReferenceTable make_table_iv() {
  ReferenceTable t{TableId::IV, TableKind::trapping, FractalKind::SG, {}, {}, 7, {}, {}};
  t.trapping = {
      {2, {0, 6}, {0, 6}},
      {3, {4, 15}, {1, 15}},
      {4, {21, 42}, {15, 42}},
      {5, {82, 123}, {70, 123}},
      {6, {285, 366}, {261, 366}},
      {7, {934, 1095}, {886, 1095}},
  };
  return t;
}

ReferenceTable make_table_v() {
  ReferenceTable t{TableId::V, TableKind::degeneracy, FractalKind::DSC, {3.0}, {true, 0.01}, 4, {}, {}};
  t.degeneracy = {
      {2, {{2, 64}}, 2.44e-2},
      {3, {{4, 512}}, 2.98e-3},
      {4, {{20, 4096}}, 3.89e-4},
      {5, {{148, 32768}}, 6.60e-5},
      {6, {{1172, 262144}}, std::nullopt},
  };
  return t;
}

ReferenceTable make_table_vi() {
  ReferenceTable t{TableId::VI, TableKind::trapping, FractalKind::DSC, {}, {}, 4, {}, {}};
  t.trapping = {
      {2, {15, 64}, {14, 64}},
      {3, {126, 512}, {126, 512}},
      {4, {1030, 4096}, {1030, 4096}},
  };
  return t;
}

ReferenceTable make_table_vii() {
  ReferenceTable t{TableId::VII, TableKind::degeneracy, FractalKind::SC, {4.0}, {true, 0.01}, 5, {}, {}};
  t.degeneracy = {
      {2, {{3, 16}}, 1.25e-1},
      {3, {{6, 96}}, 1.89e-2},
      {4, {{8, 688}}, 2.29e-3},
      {5, {{16, 5280}}, 2.92e-4},
      {6, {{128, 41584}}, 4.54e-5},
  };
  return t;
}

ReferenceTable make_table_viii() {
  ReferenceTable t{TableId::VIII, TableKind::trapping, FractalKind::SC, {}, {}, 5, {}, {}};
  t.trapping = {
      {2, {2, 16}, {2, 16}},
      {3, {23, 96}, {22, 96}},
      {4, {168, 688}, {168, 688}},
      {5, {1314, 5280}, {1314, 5280}},
  };
  return t;
}

}  // namespace

std::string_view to_string(TableId id) noexcept {
  switch (id) {
    case TableId::I: return "I";
    case TableId::II: return "II";
    case TableId::III: return "III";
    case TableId::IV: return "IV";
    case TableId::V: return "V";
    case TableId::VI: return "VI";
    case TableId::VII: return "VII";
    case TableId::VIII: return "VIII";
  }
  return "I";
}

TableId parse_table_id(std::string_view text) {
  std::string upper(text);
  for (auto& c : upper) c = static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
  static constexpr std::string_view arabic[] = {"1", "2", "3", "4", "5", "6", "7", "8"};
  for (std::size_t i = 0; i < all_tables().size(); ++i) {
    const auto id = all_tables()[i];
    if (upper == to_string(id) || upper == arabic[i]) return id;
  }
  throw Error(ErrorCode::invalid_argument, "unknown table '" + std::string(text) + "'");
}

const std::vector<TableId>& all_tables() {
  static const std::vector<TableId> ids{TableId::I,  TableId::II,  TableId::III, TableId::IV,
                                        TableId::V,  TableId::VI,  TableId::VII, TableId::VIII};
  return ids;
}

const ReferenceTable& reference_table(TableId id) {
  static const ReferenceTable tables[] = {make_table_i(),   make_table_ii(),  make_table_iii(),
                                      make_table_iv(),  make_table_v(),   make_table_vi(),
                                      make_table_vii(), make_table_viii()};
  return tables[static_cast<int>(id)];
}

}  // namespace sierpinski::tools
