#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "oracles.hpp"
#include "sierpinski/error.hpp"
#include "sierpinski/fractal_graph.hpp"

using namespace sierpinski;

namespace {

template <class F>
ErrorCode code_of(F&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("expected an Error");
  return ErrorCode::invalid_argument;
}

}  // namespace

TEST_SUITE("fractal_graph") {

TEST_CASE("node counts") {
  CHECK(generate(FractalKind::SG, 3).node_count() == 15);
  CHECK(generate(FractalKind::DSG, 2).node_count() == 9);
  CHECK(generate(FractalKind::SC, 2).node_count() == 16);
  CHECK(generate(FractalKind::DSC, 1).node_count() == 8);
  CHECK(generate(FractalKind::SC, 1).node_count() == 4);

  const std::uint64_t sc[] = {4, 16, 96, 688, 5280};
  for (int g = 1; g <= 5; ++g) {
    CHECK(closed_form_node_count(FractalKind::SC, g) == sc[g - 1]);
    CHECK(generate(FractalKind::SC, g).node_count() == sc[g - 1]);
  }
  for (int g = 1; g <= 7; ++g) {
    const auto p3 = static_cast<std::uint64_t>(std::llround(std::pow(3.0, g)));
    CHECK(generate(FractalKind::SG, g).node_count() == (p3 + 3) / 2);
    CHECK(generate(FractalKind::DSG, g).node_count() == p3);
  }
  for (int g = 1; g <= 4; ++g) {
    CHECK(generate(FractalKind::DSC, g).node_count() == (std::uint64_t{1} << (3 * g)));
  }
}

TEST_CASE("gasket edges match an independent subdivision") {
  for (int g = 1; g <= 6; ++g) {
    const auto net = generate(FractalKind::SG, g);
    const auto ref = oracle::gasket_by_subdivision(g);
    CHECK(net.edges().size() == static_cast<std::size_t>(std::llround(std::pow(3.0, g))));
    CHECK(ref.nodes == net.node_count());
    CHECK(ref.edges.size() == net.edges().size());
    CHECK(ref.degrees() == oracle::plain(net).degrees());
  }
}

TEST_CASE("K3 Laplacian") {
  const auto lap = laplacian(generate(FractalKind::SG, 1)).dense();
  CHECK(lap.rows() == 3);
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) CHECK(lap(i, j) == (i == j ? 2.0 : -1.0));
  }
}

TEST_CASE("Laplacian rows sum to zero") {
  for (auto kind : {FractalKind::SG, FractalKind::DSG, FractalKind::SC, FractalKind::DSC}) {
    for (int g = 1; g <= 3; ++g) {
      const auto net = generate(kind, g);
      const auto lap = laplacian(net).dense();
      CHECK(lap.rowwise().sum().cwiseAbs().maxCoeff() == 0.0);
      CHECK(lap.isApprox(lap.transpose()));
      CHECK(is_connected(net.node_count(), net.edges()));
    }
  }
}

TEST_CASE("SG g=2 degrees") {
  const auto net = generate(FractalKind::SG, 2);
  const auto deg = net.degrees();
  const auto& outer = net.roles().outer;
  REQUIRE(outer.size() == 3);
  for (std::size_t i = 0; i < net.node_count(); ++i) {
    const bool corner = std::find(outer.begin(), outer.end(), i) != outer.end();
    CHECK(deg[i] == (corner ? 2u : 4u));
  }
}

TEST_CASE("node roles") {
  for (int g = 2; g <= 6; ++g) {
    const auto net = generate(FractalKind::SG, g);
    const auto roles = node_roles(net);
    REQUIRE(roles.outer.size() == 3);
    for (auto c : roles.outer) CHECK(net.degrees()[c] == 2);
    CHECK(roles.inner.size() == 3);
    CHECK(roles == net.roles());
  }
  CHECK(node_roles(generate(FractalKind::SC, 2)).outer.size() == 4);
  CHECK(node_roles(generate(FractalKind::SC, 2)).inner.size() == 4);
  CHECK(node_roles(generate(FractalKind::DSG, 3)).inner.size() == 3);
  CHECK(node_roles(generate(FractalKind::DSC, 2)).inner.size() == 4);

  const auto sg1 = generate(FractalKind::SG, 1);
  CHECK(node_roles(sg1).inner.empty());
  CHECK(code_of([&] { inner_hole_corners(sg1); }) == ErrorCode::no_inner_hole);
}

TEST_CASE("row-major node order") {
  for (auto kind : {FractalKind::SG, FractalKind::DSG, FractalKind::SC, FractalKind::DSC}) {
    const auto net = generate(kind, 3);
    const auto& c = net.coords();
    CHECK(std::is_sorted(c.begin(), c.end(), row_major_less));
    for (std::size_t i = 0; i < c.size(); ++i) CHECK(net.find(c[i]) == i);
  }
}

TEST_CASE("dualize") {
  const auto single = dualize(generate(FractalKind::SG, 1));
  CHECK(single.node_count() == 1);
  CHECK(single.edges().empty());

  const auto ring = dualize(generate(FractalKind::SC, 2));
  CHECK(ring.node_count() == 8);
  CHECK(ring.edges().size() == 8);
  for (auto d : ring.degrees()) CHECK(d == 2);

  for (int g = 2; g <= 5; ++g) {
    const auto d = dualize(generate(FractalKind::SG, g));
    const auto ref = generate(FractalKind::DSG, g - 1);
    CHECK(d.kind() == FractalKind::DSG);
    CHECK(d.node_count() == ref.node_count());
    CHECK(d.edges() == ref.edges());
  }
  for (int g = 2; g <= 3; ++g) {
    const auto d = dualize(generate(FractalKind::SC, g));
    const auto ref = generate(FractalKind::DSC, g - 1);
    CHECK(d.node_count() == ref.node_count());
    CHECK(d.edges() == ref.edges());
  }
  CHECK(code_of([] { dualize(generate(FractalKind::DSG, 2)); }) == ErrorCode::not_dualizable);
  CHECK(code_of([] { dualize(generate(FractalKind::DSC, 1)); }) == ErrorCode::not_dualizable);
}

TEST_CASE("generation errors") {
  CHECK(code_of([] { generate(FractalKind::SG, 0); }) == ErrorCode::invalid_generation);
  CHECK(code_of([] { generate(FractalKind::DSC, -1); }) == ErrorCode::invalid_generation);
  CHECK(code_of([] { generate(FractalKind::SG, 40); }) == ErrorCode::generation_too_large);
  CHECK(code_of([] { generate(FractalKind::SC, 4, GenerateOptions{100}); }) ==
        ErrorCode::generation_too_large);
  CHECK(closed_form_node_count(FractalKind::DSC, 60) == UINT64_MAX);
}

TEST_CASE("network validation") {
  using V = std::vector<Edge>;
  CHECK(code_of([] { Network(FractalKind::Custom, 0, 3, V{{0, 0}, {1, 2}}); }) ==
        ErrorCode::invalid_graph);
  CHECK(code_of([] { Network(FractalKind::Custom, 0, 4, V{{0, 1}, {2, 3}}); }) ==
        ErrorCode::invalid_graph);
  CHECK(code_of([] { Network(FractalKind::Custom, 0, 2, V{{0, 5}}); }) == ErrorCode::invalid_graph);
  CHECK(code_of([] { Network(FractalKind::Custom, 0, 2, V{{0, 1}, {0, 1}}); }) ==
        ErrorCode::invalid_graph);
  CHECK(oracle::chain(5).edges().size() == 4);
}

TEST_CASE("kind parsing") {
  CHECK(parse_kind("sg") == FractalKind::SG);
  CHECK(parse_kind("DSC") == FractalKind::DSC);
  CHECK(to_string(FractalKind::DSG) == "DSG");
  CHECK(code_of([] { parse_kind("koch"); }) == ErrorCode::invalid_argument);
  CHECK(dimensions(FractalKind::SG)->spectral == doctest::Approx(2 * std::log(3) / std::log(5)));
  CHECK_FALSE(dimensions(FractalKind::Custom).has_value());
}

}
