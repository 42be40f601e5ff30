#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <random>

#include "sierpinski/error.hpp"
#include "sierpinski/graph_io.hpp"
#include "sierpinski/report_io.hpp"

using namespace sierpinski;
namespace fs = std::filesystem;

namespace {

struct TempDir {
  fs::path path;
  TempDir() {
    path = fs::temp_directory_path() / ("sierpinski-io-" + std::to_string(std::random_device{}()));
    fs::create_directories(path);
  }
  ~TempDir() { fs::remove_all(path); }
};

void write_text(const fs::path& p, const std::string& text) { std::ofstream(p) << text; }

ErrorCode code_of(auto&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  return ErrorCode::cache_corrupt;
}

}  // namespace

TEST_SUITE("io") {

TEST_CASE("network round trip") {
  TempDir dir;
  for (auto kind : {FractalKind::SG, FractalKind::DSG, FractalKind::SC, FractalKind::DSC}) {
    const auto net = generate(kind, 2);
    const auto file = dir.path / "net.json";
    save_network(net, file);
    CHECK(load_network(file) == net);
    CHECK(network_from_json(to_json(net)) == net);
  }
  const auto doc = to_json(generate(FractalKind::SC, 2));
  CHECK(doc.at("n") == 16);
  CHECK(doc.at("kind") == "SC");
}

TEST_CASE("custom graphs") {
  const nlohmann::json doc{{"kind", "custom"}, {"generation", 0}, {"n", 3}, {"edges", {{0, 1}, {1, 2}}}};
  const auto net = network_from_json(doc);
  CHECK(net.kind() == FractalKind::Custom);
  CHECK(net.edges().size() == 2);
  auto broken = doc;
  broken["edges"] = {{0, 1}};
  CHECK(code_of([&] { network_from_json(broken); }) == ErrorCode::invalid_graph);
  TempDir dir;
  write_text(dir.path / "bad.json", "{ not json");
  CHECK(code_of([&] { load_network(dir.path / "bad.json"); }) == ErrorCode::invalid_graph);
  CHECK(code_of([&] { load_network(dir.path / "missing.json"); }) == ErrorCode::io_error);
}

TEST_CASE("spectrum csv round trip") {
  TempDir dir;
  const auto s = decompose(laplacian(generate(FractalKind::SG, 4)), false);
  const auto file = dir.path / "spectrum.csv";
  write_spectrum_csv(s.eigenvalues(), file);
  const auto back = read_spectrum_csv(file);
  CHECK(back == s.eigenvalues());
  write_text(dir.path / "bad.csv", "n,eigenvalue\n0,1.0\n2,3.0\n");
  CHECK(code_of([&] { read_spectrum_csv(dir.path / "bad.csv"); }) == ErrorCode::io_error);
  write_text(dir.path / "bad2.csv", "n,value\n");
  CHECK(code_of([&] { read_spectrum_csv(dir.path / "bad2.csv"); }) == ErrorCode::io_error);
}

TEST_CASE("shortest double text") {
  std::mt19937_64 rng(1);
  std::uniform_real_distribution<double> u(-1e6, 1e6);
  for (int i = 0; i < 200; ++i) {
    const double x = u(rng);
    CHECK(std::stod(format_double(x)) == x);
  }
  CHECK(format_double(0.5) == "0.5");
}

TEST_CASE("time series with sidecar") {
  TempDir dir;
  const TimeSeries ts{TimeGrid::linear(0.0, 1.0, 3), {1.0, 0.5, 0.25}, Observable::p_bar};
  const auto file = dir.path / "series.csv";
  write_time_series(ts, file, {{"kind", "SG"}});
  std::ifstream in(file);
  std::string header;
  std::getline(in, header);
  CHECK(header == "t,value");
  const auto side = read_json(dir.path / "series.csv.json");
  CHECK(side.at("observable") == "p_bar");
  CHECK(side.at("grid").at("points") == 3);
  CHECK(side.at("network").at("kind") == "SG");
}

TEST_CASE("degeneracy and trapping reports") {
  const auto dos = degeneracies(decompose(laplacian(generate(FractalKind::DSG, 2)), false));
  const auto doc = to_json(dos);
  CHECK(doc.at("N") == 9);
  bool saw_three = false;
  for (const auto& c : doc.at("clusters")) {
    if (c.contains("E_integer") && c.at("E_integer") == 3) {
      saw_three = true;
      CHECK(c.at("D") == 3);
    }
  }
  CHECK(saw_three);

  const auto net = generate(FractalKind::DSG, 2);
  const auto config = resolve_traps(net, TrapScheme::outer_corners);
  const auto cs = complex_spectrum(laplacian(net), config);
  const auto rep = trapping_report(cs, config);
  CHECK(rep.at("N0") == 1);
  CHECK(rep.at("N") == 9);
  CHECK(rep.at("scheme") == "outer");
  CHECK(rep.at("sensitivity").at("stable") == true);
  CHECK(rep.at("N0_exact") == 1);
  CHECK(rep.at("trace_gamma").get<double>() == doctest::Approx(3.0));
}

}
