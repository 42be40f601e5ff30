#include "sierpinski/report_io.hpp"

#include <charconv>
#include <fstream>
#include <vector>

#include "sierpinski/error.hpp"

namespace sierpinski {

namespace {

std::ofstream open_out(const std::filesystem::path& path) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorCode::io_error, "cannot write " + path.string());
  return out;
}

void finish(std::ofstream& out, const std::filesystem::path& path) {
  out.flush();
  if (!out) throw Error(ErrorCode::io_error, "write to " + path.string() + " failed");
}

}  // namespace

std::string format_double(double value) {
  char buf[32];
  const auto res = std::to_chars(buf, buf + sizeof buf, value);
  return std::string(buf, res.ptr);
}

void write_spectrum_csv(const Eigen::VectorXd& eigenvalues, const std::filesystem::path& path) {
  auto out = open_out(path);
  out << "n,eigenvalue\n";
  for (Eigen::Index i = 0; i < eigenvalues.size(); ++i) {
    out << i << ',' << format_double(eigenvalues(i)) << '\n';
  }
  finish(out, path);
}

Eigen::VectorXd read_spectrum_csv(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::io_error, "cannot read " + path.string());
  std::string line;
  if (!std::getline(in, line) || line != "n,eigenvalue") {
    throw Error(ErrorCode::io_error, path.string() + ": missing 'n,eigenvalue' header");
  }
  std::vector<double> values;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    const auto comma = line.find(',');
    double v = 0.0;
    std::size_t idx = 0;
    const char* last = line.data() + line.size();
    if (comma == std::string::npos ||
        std::from_chars(line.data(), line.data() + comma, idx).ec != std::errc{} ||
        idx != values.size() || std::from_chars(line.data() + comma + 1, last, v).ptr != last) {
      throw Error(ErrorCode::io_error, path.string() + ": malformed row '" + line + "'");
    }
    values.push_back(v);
  }
  return Eigen::Map<Eigen::VectorXd>(values.data(), static_cast<Eigen::Index>(values.size()));
}

nlohmann::json to_json(const DegeneracySpectrum& spectrum) {
  nlohmann::json clusters = nlohmann::json::array();
  for (const auto& c : spectrum.clusters) {
    nlohmann::json row{{"E", c.energy}, {"D", c.multiplicity}, {"rho", c.rho}};
    if (c.snapped) row["E_integer"] = *c.snapped;
    clusters.push_back(std::move(row));
  }
  return {{"N", spectrum.node_count},
          {"cluster_tolerance", spectrum.tolerance},
          {"clusters", std::move(clusters)}};
}

nlohmann::json grid_json(const TimeGrid& grid) {
  nlohmann::json doc{{"scheme", to_string(grid.scheme())},
                     {"points", grid.size()},
                     {"t_first", grid.front()},
                     {"t_last", grid.back()}};
  if (grid.scheme() == GridScheme::poissonian) {
    doc["rate"] = grid.rate();
    doc["seed"] = grid.seed();
  }
  return doc;
}

void write_time_series(const TimeSeries& series, const std::filesystem::path& path,
                       const nlohmann::json& network_identity) {
  const auto t = series.grid.points();
  if (t.size() != series.values.size()) {
    throw Error(ErrorCode::invalid_argument, "series values do not match the grid");
  }
  auto out = open_out(path);
  out << "t,value\n";
  for (std::size_t i = 0; i < t.size(); ++i) {
    out << format_double(t[i]) << ',' << format_double(series.values[i]) << '\n';
  }
  finish(out, path);
  auto sidecar = path;
  sidecar += ".json";
  write_json({{"observable", to_string(series.observable)},
              {"network", network_identity},
              {"grid", grid_json(series.grid)}},
             sidecar);
}

void write_complex_spectrum_csv(const ComplexSpectrum& spectrum, const std::filesystem::path& path) {
  auto out = open_out(path);
  out << "n,eps,gamma\n";
  for (std::size_t i = 0; i < spectrum.size(); ++i) {
    const auto k = static_cast<Eigen::Index>(i);
    out << i << ',' << format_double(spectrum.eps(k)) << ',' << format_double(spectrum.gamma(k))
        << '\n';
  }
  finish(out, path);
}

nlohmann::json trapping_report(const ComplexSpectrum& spectrum, const TrapConfig& config) {
  const double cutoff = spectrum.threshold.absolute(config.gamma);
  nlohmann::json doc{
      {"scheme", to_string(config.scheme)},
      {"traps", config.nodes},
      {"gamma", config.gamma},
      {"N", spectrum.size()},
      {"N0", spectrum.n0},
      {"pi_inf", spectrum.pi_inf()},
      {"threshold", cutoff},
      {"criterion", to_string(spectrum.threshold.criterion)},
      {"sensitivity",
       {{"lo", spectrum.n0_lo}, {"hi", spectrum.n0_hi}, {"stable", spectrum.threshold_stable()}}},
      {"trace_gamma", spectrum.gamma.sum()},
  };
  if (spectrum.n0_exact) doc["N0_exact"] = *spectrum.n0_exact;
  return doc;
}

nlohmann::json to_json(const RecurrenceVerdict& verdict) {
  return {
      {"delta_hat", verdict.delta.delta},
      {"ci", {verdict.delta.ci_lo, verdict.delta.ci_hi}},
      {"maxima", verdict.delta.maxima},
      {"M", verdict.samples},
      {"scheme", to_string(verdict.sampling)},
      {"polya_partial", verdict.polya_partial},
      {"classification", to_string(verdict.classification)},
  };
}

void write_json(const nlohmann::json& doc, const std::filesystem::path& path) {
  auto out = open_out(path);
  out << doc.dump(2) << '\n';
  finish(out, path);
}

nlohmann::json read_json(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::io_error, "cannot read " + path.string());
  try {
    return nlohmann::json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::io_error, path.string() + ": " + e.what());
  }
}

}  // namespace sierpinski
