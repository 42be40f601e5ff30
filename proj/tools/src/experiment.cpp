#include "sierpinski/tools/experiment.hpp"

#include <chrono>
#include <fstream>
#include <iostream>

#include "sierpinski/dynamics.hpp"
#include "sierpinski/error.hpp"
#include "sierpinski/graph_io.hpp"
#include "sierpinski/recurrence.hpp"
#include "sierpinski/report_io.hpp"
#include "sierpinski/spectral.hpp"
#include "sierpinski/tools/cache.hpp"
#include "sierpinski/tools/hash.hpp"
#include "sierpinski/tools/tables.hpp"

#ifndef SIERPINSKI_VERSION
#define SIERPINSKI_VERSION "0.0.0"
#endif

namespace sierpinski::tools {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

template <class T>
json optional_json(const std::optional<T>& v) {
  return v ? json(*v) : json();
}

template <class T>
std::optional<T> optional_from(const json& doc, const char* key) {
  if (!doc.contains(key) || doc.at(key).is_null()) return std::nullopt;
  return doc.at(key).get<T>();
}

double default_threshold(ZeroCriterion c) {
  return c == ZeroCriterion::refined ? ZeroThreshold{}.relative : ZeroThreshold::raw_default().relative;
}

ZeroThreshold threshold_of(const ExperimentSpec& spec) {
  return {spec.criterion, spec.threshold.value_or(default_threshold(spec.criterion))};
}

class Session {
public:
  Session(const ExperimentSpec& spec, const RunOptions& options)
      : spec_(spec), options_(options), out_(spec.out) {
    fs::create_directories(out_);
    std::optional<fs::path> flag;
    if (spec.cache_dir) flag = *spec.cache_dir;
    if (auto dir = resolve_cache_dir(flag)) {
      cache_.emplace(*dir, [this](const std::string& m) { warn(m); });
    }
  }

  SpectrumCache* cache() { return cache_ ? &*cache_ : nullptr; }
  const fs::path& out() const { return out_; }

  fs::path claim(const std::string& name) {
    outputs_.push_back(name);
    return out_ / name;
  }

  void write_series(const TimeSeries& series, const std::string& name, const json& identity) {
    write_time_series(series, claim(name), identity);
    outputs_.push_back(name + ".json");
  }

  void progress(const std::string& message) {
    if (options_.progress) options_.progress(message);
  }

  void warn(const std::string& message) {
    warnings_.push_back(message);
    if (options_.warning) {
      options_.warning(message);
    } else {
      std::cerr << "warning: " << message << '\n';
    }
  }

  Network network() const {
    if (spec_.graph_file) return load_network(*spec_.graph_file);
    if (!spec_.kind || !spec_.generation) {
      throw Error(ErrorCode::invalid_argument, "select a network with --kind and --g, or --graph");
    }
    return generate(*spec_.kind, *spec_.generation);
  }

  std::vector<fs::path>& outputs() { return outputs_; }
  std::vector<std::string>& warnings() { return warnings_; }

private:
  const ExperimentSpec& spec_;
  const RunOptions& options_;
  fs::path out_;
  std::optional<SpectrumCache> cache_;
  std::vector<fs::path> outputs_;
  std::vector<std::string> warnings_;
};

json identity(const Network& net) {
  return {{"kind", to_string(net.kind())},
          {"generation", net.generation()},
          {"n", net.node_count()},
          {"laplacian_sha256", laplacian_hash(net)}};
}

json run_generate(const ExperimentSpec&, Session& s) {
  const auto net = s.network();
  save_network(net, s.claim("network.json"));
  return {{"network", identity(net)}, {"edges", net.edges().size()}};
}

json run_spectrum(const ExperimentSpec&, Session& s) {
  const auto net = s.network();
  s.progress("diagonalizing N=" + std::to_string(net.node_count()));
  const auto dec = cached_decompose(net, false, s.cache());
  write_spectrum_csv(dec.eigenvalues(), s.claim("spectrum.csv"));
  const auto dos = degeneracies(dec);
  auto doc = to_json(dos);
  doc["chi_lb"] = chi_lb(dos);
  doc["network"] = identity(net);
  write_json(doc, s.claim("degeneracies.json"));
  return {{"network", identity(net)},
          {"E_max", dec.e_max()},
          {"E_2", dec.size() > 1 ? json(dec.smallest_nonzero()) : json()},
          {"distinct", dos.clusters.size()},
          {"chi_lb", chi_lb(dos)}};
}

json run_counting(const ExperimentSpec& spec, Session& s) {
  const auto net = s.network();
  const auto dec = cached_decompose(net, false, s.cache());
  const auto points = spec.grid.points.value_or(1001);
  if (points < 2) throw Error(ErrorCode::invalid_argument, "counting grid needs at least 2 points");
  std::vector<double> x(points);
  for (std::size_t i = 0; i < points; ++i) {
    x[i] = static_cast<double>(i) / static_cast<double>(points - 1);
  }
  const auto curve = counting_function(dec, x);
  const auto path = s.claim("counting.csv");
  std::ofstream out(path);
  out << "x,value\n";
  for (std::size_t i = 0; i < points; ++i) {
    out << format_double(curve.x[i]) << ',' << format_double(curve.value[i]) << '\n';
  }
  if (!out) throw Error(ErrorCode::io_error, "write to " + path.string() + " failed");
  return {{"network", identity(net)}, {"points", points}, {"E_max", dec.e_max()}};
}

json run_dynamics(const ExperimentSpec& spec, Session& s) {
  const auto obs = parse_observable(spec.observable);
  const bool classical = obs == Observable::p_kj || obs == Observable::p_bar;
  const bool vectors = obs == Observable::p_kj || obs == Observable::pi_kj ||
                       obs == Observable::pi_bar || obs == Observable::pi_cosine;
  if (obs == Observable::survival_q || obs == Observable::survival_cl) {
    throw Error(ErrorCode::invalid_argument, "survival observables belong to the trap command");
  }
  const auto grid = classical ? make_grid(spec.grid, GridScheme::logarithmic, 1e-2, 1e4, 400, spec.seed)
                              : make_grid(spec.grid, GridScheme::linear, 0.0, 200.0, 4000, spec.seed);
  const auto net = s.network();
  s.progress("diagonalizing N=" + std::to_string(net.node_count()));
  const auto dec = cached_decompose(net, vectors, s.cache());

  json summary{{"network", identity(net)}, {"observable", to_string(obs)}};
  std::optional<TimeSeries> series;
  switch (obs) {
    case Observable::p_kj:
      series = ctrw_transition(dec, spec.k, spec.j, grid);
      break;
    case Observable::pi_kj:
      series = ctqw_transition(dec, spec.k, spec.j, grid);
      break;
    case Observable::pi_cosine:
      series = exact_return_cosine(dec, grid, spec.j);
      break;
    case Observable::pi_bar:
      series = average_return_quantum(dec, grid);
      break;
    case Observable::p_bar: {
      series = average_return_classical(dec, grid);
      const auto [lo, hi] = default_scaling_window(dec);
      try {
        const auto fit = fit_loglog(*series, lo, hi);
        summary["fit"] = {{"slope", fit.slope}, {"window", {lo, hi}}, {"points", fit.points},
                          {"ds_fitted", -2.0 * fit.slope}};
      } catch (const Error& e) {
        summary["fit"] = {{"error", e.what()}};
      }
      break;
    }
    case Observable::alpha_bound: {
      const auto dos = degeneracies(dec);
      series = alpha_bound(dos, grid);
      summary["chi_lb"] = chi_lb(dos);
      break;
    }
    case Observable::alpha_dominant: {
      const auto dos = degeneracies(dec);
      double e = 0.0;
      if (spec.energy) {
        e = *spec.energy;
      } else {
        const EigenCluster* best = &dos.clusters.front();
        for (const auto& c : dos.clusters) {
          if (c.multiplicity > best->multiplicity) best = &c;
        }
        e = best->energy;
      }
      series = dominant_eigenvalue_approx(dos, e, grid);
      summary["energy"] = e;
      summary["long_time_mean"] = dominant_long_time_mean(dos, e);
      break;
    }
    default:
      break;
  }
  summary["time_average"] = time_average(*series);
  summary["grid"] = grid_json(grid);
  s.write_series(*series, "series.csv", identity(net));
  return summary;
}

json run_trap(const ExperimentSpec& spec, Session& s) {
  const auto net = s.network();
  const auto lap = laplacian(net);
  const auto config = resolve_traps(net, spec.trap_scheme, spec.gamma, spec.traps);
  ComplexSolveOptions options;
  options.threshold = threshold_of(spec);
  s.progress("complex eigensolve N=" + std::to_string(net.node_count()));
  const auto cs = complex_spectrum(lap, config, options);
  write_complex_spectrum_csv(cs, s.claim("complex_spectrum.csv"));
  auto report = trapping_report(cs, config);
  report["network"] = identity(net);

  const auto grid = make_grid(spec.grid, GridScheme::logarithmic, 1e-2, 1e4, 400, spec.seed);
  s.write_series(survival_quantum(cs, grid), "survival.csv", identity(net));
  if (spec.classical) {
    const auto cl = classical_trap_spectrum(lap, config);
    s.write_series(survival_classical(cl, grid), "survival_classical.csv", identity(net));
    report["classical_lambda_min"] = cl.lambda.minCoeff();
  }
  write_json(report, s.claim("trapping.json"));
  return report;
}

json run_recurrence(const ExperimentSpec& spec, Session& s) {
  const auto net = s.network();
  s.progress("diagonalizing N=" + std::to_string(net.node_count()));
  const auto dec = cached_decompose(net, true, s.cache());

  const auto scheme = spec.grid.scheme.value_or(GridScheme::linear);
  const auto count = spec.grid.points.value_or(10000);
  const auto sampling =
      scheme == GridScheme::linear
          ? make_grid(spec.grid, GridScheme::linear, 1.0, static_cast<double>(count), count, spec.seed)
          : make_grid(spec.grid, scheme, 0.0, static_cast<double>(count), count, spec.seed);
  const auto samples = ctqw_transition(dec, spec.j, spec.j, sampling);
  const auto envelope = ctqw_transition(dec, spec.j, spec.j, TimeGrid::logarithmic(1.0, 1e3, 20000));

  DeltaOptions options;
  options.seed = spec.seed;
  const auto verdict = recurrence_verdict(samples, envelope, options);
  auto doc = to_json(verdict);
  doc["node"] = spec.j;
  doc["network"] = identity(net);
  doc["sampling_grid"] = grid_json(sampling);

  if (spec.classical) {
    const auto dims = net.dimensions();
    if (!dims) throw Error(ErrorCode::invalid_argument, "classical check needs a fractal kind");
    const auto pbar = average_return_classical(dec, TimeGrid::scaling_default());
    const auto [lo, hi] = default_scaling_window(dec);
    try {
      const auto check = classical_recurrence_check(pbar, dims->spectral, lo, hi);
      doc["classical"] = {{"slope", check.fit.slope},
                          {"window", {lo, hi}},
                          {"ds_fitted", check.ds_fitted},
                          {"ds_reference", check.ds_reference},
                          {"recurrent", check.recurrent}};
    } catch (const Error& e) {
      // small networks equilibrate before a scaling window opens
      s.warn(std::string("classical check skipped: ") + e.what());
      doc["classical"] = {{"window", {lo, hi}}, {"error", std::string(to_string(e.code()))}};
    }
  }
  s.write_series(samples, "return_samples.csv", identity(net));
  write_json(doc, s.claim("verdict.json"));
  return doc;
}

json run_report_tables(const ExperimentSpec& spec, Session& s) {
  std::vector<TableId> ids;
  if (spec.tables.empty()) {
    ids = all_tables();
  } else {
    for (const auto& t : spec.tables) {
      if (t == "all" || t == "ALL") {
        ids = all_tables();
        break;
      }
      ids.push_back(parse_table_id(t));
    }
  }
  TableContext ctx;
  ctx.cache = s.cache();
  ctx.threshold = threshold_of(spec);
  ctx.progress = [&s](const std::string& m) { s.progress(m); };
  json summary = json::object();
  for (auto id : ids) {
    const auto report = run_table(id, spec.max_generation, ctx);
    const std::string stem = "table_" + std::string(to_string(id));
    write_table_csv(report, s.claim(stem + ".csv"));
    write_json(to_json(report), s.claim(stem + ".json"));
    summary[std::string(to_string(id))] = report.matched() ? "matched" : "mismatched";
  }
  return summary;
}

}  // namespace

std::string_view to_string(Command c) noexcept {
  switch (c) {
    case Command::generate: return "generate";
    case Command::spectrum: return "spectrum";
    case Command::dynamics: return "dynamics";
    case Command::trap: return "trap";
    case Command::recurrence: return "recurrence";
    case Command::counting: return "counting";
    case Command::report_tables: return "report-tables";
  }
  return "generate";
}

Command parse_command(std::string_view text) {
  for (auto c : {Command::generate, Command::spectrum, Command::dynamics, Command::trap,
                 Command::recurrence, Command::counting, Command::report_tables}) {
    if (to_string(c) == text) return c;
  }
  throw Error(ErrorCode::invalid_argument, "unknown command '" + std::string(text) + "'");
}

json to_json(const ExperimentSpec& spec) {
  json network;
  if (spec.graph_file) {
    network = {{"graph", *spec.graph_file}};
  } else {
    network = {{"kind", spec.kind ? json(to_string(*spec.kind)) : json()},
               {"g", optional_json(spec.generation)}};
  }
  json grid{{"scheme", spec.grid.scheme ? json(to_string(*spec.grid.scheme)) : json()},
            {"t_min", optional_json(spec.grid.t_min)},
            {"t_max", optional_json(spec.grid.t_max)},
            {"points", optional_json(spec.grid.points)},
            {"rate", optional_json(spec.grid.rate)}};
  return {
      {"command", to_string(spec.command)},
      {"network", std::move(network)},
      {"nodes", {{"k", spec.k}, {"j", spec.j}}},
      {"observable", spec.observable},
      {"energy", optional_json(spec.energy)},
      {"grid", std::move(grid)},
      {"trap",
       {{"scheme", to_string(spec.trap_scheme)},
        {"gamma", spec.gamma},
        {"nodes", spec.traps},
        {"threshold", optional_json(spec.threshold)},
        {"criterion", to_string(spec.criterion)}}},
      {"classical", spec.classical},
      {"seed", spec.seed},
      {"tables", spec.tables},
      {"max_g", optional_json(spec.max_generation)},
      {"out", spec.out},
      {"cache_dir", optional_json(spec.cache_dir)},
  };
}

ExperimentSpec spec_from_json(const json& doc) {
  try {
    ExperimentSpec spec;
    spec.command = parse_command(doc.at("command").get<std::string>());
    if (doc.contains("network")) {
      const auto& net = doc.at("network");
      spec.graph_file = optional_from<std::string>(net, "graph");
      if (auto kind = optional_from<std::string>(net, "kind")) spec.kind = parse_kind(*kind);
      spec.generation = optional_from<int>(net, "g");
    }
    if (doc.contains("nodes")) {
      spec.k = doc.at("nodes").value("k", std::size_t{0});
      spec.j = doc.at("nodes").value("j", std::size_t{0});
    }
    spec.observable = doc.value("observable", spec.observable);
    spec.energy = optional_from<double>(doc, "energy");
    if (doc.contains("grid")) {
      const auto& g = doc.at("grid");
      if (auto scheme = optional_from<std::string>(g, "scheme")) {
        spec.grid.scheme = parse_grid_scheme(*scheme);
      }
      spec.grid.t_min = optional_from<double>(g, "t_min");
      spec.grid.t_max = optional_from<double>(g, "t_max");
      spec.grid.points = optional_from<std::size_t>(g, "points");
      spec.grid.rate = optional_from<double>(g, "rate");
    }
    if (doc.contains("trap")) {
      const auto& t = doc.at("trap");
      spec.trap_scheme = parse_trap_scheme(t.value("scheme", std::string("outer")));
      spec.gamma = t.value("gamma", 1.0);
      spec.traps = t.value("nodes", std::vector<std::size_t>{});
      spec.threshold = optional_from<double>(t, "threshold");
      spec.criterion = parse_zero_criterion(t.value("criterion", std::string("refined")));
    }
    spec.classical = doc.value("classical", false);
    spec.seed = doc.value("seed", std::uint64_t{1});
    spec.tables = doc.value("tables", std::vector<std::string>{});
    spec.max_generation = optional_from<int>(doc, "max_g");
    spec.out = doc.value("out", spec.out);
    spec.cache_dir = optional_from<std::string>(doc, "cache_dir");
    return spec;
  } catch (const json::exception& e) {
    throw Error(ErrorCode::invalid_argument, std::string("experiment spec: ") + e.what());
  }
}

std::string input_hash(const ExperimentSpec& spec) {
  auto doc = to_json(spec);
  doc.erase("cache_dir");
  doc.erase("out");
  return sha256_hex(doc.dump());
}

TimeGrid make_grid(const GridSpec& grid, GridScheme default_scheme, double default_t_min,
                   double default_t_max, std::size_t default_points, std::uint64_t seed) {
  const auto scheme = grid.scheme.value_or(default_scheme);
  const auto points = grid.points.value_or(default_points);
  switch (scheme) {
    case GridScheme::linear:
      return TimeGrid::linear(grid.t_min.value_or(scheme == default_scheme ? default_t_min : 0.0),
                              grid.t_max.value_or(default_t_max), points);
    case GridScheme::logarithmic: {
      const double t_min = grid.t_min.value_or(default_t_min > 0.0 ? default_t_min : 1e-2);
      return TimeGrid::logarithmic(t_min, grid.t_max.value_or(default_t_max), points);
    }
    case GridScheme::poissonian:
      return TimeGrid::poissonian(grid.rate.value_or(1.0), points, seed, grid.t_min.value_or(0.0));
    case GridScheme::explicit_points:
      break;
  }
  throw Error(ErrorCode::invalid_argument, "explicit grids are not available from the command line");
}

RunResult run(const ExperimentSpec& spec, const RunOptions& options) {
  const auto start = std::chrono::steady_clock::now();
  Session session(spec, options);
  json summary;
  switch (spec.command) {
    case Command::generate: summary = run_generate(spec, session); break;
    case Command::spectrum: summary = run_spectrum(spec, session); break;
    case Command::dynamics: summary = run_dynamics(spec, session); break;
    case Command::trap: summary = run_trap(spec, session); break;
    case Command::recurrence: summary = run_recurrence(spec, session); break;
    case Command::counting: summary = run_counting(spec, session); break;
    case Command::report_tables: summary = run_report_tables(spec, session); break;
  }
  write_json(to_json(spec), session.claim("spec.json"));

  json outputs = json::array();
  for (const auto& rel : session.outputs()) {
    const auto path = session.out() / rel;
    outputs.push_back({{"path", rel.generic_string()},
                       {"sha256", sha256_file(path)},
                       {"bytes", fs::file_size(path)}});
  }
  const double wall = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  json manifest{{"tool", "sierpinski"},
                {"version", SIERPINSKI_VERSION},
                {"command", to_string(spec.command)},
                {"input_hash", input_hash(spec)},
                {"wall_time_seconds", wall},
                {"outputs", std::move(outputs)},
                {"warnings", session.warnings()}};
  write_json(manifest, session.out() / "manifest.json");

  RunResult result;
  result.outputs = session.outputs();
  result.summary = std::move(summary);
  result.manifest = std::move(manifest);
  result.warnings = session.warnings();
  return result;
}

int exit_code_for(const std::exception& error) noexcept {
  if (const auto* e = dynamic_cast<const Error*>(&error)) return is_numerical(e->code()) ? 3 : 2;
  if (dynamic_cast<const fs::filesystem_error*>(&error)) return 2;
  return 3;
}

json error_json(const std::exception& error) {
  std::string code = "internal";
  if (const auto* e = dynamic_cast<const Error*>(&error)) {
    code = std::string(to_string(e->code()));
  } else if (dynamic_cast<const fs::filesystem_error*>(&error)) {
    code = "io-error";
  }
  return {{"error", code}, {"message", error.what()}, {"exit_code", exit_code_for(error)}};
}

}  // namespace sierpinski::tools
