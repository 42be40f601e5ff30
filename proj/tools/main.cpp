#include <cstdlib>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "sierpinski/error.hpp"
#include "sierpinski/report_io.hpp"
#include "sierpinski/tools/experiment.hpp"

namespace st = sierpinski::tools;

namespace {

// Raw flag values; only the ones given on the command line override the spec.
struct Flags {
  std::string spec_file;
  std::string kind;
  int g{};
  std::string graph;
  std::size_t k{};
  std::size_t j{};
  std::string observable;
  double energy{};
  std::string grid;
  double tmin{};
  double tmax{};
  std::size_t npoints{};
  double rate{};
  std::string scheme;
  double gamma{};
  std::vector<std::size_t> traps;
  double threshold{};
  std::string criterion;
  bool classical{false};
  std::uint64_t seed{};
  std::vector<std::string> tables;
  int max_g{};
  std::string out;
  std::string cache_dir;
  bool quiet{false};
};

struct Bound {
  CLI::App* app{};
  std::vector<std::pair<std::string, CLI::Option*>> options;

  bool given(const std::string& name) const {
    for (const auto& [n, opt] : options) {
      if (n == name) return opt->count() > 0;
    }
    return false;
  }
};

Bound add_common(CLI::App* app, Flags& f) {
  Bound b{app, {}};
  auto add = [&](const std::string& name, auto& target, const std::string& help) {
    b.options.emplace_back(name, app->add_option("--" + name, target, help));
  };
  add("spec", f.spec_file, "experiment spec JSON; flags given alongside override it");
  add("kind", f.kind, "fractal family: sg, dsg, sc, dsc");
  add("g", f.g, "generation");
  add("graph", f.graph, "network JSON file instead of --kind/--g");
  add("out", f.out, "output directory (default ./out)");
  add("cache-dir", f.cache_dir, "spectrum cache directory (or SIERPINSKI_CACHE_DIR)");
  add("seed", f.seed, "seed for Poisson sampling and the bootstrap");
  add("grid", f.grid, "time grid: lin, log or poisson");
  add("tmin", f.tmin, "first time point");
  add("tmax", f.tmax, "last time point");
  add("npoints", f.npoints, "number of time points");
  add("rate", f.rate, "Poisson sampling rate");
  add("threshold", f.threshold, "vanishing-rate cutoff in units of gamma");
  add("criterion", f.criterion, "vanishing-rate criterion: refined or raw");
  b.options.emplace_back("classical", app->add_flag("--classical", f.classical,
                                                    "add the classical counterpart"));
  app->add_flag("-q,--quiet", f.quiet, "suppress progress messages");
  return b;
}

void apply(const Bound& b, const Flags& f, st::ExperimentSpec& spec) {
  using namespace sierpinski;
  if (b.given("kind")) {
    spec.kind = parse_kind(f.kind);
    spec.graph_file.reset();
  }
  if (b.given("g")) spec.generation = f.g;
  if (b.given("graph")) spec.graph_file = f.graph;
  if (b.given("k")) spec.k = f.k;
  if (b.given("j")) spec.j = f.j;
  if (b.given("observable")) spec.observable = f.observable;
  if (b.given("energy")) spec.energy = f.energy;
  if (b.given("grid")) spec.grid.scheme = parse_grid_scheme(f.grid);
  if (b.given("tmin")) spec.grid.t_min = f.tmin;
  if (b.given("tmax")) spec.grid.t_max = f.tmax;
  if (b.given("npoints")) spec.grid.points = f.npoints;
  if (b.given("rate")) spec.grid.rate = f.rate;
  if (b.given("scheme")) spec.trap_scheme = parse_trap_scheme(f.scheme);
  if (b.given("gamma")) spec.gamma = f.gamma;
  if (b.given("traps")) {
    spec.traps = f.traps;
    if (!b.given("scheme")) spec.trap_scheme = TrapScheme::explicit_nodes;
  }
  if (b.given("threshold")) spec.threshold = f.threshold;
  if (b.given("criterion")) spec.criterion = parse_zero_criterion(f.criterion);
  if (b.given("classical")) spec.classical = f.classical;
  if (b.given("seed")) spec.seed = f.seed;
  if (b.given("table")) spec.tables = f.tables;
  if (b.given("max-g")) spec.max_generation = f.max_g;
  if (b.given("out")) spec.out = f.out;
  if (b.given("cache-dir")) spec.cache_dir = f.cache_dir;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Random walks and quantum walks on Sierpinski fractal networks"};
  app.require_subcommand(1);
  app.set_version_flag("--version", SIERPINSKI_VERSION_STRING);

  Flags f;
  std::vector<std::pair<st::Command, Bound>> commands;
  auto sub = [&](st::Command c, const std::string& help) {
    auto* s = app.add_subcommand(std::string(st::to_string(c)), help);
    commands.emplace_back(c, add_common(s, f));
    return &commands.back().second;
  };
  auto opt = [](Bound* b, const std::string& name, auto& target, const std::string& help) {
    b->options.emplace_back(name, b->app->add_option("--" + name, target, help));
  };

  sub(st::Command::generate, "build a network and write network.json");
  sub(st::Command::spectrum, "Laplacian spectrum and degeneracies");
  sub(st::Command::counting, "normalized counting function of the spectrum");
  {
    auto* b = sub(st::Command::dynamics, "CTRW / CTQW time series");
    opt(b, "k", f.k, "target node (0-based)");
    opt(b, "j", f.j, "start node (0-based)");
    opt(b, "observable", f.observable,
        "p_kj, pi_kj, p_bar, pi_bar, pi_cosine, alpha_bound, alpha_dominant");
    opt(b, "energy", f.energy, "dominant eigenvalue for alpha_dominant");
  }
  {
    auto* b = sub(st::Command::trap, "non-Hermitian trapping spectrum and survival");
    opt(b, "scheme", f.scheme, "trap placement: outer, inner or explicit");
    opt(b, "gamma", f.gamma, "trapping rate");
    opt(b, "traps", f.traps, "explicit trap nodes (0-based), comma separated");
    b->options.back().second->delimiter(',');
  }
  {
    auto* b = sub(st::Command::recurrence, "quantum recurrence verdict for one node");
    opt(b, "j", f.j, "node (0-based)");
  }
  {
    auto* b = sub(st::Command::report_tables, "recompute the reference tables");
    opt(b, "table", f.tables, "table ids (I..VIII or 1..8), or all");
    b->options.back().second->delimiter(',');
    opt(b, "max-g", f.max_g, "largest generation to recompute");
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  for (const auto& [command, bound] : commands) {
    if (!bound.app->parsed()) continue;
    try {
      st::ExperimentSpec spec;
      if (bound.given("spec")) {
        spec = st::spec_from_json(sierpinski::read_json(f.spec_file));
        if (spec.command != command) {
          throw sierpinski::Error(sierpinski::ErrorCode::invalid_argument,
                                  "spec file describes '" +
                                      std::string(st::to_string(spec.command)) + "'");
        }
      }
      spec.command = command;
      apply(bound, f, spec);

      st::RunOptions options;
      if (!f.quiet) options.progress = [](const std::string& m) { std::cerr << m << '\n'; };
      const auto result = st::run(spec, options);
      std::cout << result.summary.dump(2) << '\n';
      return 0;
    } catch (const std::exception& e) {
      std::cerr << st::error_json(e).dump() << '\n';
      return st::exit_code_for(e);
    }
  }
  return 2;
}
