// Command-line front end: closed-loop simulation, gap study, MPS export and
// the built-in oracle suites.

#include <algorithm>
#include <cstdio>
#include <memory>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "gdpmpc/gap_study.hpp"
#include "gdpmpc/mps.hpp"
#include "gdpmpc/selftest.hpp"
#include "gdpmpc/simulation.hpp"
#include "gdpmpc/thermostat.hpp"

using namespace gdpmpc;

namespace {

ThermostatVariant parse_variant(const std::string& name, double big_m) {
  if (name == "hull") return ThermostatVariant::gdp_hull();
  if (name == "bigm") return ThermostatVariant::gdp_bigm(big_m);
  if (name == "baseline") return ThermostatVariant::milp_baseline(big_m);
  throw std::invalid_argument("unknown variant '" + name + "'");
}

// Opens `path` for writing, or returns nullptr for "-" / empty (stdout).
std::unique_ptr<std::ofstream> open_output(const std::string& path) {
  if (path.empty() || path == "-") return nullptr;
  auto out = std::make_unique<std::ofstream>(path, std::ios::binary);
  if (!*out) throw std::runtime_error("cannot open '" + path + "' for writing");
  return out;
}

void finish_output(std::ofstream* out, const std::string& path) {
  if (!out) return;
  out->flush();
  if (!*out) throw std::runtime_error("write to '" + path + "' failed");
}

struct SimulateArgs {
  std::string mode = "rtc";
  std::size_t N = 10;
  std::size_t M = 1;
  std::string variant = "hull";
  double big_m = 1e4;
  std::size_t periods = 480;
  std::string out;
  std::string solves_out;
  bool apply_sequence = false;
  std::optional<std::size_t> node_limit;
};

int run_simulate(const SimulateArgs& a) {
  Scenario scenario;
  scenario.periods = a.periods;
  ClosedLoopTrace trace;
  if (a.mode == "rtc") {
    trace = simulate_rtc(scenario);
  } else {
    DmpcOptions options;
    options.N = a.N;
    options.M = a.M;
    options.variant = parse_variant(a.variant, a.big_m);
    options.apply_sequence = a.apply_sequence;
    options.solver.node_limit = a.node_limit;
    trace = simulate_dmpc(scenario, options);
  }

  auto file = open_output(a.out);
  write_trace_csv(file ? static_cast<std::ostream&>(*file) : std::cout, trace);
  finish_output(file.get(), a.out);

  if (!a.solves_out.empty()) {
    auto solves = open_output(a.solves_out);
    std::ostream& s = solves ? static_cast<std::ostream&>(*solves) : std::cout;
    s << "period,status,objective,gap_percent,nodes,planned_mode,setpoint_adjusted,wall_seconds\n";
    for (const SolveRecord& r : trace.solves) {
      s << r.period << ',' << to_string(r.status) << ',' << r.objective << ',' << r.gap_percent << ',' << r.nodes
        << ',' << r.planned_mode << ',' << (r.setpoint_adjusted ? 1 : 0) << ',' << r.wall_seconds << '\n';
    }
    finish_output(solves.get(), a.solves_out);
  }
  std::fprintf(stderr, "mode=%s periods=%zu energy_kwh=%.6f discomfort=%.6f solves=%zu\n", a.mode.c_str(),
               trace.rows.size(), trace.energy_kwh, trace.discomfort, trace.solves.size());
  return 0;
}

struct GapArgs {
  std::uint64_t seed = 7;
  std::size_t instances = 50;
  std::vector<std::size_t> horizons{30, 60};
  bool extended = false;
  std::size_t node_limit = 30;
  std::size_t optimal_node_limit = GapStudyConfig{}.optimal_node_limit;
  std::size_t threads = 0;
  std::string out;
};

int run_gapstudy(const GapArgs& a) {
  GapStudyConfig config;
  config.seed = a.seed;
  config.instance_count = a.instances;
  config.horizons = a.horizons;
  if (a.extended) {
    for (std::size_t n : {120u, 200u})
      if (std::find(config.horizons.begin(), config.horizons.end(), n) == config.horizons.end())
        config.horizons.push_back(n);
  }
  config.node_limit = a.node_limit;
  config.optimal_node_limit = a.optimal_node_limit;
  config.threads = a.threads;
  const GapStudyReport report = run_gap_study(config);

  auto file = open_output(a.out);
  (file ? static_cast<std::ostream&>(*file) : std::cout) << gap_report_json(report);
  finish_output(file.get(), a.out);
  for (const GapAggregate& g : report.aggregates) {
    std::fprintf(stderr, "N=%zu %-4s included=%zu incumbents=%zu mean_gap=%.4f%% max_gap=%.4f%%\n", g.horizon,
                 g.variant.c_str(), g.included, g.with_incumbent, g.mean_gap_percent, g.max_gap_percent);
  }
  return 0;
}

struct ExportArgs {
  std::string variant = "hull";
  double big_m = 1e4;
  std::size_t N = 10;
  std::vector<double> x0{21.0, 21.0, 21.0, 21.0};
  std::string s0 = "off";
  std::string out;
};

int run_export(const ExportArgs& a) {
  if (a.x0.size() != 4) throw std::invalid_argument("--x0 needs 4 values");
  const BuildingModel::State x0{a.x0[0], a.x0[1], a.x0[2], a.x0[3]};
  const Relay s0 = a.s0 == "on" ? Relay::kOn : Relay::kOff;
  const MilpProblem problem = build_thermostat_mpc(x0, s0, a.N, ThermostatParams{}, parse_variant(a.variant, a.big_m));
  export_mps(problem, a.out, "THERMO");
  std::fprintf(stderr, "wrote %zu columns, %zu rows to %s\n", problem.num_columns(), problem.num_rows(),
               a.out.c_str());
  return 0;
}

int run_selftest(std::size_t count, std::uint64_t seed) {
  const OracleSuiteResult oracle = run_oracle_suite(count, seed);
  for (const OracleCase& c : oracle.cases) {
    if (c.agree) continue;
    std::fprintf(stderr, "mismatch %s: brute %s %.12g, bigm %s %.12g, bigm(1e4) %s %.12g, hull %s %.12g\n",
                 c.name.c_str(), to_string(c.brute), c.brute_objective, to_string(c.bigm), c.bigm_objective,
                 to_string(c.bigm_fixed), c.bigm_fixed_objective, to_string(c.hull), c.hull_objective);
  }
  const TightnessSuiteResult tight = run_tightness_suite(count, seed);
  const bool oracle_ok = oracle.mismatches == 0;
  const bool tight_ok = tight.weak_violations == 0 && 10 * tight.strict_improvements >= 3 * tight.cases.size();
  std::printf("oracle equivalence: %zu cases (%zu random, %zu feasible), %zu mismatches: %s\n", oracle.cases.size(),
              oracle.random_instances, oracle.feasible_instances, oracle.mismatches, oracle_ok ? "ok" : "FAILED");
  std::printf("hull tightness: %zu cases, %zu weaker, %zu strictly tighter: %s\n", tight.cases.size(),
              tight.weak_violations, tight.strict_improvements, tight_ok ? "ok" : "FAILED");
  return oracle_ok && tight_ok ? 0 : 1;
}

// The config option is resolved by expand_config before parsing; it is
// registered only so that it shows up in --help.
void add_config_option(CLI::App* app) {
  app->add_option("--config", "key=value file mirroring the flags; flags on the command line win");
}

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

// Replaces "--config FILE" by the flags the file sets. Each non-empty line not
// starting with '#' is key=value, key being a long flag name without dashes.
// true/false values address switches; other values are split on spaces and
// commas, so "horizons = 30, 60" works.
std::vector<std::string> expand_config(const std::vector<std::string>& args) {
  std::vector<std::string> out;
  std::optional<std::string> path;
  for (std::size_t i = 0; i < args.size(); ++i) {
    if (args[i] == "--config") {
      if (i + 1 >= args.size()) throw std::invalid_argument("--config needs a file name");
      path = args[++i];
    } else if (args[i].rfind("--config=", 0) == 0) {
      path = args[i].substr(9);
    } else {
      out.push_back(args[i]);
    }
  }
  if (!path) return out;
  std::ifstream in(*path);
  if (!in) throw std::runtime_error("cannot read config file '" + *path + "'");
  const auto given = [&](const std::string& flag) {
    for (const std::string& a : out)
      if (a == flag || a.rfind(flag + "=", 0) == 0) return true;
    return false;
  };
  std::string line;
  std::size_t number = 0;
  while (std::getline(in, line)) {
    ++number;
    line = trim(line);
    if (line.empty() || line[0] == '#') continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw std::runtime_error(*path + ":" + std::to_string(number) + ": expected key=value");
    const std::string key = trim(line.substr(0, eq));
    std::string value = trim(line.substr(eq + 1));
    const std::string flag = "--" + key;
    if (key.empty() || key == "config") throw std::runtime_error(*path + ":" + std::to_string(number) + ": bad key");
    if (given(flag)) continue;
    if (value == "true" || value == "false") {
      out.push_back(flag + "=" + value);
      continue;
    }
    out.push_back(flag);
    std::replace(value.begin(), value.end(), ',', ' ');
    std::istringstream tokens(value);
    for (std::string t; tokens >> t;) out.push_back(t);
  }
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"GDP toolkit and thermostat MPC experiments"};
  app.require_subcommand(1);

  SimulateArgs sim;
  CLI::App* simulate = app.add_subcommand("simulate", "closed-loop RTC or D-MPC simulation, trace as CSV");
  add_config_option(simulate);
  simulate->add_option("--mode", sim.mode, "rtc or dmpc")->check(CLI::IsMember({"rtc", "dmpc"}));
  simulate->add_option("--N", sim.N, "prediction periods")->check(CLI::PositiveNumber);
  simulate->add_option("--M", sim.M, "periods between MPC evaluations")->check(CLI::PositiveNumber);
  simulate->add_option("--variant", sim.variant, "hull, bigm or baseline")
      ->check(CLI::IsMember({"hull", "bigm", "baseline"}));
  simulate->add_option("--big-m", sim.big_m, "M of the big-M variants")->check(CLI::PositiveNumber);
  simulate->add_option("--periods", sim.periods, "simulated periods")->check(CLI::PositiveNumber);
  simulate->add_option("--out", sim.out, "trace CSV (default stdout)");
  simulate->add_option("--solves-out", sim.solves_out, "per-solve CSV with wall times");
  simulate->add_flag("--apply-sequence", sim.apply_sequence, "play the planned setpoints between evaluations");
  simulate->add_option("--node-limit", sim.node_limit, "branch-and-bound node cap per MPC solve");

  GapArgs gap;
  CLI::App* gapstudy = app.add_subcommand("gapstudy", "node-limited optimality-gap study, report as JSON");
  add_config_option(gapstudy);
  gapstudy->add_option("--seed", gap.seed, "sampling seed");
  gapstudy->add_option("--instances", gap.instances, "sampled initial states")->check(CLI::PositiveNumber);
  gapstudy->add_option("--horizons", gap.horizons, "horizons N")->check(CLI::PositiveNumber);
  gapstudy->add_flag("--extended", gap.extended, "also run N = 120 and 200");
  gapstudy->add_option("--node-limit", gap.node_limit, "node cap of the scored runs")->check(CLI::PositiveNumber);
  gapstudy->add_option("--optimal-node-limit", gap.optimal_node_limit, "node cap of the z* solve")
      ->check(CLI::PositiveNumber);
  gapstudy->add_option("--threads", gap.threads, "worker threads (0: automatic, capped by SIM_THREADS)");
  gapstudy->add_option("--out", gap.out, "report JSON (default stdout)");

  ExportArgs exp;
  CLI::App* exporter = app.add_subcommand("export", "write a thermostat MPC model as fixed-format MPS");
  add_config_option(exporter);
  exporter->add_option("--variant", exp.variant, "hull, bigm or baseline")
      ->check(CLI::IsMember({"hull", "bigm", "baseline"}));
  exporter->add_option("--big-m", exp.big_m, "M of the big-M variants")->check(CLI::PositiveNumber);
  exporter->add_option("--N", exp.N, "prediction periods")->check(CLI::PositiveNumber);
  exporter->add_option("--x0", exp.x0, "initial state (4 values)")->expected(4);
  exporter->add_option("--s0", exp.s0, "initial relay state")->check(CLI::IsMember({"on", "off"}));
  exporter->add_option("--out", exp.out, "MPS file")->required();

  std::size_t self_count = 200;
  std::uint64_t self_seed = 1000;
  CLI::App* selftest = app.add_subcommand("selftest", "oracle-equivalence and hull-tightness suites");
  selftest->add_option("--instances", self_count, "random GDP instances")->check(CLI::PositiveNumber);
  selftest->add_option("--seed", self_seed, "first instance seed");

  std::vector<std::string> args(argv + 1, argv + argc);
  try {
    args = expand_config(args);
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  }
  std::reverse(args.begin(), args.end());  // CLI11 consumes the vector from the back
  try {
    app.parse(args);
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  }

  try {
    if (simulate->parsed()) return run_simulate(sim);
    if (gapstudy->parsed()) return run_gapstudy(gap);
    if (exporter->parsed()) return run_export(exp);
    if (selftest->parsed()) return run_selftest(self_count, self_seed);
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  }
  return 1;
}
