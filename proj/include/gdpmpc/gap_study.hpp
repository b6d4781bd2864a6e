#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "gdpmpc/milp_bnb.hpp"
#include "gdpmpc/thermostat.hpp"

namespace gdpmpc {

struct GapStudyConfig {
  std::size_t instance_count = 50;
  std::vector<std::size_t> horizons{30, 60};
  std::size_t node_limit = 30;
  std::uint64_t seed = 7;
  double x0_min = 19.0;
  double x0_max = 23.0;
  // Node budget of the reference solve that proves z*. Instances that do not
  // close within it are flagged and left out of the aggregates.
  std::size_t optimal_node_limit = 2000;
  double big_m = 1e4;
  ThermostatParams params;
  BuildingModel building = BuildingModel::reference();
  // Worker threads; 0 means hardware concurrency capped by SIM_THREADS.
  std::size_t threads = 0;

  // Throws std::invalid_argument on an invalid configuration.
  void check() const;
};

// Initial states, uniform per component on [x0_min, x0_max). The stream is
// std::mt19937_64 with 53-bit mantissa extraction, so it is identical on
// every platform.
std::vector<BuildingModel::State> sample_initial_states(const GapStudyConfig& config);

struct VariantRun {
  SolveStatus status = SolveStatus::kNoSolutionLimit;
  std::optional<double> incumbent;  // z~
  double best_bound = -kInf;
  std::size_t nodes = 0;
  std::optional<double> gap_percent;  // 100 (z~ - z*) / max(|z*|, 1e-12)
  // gap_percent capped at 100; 100 without an incumbent.
  double scored_gap_percent = 100.0;
};

struct GapInstance {
  std::size_t index = 0;
  std::size_t horizon = 0;
  BuildingModel::State x0{};
  bool included = false;
  std::string diagnostic;  // why the instance was excluded
  std::optional<double> z_star;
  std::size_t reference_nodes = 0;
  VariantRun hull;
  VariantRun bigm;
};

struct GapAggregate {
  std::string variant;  // "hull" or "bigm"
  std::size_t horizon = 0;
  std::size_t included = 0;
  std::size_t with_incumbent = 0;
  double mean_gap_percent = 0.0;  // over scored gaps of included instances
  double max_gap_percent = 0.0;
  // Over included instances where both variants found an incumbent.
  std::size_t both_incumbent = 0;
  std::optional<double> mean_gap_both_percent;
};

struct GapStudyReport {
  GapStudyConfig config;
  std::vector<GapInstance> instances;  // horizon-major, then instance index
  std::vector<GapAggregate> aggregates;  // per horizon: hull, then bigm

  const GapAggregate& aggregate(const std::string& variant, std::size_t horizon) const;
};

// For every sampled x0 and horizon: z* from the hull model solved to
// optimality within optimal_node_limit, then hull and big-M runs capped at
// node_limit, scored against z*. Deterministic given the configuration;
// instances run concurrently but results are placed by index.
GapStudyReport run_gap_study(const GapStudyConfig& config);

// JSON text with the configuration echo, per-instance rows and aggregates.
// Contains no timing data, so equal reports give equal bytes.
std::string gap_report_json(const GapStudyReport& report);

}  // namespace gdpmpc
