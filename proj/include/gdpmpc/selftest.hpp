#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "gdpmpc/gdp_model.hpp"
#include "gdpmpc/milp_bnb.hpp"

namespace gdpmpc {

struct RandomGdpOptions {
  std::size_t max_variables = 6;
  std::size_t max_disjunctions = 4;
  std::size_t max_disjuncts = 3;
  std::size_t max_local_rows = 3;
  std::size_t max_global_rows = 2;
  std::size_t max_clauses = 2;
};

// Small bounded GDP with integer data. Every disjunct is nonempty on the box
// on its own; globals, clauses and combinations may still be infeasible.
GdpModel random_gdp(std::uint64_t seed, const RandomGdpOptions& options = {});

// The thermostat instances of the oracle suite: x0 values away from the
// setpoint so that heating and slack both matter.
std::vector<GdpModel> thermostat_oracle_models();

struct OracleCase {
  std::string name;
  SolveStatus brute = SolveStatus::kInfeasible;
  SolveStatus bigm = SolveStatus::kInfeasible;  // M from variable bounds
  SolveStatus bigm_fixed = SolveStatus::kInfeasible;  // M = 1e4
  SolveStatus hull = SolveStatus::kInfeasible;
  double brute_objective = kInf;
  double bigm_objective = kInf;
  double bigm_fixed_objective = kInf;
  double hull_objective = kInf;
  bool agree = false;
};

struct OracleSuiteResult {
  std::vector<OracleCase> cases;
  std::size_t random_instances = 0;
  std::size_t feasible_instances = 0;
  std::size_t mismatches = 0;
};

// Compares branch and bound on both reformulations with enumeration, within
// `tolerance` absolute. Uses random_gdp(seed + k) for k < random_count and the
// thermostat models.
OracleSuiteResult run_oracle_suite(std::size_t random_count, std::uint64_t seed, double tolerance = 1e-6);

struct TightnessCase {
  std::string name;
  double hull_bound = 0.0;  // +inf when the relaxation is infeasible
  double bigm_bound = 0.0;  // M = 1e4
};

struct TightnessSuiteResult {
  std::vector<TightnessCase> cases;
  std::size_t both_infeasible = 0;
  std::size_t weak_violations = 0;  // hull < bigm - 1e-9
  std::size_t strict_improvements = 0;  // hull > bigm + 1e-6
};

TightnessSuiteResult run_tightness_suite(std::size_t random_count, std::uint64_t seed);

}  // namespace gdpmpc
