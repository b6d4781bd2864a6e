#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "gdpmpc/lp_simplex.hpp"
#include "gdpmpc/milp_problem.hpp"

namespace gdpmpc {

enum class SolveStatus {
  kOptimal,
  kFeasibleLimit,  // limit reached with an incumbent
  kNoSolutionLimit,  // limit reached before any incumbent was found
  kInfeasible,
  kUnbounded,
};

const char* to_string(SolveStatus status);

struct SolveOptions {
  double rel_gap_tol = 1e-6;
  double int_tol = 1e-6;
  std::optional<std::size_t> node_limit;
  std::optional<double> time_limit;  // seconds
  bool record_bound_history = false;
  LpOptions lp;
};

struct SolveResult {
  SolveStatus status = SolveStatus::kInfeasible;
  std::vector<double> point;  // incumbent, empty if none
  double objective = kInf;    // incumbent objective z~
  double best_bound = -kInf;
  std::size_t nodes_explored = 0;
  std::size_t lp_iterations = 0;
  // 100 (z~ - best_bound) / max(|z~|, 1e-12); +inf without an incumbent.
  double gap_percent = kInf;
  // Global lower bound after each explored node (when requested).
  std::vector<double> bound_history;

  bool has_incumbent() const { return !point.empty(); }
};

double gap_percent(double incumbent, double bound);

// LP-based branch and bound: best-bound node selection with creation-order
// tie-break, most-fractional branching with lowest-index tie-break, node LPs
// warm-started from the parent basis. No presolve, cuts or heuristics.
SolveResult solve(const MilpProblem& problem, const SolveOptions& options = {});

// Root LP relaxation optimum. Throws std::runtime_error when the relaxation is
// infeasible, unbounded or hits the iteration limit.
double relaxation_bound(const MilpProblem& problem, const LpOptions& options = {});

}  // namespace gdpmpc
