#pragma once

#include <cstddef>
#include <vector>

#include "gdpmpc/gdp_model.hpp"
#include "gdpmpc/lp_simplex.hpp"
#include "gdpmpc/milp_bnb.hpp"

namespace gdpmpc {

struct BruteForceOptions {
  std::size_t combination_cap = 4096;
  LpOptions lp;
};

struct BruteForceResult {
  SolveStatus status = SolveStatus::kInfeasible;  // kOptimal, kInfeasible or kUnbounded
  double objective = kInf;
  std::vector<double> point;  // over the model's variables
  Selection selection;
  std::size_t combinations = 0;  // selections enumerated
  std::size_t lps_solved = 0;    // CNF-consistent selections
};

// Enumerates every selection, skips those falsifying a CNF clause and solves
// the induced LP of the rest. Ties keep the first selection in lexicographic
// order. Throws std::length_error when the number of selections exceeds the
// cap and std::invalid_argument for a structurally invalid model.
BruteForceResult brute_force_solve(const GdpModel& model, const BruteForceOptions& options = {});

}  // namespace gdpmpc
