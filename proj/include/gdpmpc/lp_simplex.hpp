#pragma once

#include <cstddef>
#include <cstdint>
#include <memory>
#include <vector>

#include "gdpmpc/milp_problem.hpp"

namespace gdpmpc {

enum class LpStatus { kOptimal, kInfeasible, kUnbounded, kIterationLimit };

const char* to_string(LpStatus status);

struct LpOptions {
  std::size_t iteration_limit = 50000;
  double primal_tolerance = 1e-7;
  double dual_tolerance = 1e-7;
  double pivot_tolerance = 1e-9;
  // Consecutive degenerate pivots before switching from Dantzig to Bland's rule.
  std::size_t bland_after = 1000;
  std::size_t refactor_interval = 100;
};

enum class VarStatus : std::uint8_t { kBasic, kAtLower, kAtUpper, kAtZero };

// Simplex basis over structural columns followed by one logical per row.
struct Basis {
  std::vector<VarStatus> status;

  friend bool operator==(const Basis&, const Basis&) = default;
};

struct LpResult {
  LpStatus status = LpStatus::kIterationLimit;
  std::vector<double> point;  // structural values (optimal only)
  double objective = 0.0;     // including the objective constant (optimal only)
  std::size_t iterations = 0;
  // Row multipliers y and structural reduced costs d = c - A'y at the final basis.
  std::vector<double> row_duals;
  std::vector<double> reduced_costs;
};

// Bounded-variable revised primal simplex. Every row gets a logical variable
// r_i = a_i x with bounds (-inf, rhs] or [rhs, rhs]; phase 1 minimizes the sum
// of basic-variable infeasibilities, phase 2 the objective. Integrality flags
// are ignored.
//
// The solver keeps its basis and factorization between solve() calls, so
// branch and bound can tighten column bounds and re-solve from the previous
// optimal basis.
class SimplexSolver {
 public:
  explicit SimplexSolver(const MilpProblem& problem, LpOptions options = {});
  ~SimplexSolver();
  SimplexSolver(SimplexSolver&&) noexcept;
  SimplexSolver& operator=(SimplexSolver&&) noexcept;

  void set_column_bounds(std::size_t col, double lower, double upper);
  double column_lower(std::size_t col) const;
  double column_upper(std::size_t col) const;

  LpResult solve();

  Basis basis() const;
  // Installs a warm-start basis. A basis with the wrong shape or basic count
  // is ignored and the solver falls back to the all-logical basis.
  void set_basis(const Basis& basis);

  std::size_t total_iterations() const;

 private:
  class Impl;
  std::unique_ptr<Impl> impl_;
};

LpResult solve_lp(const MilpProblem& problem, const LpOptions& options = {},
                  const Basis* warm_start = nullptr);

}  // namespace gdpmpc
