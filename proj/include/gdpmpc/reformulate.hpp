#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "gdpmpc/gdp_model.hpp"
#include "gdpmpc/milp_problem.hpp"

namespace gdpmpc {

struct BigMStrategy {
  enum class Mode { kFixed, kFromBounds };
  Mode mode = Mode::kFromBounds;
  double big_m = 0.0;

  static BigMStrategy fixed(double m) { return {Mode::kFixed, m}; }
  static BigMStrategy from_bounds() { return {Mode::kFromBounds, 0.0}; }
};

// indicator_columns[k][i] is the binary column of disjunct i in disjunction k.
using IndicatorColumns = std::vector<std::vector<std::size_t>>;

// One row per clause: sum_{positive} s + sum_{negative} (1 - s) >= 1, stored as
// sum_{negative} s - sum_{positive} s <= |negative| - 1. Throws
// std::invalid_argument for an unmapped indicator.
std::vector<Row> cnf_to_linear(std::span<const CnfClause> clauses, const IndicatorColumns& indicator_columns);

// Column layout of both reformulations: the model's variables first, in
// declaration order, then one indicator per disjunct (disjunction-major), then
// any disaggregated copies. Both throw std::invalid_argument when the model
// has structural diagnostics; unbounded variables are rejected only where a
// finite bound is actually needed.
MilpProblem to_bigm(const GdpModel& model, BigMStrategy strategy);
MilpProblem to_hull(const GdpModel& model);

// Indicator columns recovered from the labels of a reformulated problem.
IndicatorColumns indicator_columns(const MilpProblem& problem);

// LP over the model's variables with the selected disjuncts' constraints
// enforced and their fixed costs folded into the objective constant.
MilpProblem induced_lp(const GdpModel& model, std::span<const std::size_t> selection);

// Embeds a GDP point and selection into the column space of `problem` (an output
// of to_bigm or to_hull): indicators from the selection, disaggregated copies
// equal to the original value in the selected disjunct and zero elsewhere.
std::vector<double> lift_point(const MilpProblem& problem, std::span<const std::size_t> selection,
                               std::span<const double> gdp_point);

// Inverse of lift_point: original variable values and, per disjunction, the
// disjunct with the largest indicator value.
struct ProjectedPoint {
  Selection selection;
  std::vector<double> point;
};
ProjectedPoint project_point(const MilpProblem& problem, std::span<const double> milp_point);

}  // namespace gdpmpc
