#include "gdpmpc/milp_problem.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace gdpmpc {

double Row::activity(std::span<const double> point) const {
  double sum = 0.0;
  for (const RowEntry& e : entries) sum += e.value * point[e.col];
  return sum;
}

std::size_t MilpProblem::num_integer() const {
  return static_cast<std::size_t>(std::count(integer.begin(), integer.end(), char{1}));
}

std::size_t MilpProblem::add_column(double lo, double hi, double cost, bool is_integer,
                                    ColumnLabel label) {
  objective.push_back(cost);
  lower.push_back(lo);
  upper.push_back(hi);
  integer.push_back(is_integer ? 1 : 0);
  labels.push_back(std::move(label));
  return objective.size() - 1;
}

std::size_t MilpProblem::add_row(Row row) {
  rows.push_back(std::move(row));
  return rows.size() - 1;
}

double MilpProblem::objective_value(std::span<const double> point) const {
  double value = objective_constant;
  for (std::size_t j = 0; j < objective.size(); ++j) value += objective[j] * point[j];
  return value;
}

std::vector<std::string> MilpProblem::structural_problems() const {
  std::vector<std::string> out;
  const std::size_t n = num_columns();
  if (lower.size() != n || upper.size() != n || integer.size() != n || labels.size() != n) {
    out.push_back("column arrays have inconsistent lengths");
    return out;
  }
  if (!std::isfinite(objective_constant)) out.push_back("objective constant is not finite");
  for (std::size_t j = 0; j < n; ++j) {
    if (!std::isfinite(objective[j])) out.push_back("objective coefficient of column " + std::to_string(j) + " is not finite");
    if (std::isnan(lower[j]) || std::isnan(upper[j]) || lower[j] > upper[j])
      out.push_back("column " + std::to_string(j) + " has invalid bounds");
    if (integer[j] && (lower[j] < 0.0 || upper[j] > 1.0))
      out.push_back("integer column " + std::to_string(j) + " has bounds outside [0,1]");
  }
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const Row& row = rows[i];
    if (!std::isfinite(row.rhs)) out.push_back("row " + std::to_string(i) + " has a non-finite rhs");
    for (const RowEntry& e : row.entries) {
      if (e.col >= n) out.push_back("row " + std::to_string(i) + " references column out of range");
      if (!std::isfinite(e.value)) out.push_back("row " + std::to_string(i) + " has a non-finite coefficient");
    }
  }
  return out;
}

double check_point(const MilpProblem& problem, std::span<const double> point) {
  if (point.size() != problem.num_columns()) {
    throw std::invalid_argument("check_point: point has " + std::to_string(point.size()) +
                                " entries, problem has " + std::to_string(problem.num_columns()) +
                                " columns");
  }
  double worst = -kInf;
  for (std::size_t j = 0; j < point.size(); ++j) {
    worst = std::max(worst, problem.lower[j] - point[j]);
    worst = std::max(worst, point[j] - problem.upper[j]);
  }
  for (const Row& row : problem.rows) {
    const double residual = row.activity(point) - row.rhs;
    worst = std::max(worst, row.sense == RowSense::EQ ? std::abs(residual) : residual);
  }
  return worst;
}

double integrality_violation(const MilpProblem& problem, std::span<const double> point) {
  double worst = 0.0;
  for (std::size_t j = 0; j < problem.num_columns(); ++j) {
    if (!problem.integer[j]) continue;
    worst = std::max(worst, std::abs(point[j] - std::round(point[j])));
  }
  return worst;
}

}  // namespace gdpmpc
