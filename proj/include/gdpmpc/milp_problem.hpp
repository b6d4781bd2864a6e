#pragma once

#include <cstddef>
#include <limits>
#include <span>
#include <string>
#include <vector>

namespace gdpmpc {

inline constexpr double kInf = std::numeric_limits<double>::infinity();
inline constexpr std::size_t kNone = static_cast<std::size_t>(-1);

enum class RowSense { LE, EQ };

struct RowEntry {
  std::size_t col = 0;
  double value = 0.0;
};

// sum(entries) <= rhs, or == rhs.
struct Row {
  std::vector<RowEntry> entries;
  RowSense sense = RowSense::LE;
  double rhs = 0.0;
  std::string name;

  double activity(std::span<const double> point) const;
};

// Where a MILP column came from, so solutions can be reported in GDP terms.
enum class ColumnRole {
  kOriginal,       // continuous GDP variable y
  kIndicator,      // binary s_i of a disjunct
  kDisaggregated,  // hull copy y_i of an original variable
  kAuxiliary,
};

struct ColumnLabel {
  ColumnRole role = ColumnRole::kAuxiliary;
  std::string name;
  std::size_t source = kNone;  // original variable index (kOriginal, kDisaggregated)
  std::size_t disjunction = kNone;
  std::size_t disjunct = kNone;
};

// Flat mixed-integer linear program, minimization:
//   min objective . x + objective_constant
//   s.t. rows, lower <= x <= upper, x_j integer where integer[j].
// Rows are stored sparsely.
struct MilpProblem {
  std::vector<double> objective;
  double objective_constant = 0.0;
  std::vector<Row> rows;
  std::vector<double> lower;
  std::vector<double> upper;
  std::vector<char> integer;
  std::vector<ColumnLabel> labels;

  std::size_t num_columns() const { return objective.size(); }
  std::size_t num_rows() const { return rows.size(); }
  std::size_t num_integer() const;

  std::size_t add_column(double lo, double hi, double cost, bool is_integer, ColumnLabel label);
  std::size_t add_binary(ColumnLabel label) { return add_column(0.0, 1.0, 0.0, true, std::move(label)); }
  std::size_t add_row(Row row);

  double objective_value(std::span<const double> point) const;

  // Violations of the structural invariants (finite coefficients, binary
  // bounds inside [0,1], column indices in range, ordered bounds). Empty when
  // well formed.
  std::vector<std::string> structural_problems() const;
};

// Maximum signed violation of rows and bounds at `point`; <= 0 means feasible.
double check_point(const MilpProblem& problem, std::span<const double> point);

// Largest distance of an integer-flagged entry of `point` from the nearest integer.
double integrality_violation(const MilpProblem& problem, std::span<const double> point);

}  // namespace gdpmpc
