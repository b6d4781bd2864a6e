#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "gdpmpc/affine.hpp"

namespace gdpmpc {

struct Variable {
  std::string name;
  double lower = 0.0;
  double upper = 0.0;
};

struct Disjunct {
  std::string indicator_name;
  std::vector<LinConstraint> local_constraints;
  double fixed_cost = 0.0;
};

struct Disjunction {
  std::string name;
  std::vector<Disjunct> disjuncts;
};

// Boolean indicator of disjunct `disjunct` in disjunction `disjunction`.
struct IndicatorRef {
  std::size_t disjunction = 0;
  std::size_t disjunct = 0;

  friend bool operator==(const IndicatorRef&, const IndicatorRef&) = default;
};

struct Literal {
  IndicatorRef indicator;
  bool positive = true;
};

inline Literal operator!(Literal lit) {
  lit.positive = !lit.positive;
  return lit;
}

struct CnfClause {
  std::vector<Literal> literals;
};

// One chosen disjunct index per disjunction.
using Selection = std::vector<std::size_t>;

// min objective(y) + sum of fixed costs of the selected disjuncts
// s.t. global constraints, exactly one disjunct per disjunction with its local
// constraints enforced, and every CNF clause over the indicators.
struct GdpModel {
  std::vector<Variable> variables;
  AffineExpr objective;
  std::vector<LinConstraint> global_constraints;
  std::vector<Disjunction> disjunctions;
  std::vector<CnfClause> propositions;

  VarRef add_variable(std::string name, double lower, double upper);
  void add_constraint(LinConstraint constraint) { global_constraints.push_back(std::move(constraint)); }
  std::size_t add_disjunction(Disjunction disjunction);
  void add_clause(CnfClause clause) { propositions.push_back(std::move(clause)); }

  Literal literal(std::size_t disjunction, std::size_t disjunct) const {
    return {{disjunction, disjunct}, true};
  }

  std::size_t num_variables() const { return variables.size(); }
  std::vector<double> lower_bounds() const;
  std::vector<double> upper_bounds() const;
};

enum class DiagnosticKind {
  kUndeclaredVariable,
  kNonFiniteCoefficient,
  kUnboundedVariable,
  kInvertedBounds,
  kEmptyDisjunction,
  kDuplicateIndicatorName,
  kNonFiniteCost,
  kEmptyClause,
  kDuplicateLiteral,
  kUnknownIndicator,
};

struct Diagnostic {
  DiagnosticKind kind;
  std::string message;
};

// One diagnostic per violated model invariant; empty iff the model is valid.
std::vector<Diagnostic> validate(const GdpModel& model);

// Truth value of a clause when exactly the selected disjuncts are true.
bool clause_satisfied(const CnfClause& clause, std::span<const std::size_t> selection);
bool propositions_satisfied(const GdpModel& model, std::span<const std::size_t> selection);

struct AssignmentEvaluation {
  bool feasible = false;
  std::optional<double> objective;  // set when feasible
};

inline constexpr double kFeasibilityTolerance = 1e-7;

// Throws std::invalid_argument when the selection or point has the wrong size
// or a selection entry is out of range.
AssignmentEvaluation evaluate_assignment(const GdpModel& model, std::span<const std::size_t> selection,
                                         std::span<const double> point,
                                         double tolerance = kFeasibilityTolerance);

}  // namespace gdpmpc
