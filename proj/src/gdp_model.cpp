#include "gdpmpc/gdp_model.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <stdexcept>

namespace gdpmpc {

VarRef GdpModel::add_variable(std::string name, double lower, double upper) {
  variables.push_back({std::move(name), lower, upper});
  return VarRef{variables.size() - 1};
}

std::size_t GdpModel::add_disjunction(Disjunction disjunction) {
  disjunctions.push_back(std::move(disjunction));
  return disjunctions.size() - 1;
}

std::vector<double> GdpModel::lower_bounds() const {
  std::vector<double> out;
  out.reserve(variables.size());
  for (const Variable& v : variables) out.push_back(v.lower);
  return out;
}

std::vector<double> GdpModel::upper_bounds() const {
  std::vector<double> out;
  out.reserve(variables.size());
  for (const Variable& v : variables) out.push_back(v.upper);
  return out;
}

namespace {

void check_expr(const AffineExpr& expr, std::size_t num_vars, const std::string& where,
                std::vector<Diagnostic>& out) {
  for (const AffineExpr::Term& t : expr.terms()) {
    if (t.var.index >= num_vars) {
      out.push_back({DiagnosticKind::kUndeclaredVariable,
                     where + ": undeclared variable index " + std::to_string(t.var.index) + " of " +
                         std::to_string(num_vars)});
    }
    if (!std::isfinite(t.coeff)) {
      out.push_back({DiagnosticKind::kNonFiniteCoefficient, where + ": non-finite coefficient"});
    }
  }
  if (!std::isfinite(expr.constant())) {
    out.push_back({DiagnosticKind::kNonFiniteCoefficient, where + ": non-finite constant"});
  }
}

}  // namespace

std::vector<Diagnostic> validate(const GdpModel& model) {
  std::vector<Diagnostic> out;
  const std::size_t n = model.variables.size();
  for (std::size_t j = 0; j < n; ++j) {
    const Variable& v = model.variables[j];
    const std::string where = "variable " + std::to_string(j) + " (" + v.name + ")";
    if (std::isnan(v.lower) || std::isnan(v.upper) || v.lower > v.upper) {
      out.push_back({DiagnosticKind::kInvertedBounds, where + ": lower bound exceeds upper bound"});
    }
    if (std::isinf(v.lower) || std::isinf(v.upper)) {
      out.push_back({DiagnosticKind::kUnboundedVariable,
                     where + ": unbounded variable forbids hull reformulation"});
    }
  }
  check_expr(model.objective, n, "objective", out);
  for (std::size_t i = 0; i < model.global_constraints.size(); ++i) {
    check_expr(model.global_constraints[i].expr, n, "global constraint " + std::to_string(i), out);
  }
  for (std::size_t k = 0; k < model.disjunctions.size(); ++k) {
    const Disjunction& d = model.disjunctions[k];
    const std::string where = "disjunction " + std::to_string(k);
    if (d.disjuncts.empty()) out.push_back({DiagnosticKind::kEmptyDisjunction, where + ": no disjuncts"});
    std::set<std::string> names;
    for (std::size_t i = 0; i < d.disjuncts.size(); ++i) {
      const Disjunct& dj = d.disjuncts[i];
      if (!names.insert(dj.indicator_name).second) {
        out.push_back({DiagnosticKind::kDuplicateIndicatorName,
                       where + ": duplicate indicator name '" + dj.indicator_name + "'"});
      }
      if (!std::isfinite(dj.fixed_cost)) {
        out.push_back({DiagnosticKind::kNonFiniteCost, where + " disjunct " + std::to_string(i) + ": non-finite fixed cost"});
      }
      for (std::size_t c = 0; c < dj.local_constraints.size(); ++c) {
        check_expr(dj.local_constraints[c].expr, n,
                   where + " disjunct " + std::to_string(i) + " constraint " + std::to_string(c), out);
      }
    }
  }
  for (std::size_t c = 0; c < model.propositions.size(); ++c) {
    const CnfClause& clause = model.propositions[c];
    const std::string where = "clause " + std::to_string(c);
    if (clause.literals.empty()) out.push_back({DiagnosticKind::kEmptyClause, where + ": empty"});
    for (std::size_t a = 0; a < clause.literals.size(); ++a) {
      const IndicatorRef& ref = clause.literals[a].indicator;
      if (ref.disjunction >= model.disjunctions.size() ||
          ref.disjunct >= model.disjunctions[ref.disjunction].disjuncts.size()) {
        out.push_back({DiagnosticKind::kUnknownIndicator,
                       where + ": indicator (" + std::to_string(ref.disjunction) + "," +
                           std::to_string(ref.disjunct) + ") belongs to no disjunction"});
      }
      for (std::size_t b = 0; b < a; ++b) {
        if (clause.literals[b].indicator == ref) {
          out.push_back({DiagnosticKind::kDuplicateLiteral, where + ": indicator repeated"});
          break;
        }
      }
    }
  }
  return out;
}

bool clause_satisfied(const CnfClause& clause, std::span<const std::size_t> selection) {
  for (const Literal& lit : clause.literals) {
    const bool value = selection[lit.indicator.disjunction] == lit.indicator.disjunct;
    if (value == lit.positive) return true;
  }
  return false;
}

bool propositions_satisfied(const GdpModel& model, std::span<const std::size_t> selection) {
  return std::all_of(model.propositions.begin(), model.propositions.end(),
                     [&](const CnfClause& c) { return clause_satisfied(c, selection); });
}

AssignmentEvaluation evaluate_assignment(const GdpModel& model, std::span<const std::size_t> selection,
                                         std::span<const double> point, double tolerance) {
  if (point.size() != model.variables.size()) {
    throw std::invalid_argument("evaluate_assignment: point has " + std::to_string(point.size()) +
                                " values for " + std::to_string(model.variables.size()) + " variables");
  }
  if (selection.size() != model.disjunctions.size()) {
    throw std::invalid_argument("evaluate_assignment: selection covers " +
                                std::to_string(selection.size()) + " of " +
                                std::to_string(model.disjunctions.size()) + " disjunctions");
  }
  for (std::size_t k = 0; k < selection.size(); ++k) {
    if (selection[k] >= model.disjunctions[k].disjuncts.size()) {
      throw std::invalid_argument("evaluate_assignment: disjunct index out of range in disjunction " +
                                  std::to_string(k));
    }
  }

  AssignmentEvaluation result;
  for (std::size_t j = 0; j < point.size(); ++j) {
    if (point[j] < model.variables[j].lower - tolerance || point[j] > model.variables[j].upper + tolerance)
      return result;
  }
  for (const LinConstraint& c : model.global_constraints) {
    if (c.violation(point) > tolerance) return result;
  }
  double cost = model.objective.evaluate(point);
  for (std::size_t k = 0; k < selection.size(); ++k) {
    const Disjunct& dj = model.disjunctions[k].disjuncts[selection[k]];
    for (const LinConstraint& c : dj.local_constraints) {
      if (c.violation(point) > tolerance) return result;
    }
    cost += dj.fixed_cost;
  }
  if (!propositions_satisfied(model, selection)) return result;
  result.feasible = true;
  result.objective = cost;
  return result;
}

}  // namespace gdpmpc
