#include "gdpmpc/reformulate.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <stdexcept>
#include <string>

namespace gdpmpc {
namespace {

// expr <= 0 pieces of a constraint; EQ splits into two.
std::vector<AffineExpr> le_pieces(const LinConstraint& c) {
  switch (c.relation) {
    case Relation::LE:
      return {c.expr};
    case Relation::GE:
      return {-c.expr};
    case Relation::EQ:
      return {c.expr, -c.expr};
  }
  return {};
}

// expr <= 0 (or == 0) as a row over the original columns.
Row plain_row(const AffineExpr& expr, RowSense sense) {
  Row row;
  row.sense = sense;
  row.rhs = -expr.constant();
  for (const AffineExpr::Term& t : expr.terms()) row.entries.push_back({t.var.index, t.coeff});
  return row;
}

Row constraint_row(const LinConstraint& c) {
  switch (c.relation) {
    case Relation::LE:
      return plain_row(c.expr, RowSense::LE);
    case Relation::GE:
      return plain_row(-c.expr, RowSense::LE);
    case Relation::EQ:
      return plain_row(c.expr, RowSense::EQ);
  }
  return {};
}

void require_structurally_valid(const GdpModel& model, const char* what) {
  std::string message;
  for (const Diagnostic& d : validate(model)) {
    if (d.kind == DiagnosticKind::kUnboundedVariable) continue;
    message += "\n  " + d.message;
  }
  if (!message.empty()) throw std::invalid_argument(std::string(what) + ": invalid model:" + message);
}

// Original columns, objective, global rows, indicators, exactly-one rows, CNF rows.
MilpProblem common_skeleton(const GdpModel& model, IndicatorColumns& indicators) {
  MilpProblem p;
  for (std::size_t j = 0; j < model.variables.size(); ++j) {
    const Variable& v = model.variables[j];
    p.add_column(v.lower, v.upper, 0.0, false, {ColumnRole::kOriginal, v.name, j, kNone, kNone});
  }
  for (const AffineExpr::Term& t : model.objective.terms()) p.objective[t.var.index] += t.coeff;
  p.objective_constant = model.objective.constant();
  for (const LinConstraint& c : model.global_constraints) p.add_row(constraint_row(c));

  indicators.assign(model.disjunctions.size(), {});
  for (std::size_t k = 0; k < model.disjunctions.size(); ++k) {
    const Disjunction& d = model.disjunctions[k];
    Row exactly_one;
    exactly_one.sense = RowSense::EQ;
    exactly_one.rhs = 1.0;
    exactly_one.name = "one_" + std::to_string(k);
    for (std::size_t i = 0; i < d.disjuncts.size(); ++i) {
      const Disjunct& dj = d.disjuncts[i];
      std::string name = dj.indicator_name.empty()
                             ? "s_" + std::to_string(k) + "_" + std::to_string(i)
                             : dj.indicator_name;
      const std::size_t col = p.add_binary({ColumnRole::kIndicator, std::move(name), kNone, k, i});
      p.objective[col] = dj.fixed_cost;
      indicators[k].push_back(col);
      exactly_one.entries.push_back({col, 1.0});
    }
    p.add_row(std::move(exactly_one));
  }
  for (Row& row : cnf_to_linear(model.propositions, indicators)) p.add_row(std::move(row));
  return p;
}

}  // namespace

std::vector<Row> cnf_to_linear(std::span<const CnfClause> clauses, const IndicatorColumns& indicator_columns) {
  std::vector<Row> rows;
  rows.reserve(clauses.size());
  for (const CnfClause& clause : clauses) {
    Row row;
    row.sense = RowSense::LE;
    row.rhs = -1.0;
    for (const Literal& lit : clause.literals) {
      const IndicatorRef& ref = lit.indicator;
      if (ref.disjunction >= indicator_columns.size() ||
          ref.disjunct >= indicator_columns[ref.disjunction].size() ||
          indicator_columns[ref.disjunction][ref.disjunct] == kNone) {
        throw std::invalid_argument("cnf_to_linear: unmapped indicator (" + std::to_string(ref.disjunction) +
                                    "," + std::to_string(ref.disjunct) + ")");
      }
      const std::size_t col = indicator_columns[ref.disjunction][ref.disjunct];
      if (lit.positive) {
        row.entries.push_back({col, -1.0});
      } else {
        row.entries.push_back({col, 1.0});
        row.rhs += 1.0;
      }
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

MilpProblem to_bigm(const GdpModel& model, BigMStrategy strategy) {
  require_structurally_valid(model, "to_bigm");
  if (strategy.mode == BigMStrategy::Mode::kFixed && !(strategy.big_m > 0.0 && std::isfinite(strategy.big_m))) {
    throw std::invalid_argument("to_bigm: fixed M must be positive and finite");
  }
  IndicatorColumns indicators;
  MilpProblem p = common_skeleton(model, indicators);
  const std::vector<double> lo = model.lower_bounds();
  const std::vector<double> hi = model.upper_bounds();

  for (std::size_t k = 0; k < model.disjunctions.size(); ++k) {
    const Disjunction& d = model.disjunctions[k];
    for (std::size_t i = 0; i < d.disjuncts.size(); ++i) {
      const std::size_t s = indicators[k][i];
      for (const LinConstraint& c : d.disjuncts[i].local_constraints) {
        for (const AffineExpr& piece : le_pieces(c)) {
          double m = strategy.big_m;
          if (strategy.mode == BigMStrategy::Mode::kFromBounds) {
            const double sup = piece.supremum(lo, hi);
            if (!std::isfinite(sup)) {
              throw std::invalid_argument("to_bigm: M from bounds needs finite bounds on every variable of disjunct '" +
                                          d.disjuncts[i].indicator_name + "'");
            }
            m = std::max(sup, 0.0);
          }
          // piece(y) <= M (1 - s)
          Row row = plain_row(piece, RowSense::LE);
          row.rhs += m;
          if (m != 0.0) row.entries.push_back({s, m});
          p.add_row(std::move(row));
        }
      }
    }
  }
  return p;
}

MilpProblem to_hull(const GdpModel& model) {
  require_structurally_valid(model, "to_hull");
  IndicatorColumns indicators;
  MilpProblem p = common_skeleton(model, indicators);

  for (std::size_t k = 0; k < model.disjunctions.size(); ++k) {
    const Disjunction& d = model.disjunctions[k];
    std::map<std::size_t, std::size_t> slot;  // variable -> position in scope
    for (const Disjunct& dj : d.disjuncts)
      for (const LinConstraint& c : dj.local_constraints)
        for (const AffineExpr::Term& t : c.expr.terms()) slot.emplace(t.var.index, 0);
    std::vector<std::size_t> scope;
    for (auto& [var, pos] : slot) {
      pos = scope.size();
      scope.push_back(var);
      const Variable& v = model.variables[var];
      if (!std::isfinite(v.lower) || !std::isfinite(v.upper)) {
        throw std::invalid_argument("to_hull: variable '" + v.name + "' appears in disjunction " +
                                    std::to_string(k) + " but is unbounded");
      }
    }

    // copies[i][pos]: disaggregated copy of scope[pos] for disjunct i.
    std::vector<std::vector<std::size_t>> copies(d.disjuncts.size());
    for (std::size_t i = 0; i < d.disjuncts.size(); ++i) {
      const std::size_t s = indicators[k][i];
      const std::string& tag = p.labels[s].name;
      for (std::size_t var : scope) {
        const Variable& v = model.variables[var];
        const std::size_t col =
            p.add_column(std::min(0.0, v.lower), std::max(0.0, v.upper), 0.0, false,
                         {ColumnRole::kDisaggregated, v.name + "@" + tag, var, k, i});
        copies[i].push_back(col);
        if (v.lower != 0.0) p.add_row({{{s, v.lower}, {col, -1.0}}, RowSense::LE, 0.0, ""});
        if (v.upper != 0.0) p.add_row({{{col, 1.0}, {s, -v.upper}}, RowSense::LE, 0.0, ""});
      }
      for (const LinConstraint& c : d.disjuncts[i].local_constraints) {
        // a.y + b <= 0 becomes a.y_i + b s_i <= 0.
        const double sign = c.relation == Relation::GE ? -1.0 : 1.0;
        Row row;
        row.sense = c.relation == Relation::EQ ? RowSense::EQ : RowSense::LE;
        row.rhs = 0.0;
        for (const AffineExpr::Term& t : c.expr.terms())
          row.entries.push_back({copies[i][slot.at(t.var.index)], sign * t.coeff});
        if (c.expr.constant() != 0.0) row.entries.push_back({s, sign * c.expr.constant()});
        p.add_row(std::move(row));
      }
    }
    for (std::size_t pos = 0; pos < scope.size(); ++pos) {
      Row link;
      link.sense = RowSense::EQ;
      link.rhs = 0.0;
      link.entries.push_back({scope[pos], 1.0});
      for (std::size_t i = 0; i < d.disjuncts.size(); ++i) link.entries.push_back({copies[i][pos], -1.0});
      p.add_row(std::move(link));
    }
  }
  return p;
}

IndicatorColumns indicator_columns(const MilpProblem& problem) {
  IndicatorColumns out;
  for (std::size_t j = 0; j < problem.num_columns(); ++j) {
    const ColumnLabel& label = problem.labels[j];
    if (label.role != ColumnRole::kIndicator) continue;
    if (out.size() <= label.disjunction) out.resize(label.disjunction + 1);
    auto& row = out[label.disjunction];
    if (row.size() <= label.disjunct) row.resize(label.disjunct + 1, kNone);
    row[label.disjunct] = j;
  }
  return out;
}

MilpProblem induced_lp(const GdpModel& model, std::span<const std::size_t> selection) {
  MilpProblem p;
  for (std::size_t j = 0; j < model.variables.size(); ++j) {
    const Variable& v = model.variables[j];
    p.add_column(v.lower, v.upper, 0.0, false, {ColumnRole::kOriginal, v.name, j, kNone, kNone});
  }
  for (const AffineExpr::Term& t : model.objective.terms()) p.objective[t.var.index] += t.coeff;
  p.objective_constant = model.objective.constant();
  for (const LinConstraint& c : model.global_constraints) p.add_row(constraint_row(c));
  for (std::size_t k = 0; k < selection.size(); ++k) {
    const Disjunct& dj = model.disjunctions[k].disjuncts[selection[k]];
    p.objective_constant += dj.fixed_cost;
    for (const LinConstraint& c : dj.local_constraints) p.add_row(constraint_row(c));
  }
  return p;
}

std::vector<double> lift_point(const MilpProblem& problem, std::span<const std::size_t> selection,
                               std::span<const double> gdp_point) {
  std::vector<double> out(problem.num_columns(), 0.0);
  for (std::size_t j = 0; j < problem.num_columns(); ++j) {
    const ColumnLabel& label = problem.labels[j];
    switch (label.role) {
      case ColumnRole::kOriginal:
        out[j] = gdp_point[label.source];
        break;
      case ColumnRole::kIndicator:
        out[j] = selection[label.disjunction] == label.disjunct ? 1.0 : 0.0;
        break;
      case ColumnRole::kDisaggregated:
        out[j] = selection[label.disjunction] == label.disjunct ? gdp_point[label.source] : 0.0;
        break;
      case ColumnRole::kAuxiliary:
        break;
    }
  }
  return out;
}

ProjectedPoint project_point(const MilpProblem& problem, std::span<const double> milp_point) {
  ProjectedPoint out;
  std::vector<double> best;
  for (std::size_t j = 0; j < problem.num_columns(); ++j) {
    const ColumnLabel& label = problem.labels[j];
    if (label.role == ColumnRole::kOriginal) {
      if (out.point.size() <= label.source) out.point.resize(label.source + 1, 0.0);
      out.point[label.source] = milp_point[j];
    } else if (label.role == ColumnRole::kIndicator) {
      if (out.selection.size() <= label.disjunction) {
        out.selection.resize(label.disjunction + 1, 0);
        best.resize(label.disjunction + 1, -kInf);
      }
      if (milp_point[j] > best[label.disjunction]) {
        best[label.disjunction] = milp_point[j];
        out.selection[label.disjunction] = label.disjunct;
      }
    }
  }
  return out;
}

}  // namespace gdpmpc
