#include "gdpmpc/brute_force.hpp"

#include <stdexcept>
#include <string>

#include "gdpmpc/reformulate.hpp"

namespace gdpmpc {

BruteForceResult brute_force_solve(const GdpModel& model, const BruteForceOptions& options) {
  for (const Diagnostic& d : validate(model)) {
    if (d.kind != DiagnosticKind::kUnboundedVariable)
      throw std::invalid_argument("brute_force_solve: invalid model: " + d.message);
  }
  std::size_t total = 1;
  for (const Disjunction& d : model.disjunctions) {
    total *= d.disjuncts.size();
    if (total > options.combination_cap) {
      throw std::length_error("brute_force_solve: more than " + std::to_string(options.combination_cap) +
                              " selections");
    }
  }

  BruteForceResult result;
  Selection selection(model.disjunctions.size(), 0);
  for (std::size_t count = 0; count < total; ++count) {
    ++result.combinations;
    if (propositions_satisfied(model, selection)) {
      ++result.lps_solved;
      const LpResult lp = solve_lp(induced_lp(model, selection), options.lp);
      if (lp.status == LpStatus::kUnbounded) {
        result.status = SolveStatus::kUnbounded;
        result.objective = -kInf;
        result.point.clear();
        result.selection = selection;
        return result;
      }
      if (lp.status == LpStatus::kIterationLimit) {
        throw std::runtime_error("brute_force_solve: induced LP hit the iteration limit");
      }
      if (lp.status == LpStatus::kOptimal && lp.objective < result.objective) {
        result.status = SolveStatus::kOptimal;
        result.objective = lp.objective;
        result.point = lp.point;
        result.selection = selection;
      }
    }
    // Odometer increment, last disjunction fastest.
    for (std::size_t k = selection.size(); k-- > 0;) {
      if (++selection[k] < model.disjunctions[k].disjuncts.size()) break;
      selection[k] = 0;
    }
  }
  return result;
}

}  // namespace gdpmpc
