#include "gdpmpc/milp_bnb.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <memory>
#include <queue>
#include <stdexcept>

namespace gdpmpc {

const char* to_string(SolveStatus status) {
  switch (status) {
    case SolveStatus::kOptimal:
      return "optimal";
    case SolveStatus::kFeasibleLimit:
      return "feasible_limit";
    case SolveStatus::kNoSolutionLimit:
      return "no_solution_limit";
    case SolveStatus::kInfeasible:
      return "infeasible";
    case SolveStatus::kUnbounded:
      return "unbounded";
  }
  return "unknown";
}

double gap_percent(double incumbent, double bound) {
  if (!std::isfinite(incumbent)) return kInf;
  return 100.0 * (incumbent - bound) / std::max(std::abs(incumbent), 1e-12);
}

namespace {

struct BoundChange {
  std::size_t col;
  double lower;
  double upper;
};

struct Node {
  double bound;
  std::size_t id;
  std::vector<BoundChange> path;
  std::shared_ptr<const Basis> basis;
};

struct NodeOrder {
  bool operator()(const Node& a, const Node& b) const {
    if (a.bound != b.bound) return a.bound > b.bound;
    return a.id > b.id;
  }
};

}  // namespace

SolveResult solve(const MilpProblem& problem, const SolveOptions& options) {
  if (!(options.rel_gap_tol > 0.0) || !(options.int_tol > 0.0)) {
    throw std::invalid_argument("solve: tolerances must be positive");
  }
  const auto started = std::chrono::steady_clock::now();
  const auto elapsed = [&] {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count();
  };

  SolveResult result;
  SimplexSolver lp(problem, options.lp);
  std::vector<std::size_t> touched;

  std::priority_queue<Node, std::vector<Node>, NodeOrder> open;
  std::size_t next_id = 0;
  open.push({-kInf, next_id++, {}, nullptr});

  // Bound of nodes whose LP could not be solved; they stay part of the bound.
  double lost_bound = kInf;
  bool limit_hit = false;

  const auto prunable = [&](double bound) {
    if (!result.has_incumbent()) return false;
    return bound >= result.objective - options.rel_gap_tol * std::max(std::abs(result.objective), 1e-12);
  };
  const auto global_bound = [&] {
    double b = std::min(result.objective, lost_bound);
    if (!open.empty()) b = std::min(b, open.top().bound);
    return b;
  };

  while (!open.empty()) {
    if (prunable(open.top().bound)) break;  // best-first: every remaining node is prunable
    if ((options.node_limit && result.nodes_explored >= *options.node_limit) ||
        (options.time_limit && elapsed() >= *options.time_limit)) {
      limit_hit = true;
      break;
    }
    Node node = open.top();
    open.pop();

    for (std::size_t col : touched) lp.set_column_bounds(col, problem.lower[col], problem.upper[col]);
    touched.clear();
    for (const BoundChange& change : node.path) {
      const double lo = std::max(lp.column_lower(change.col), change.lower);
      const double hi = std::min(lp.column_upper(change.col), change.upper);
      lp.set_column_bounds(change.col, lo, hi);
      touched.push_back(change.col);
    }
    if (node.basis) lp.set_basis(*node.basis);

    const LpResult relaxed = lp.solve();
    ++result.nodes_explored;

    if (relaxed.status == LpStatus::kUnbounded) {
      result.status = SolveStatus::kUnbounded;
      result.lp_iterations = lp.total_iterations();
      result.best_bound = -kInf;
      return result;
    }
    if (relaxed.status == LpStatus::kIterationLimit) {
      lost_bound = std::min(lost_bound, node.bound);
    } else if (relaxed.status == LpStatus::kOptimal && !prunable(relaxed.objective)) {
      std::size_t branch_col = kNone;
      double best_score = options.int_tol;
      for (std::size_t j = 0; j < problem.num_columns(); ++j) {
        if (!problem.integer[j]) continue;
        const double v = relaxed.point[j];
        const double frac = v - std::floor(v);
        const double score = std::min(frac, 1.0 - frac);
        if (score > best_score) {
          best_score = score;
          branch_col = j;
        }
      }
      if (branch_col == kNone) {
        if (relaxed.objective < result.objective) {
          result.objective = relaxed.objective;
          result.point = relaxed.point;
        }
      } else {
        auto basis = std::make_shared<const Basis>(lp.basis());
        const double v = relaxed.point[branch_col];
        Node down{relaxed.objective, next_id++, node.path, basis};
        down.path.push_back({branch_col, -kInf, std::floor(v)});
        Node up{relaxed.objective, next_id++, std::move(node.path), basis};
        up.path.push_back({branch_col, std::ceil(v), kInf});
        open.push(std::move(down));
        open.push(std::move(up));
      }
    }
    if (options.record_bound_history) result.bound_history.push_back(global_bound());
  }

  result.lp_iterations = lp.total_iterations();
  result.best_bound = global_bound();
  const bool proven = !limit_hit && !(lost_bound < kInf && !prunable(lost_bound));
  if (result.has_incumbent()) {
    result.status = proven ? SolveStatus::kOptimal : SolveStatus::kFeasibleLimit;
    result.gap_percent = gap_percent(result.objective, result.best_bound);
  } else {
    result.status = proven ? SolveStatus::kInfeasible : SolveStatus::kNoSolutionLimit;
    if (proven) result.best_bound = kInf;
  }
  return result;
}

double relaxation_bound(const MilpProblem& problem, const LpOptions& options) {
  const LpResult r = solve_lp(problem, options);
  if (r.status != LpStatus::kOptimal) {
    throw std::runtime_error(std::string("relaxation_bound: LP relaxation is ") + to_string(r.status));
  }
  return r.objective;
}

}  // namespace gdpmpc
