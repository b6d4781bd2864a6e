#include "gdpmpc/lp_simplex.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "basis_factor.hpp"

namespace gdpmpc {

const char* to_string(LpStatus status) {
  switch (status) {
    case LpStatus::kOptimal:
      return "optimal";
    case LpStatus::kInfeasible:
      return "infeasible";
    case LpStatus::kUnbounded:
      return "unbounded";
    case LpStatus::kIterationLimit:
      return "iteration_limit";
  }
  return "unknown";
}

class SimplexSolver::Impl {
 public:
  Impl(const MilpProblem& problem, LpOptions options);

  void set_bounds(std::size_t j, double lo, double hi);
  LpResult solve();
  Basis basis() const { return Basis{status_}; }
  void set_basis(const Basis& basis);

  double lower(std::size_t j) const { return lo_[j]; }
  double upper(std::size_t j) const { return up_[j]; }
  std::size_t total_iterations() const { return total_iterations_; }

 private:
  using SparseColumn = detail::SparseColumn;

  void slack_basis();
  void snap_nonbasic(std::size_t j);
  VarStatus nonbasic_status_for(std::size_t j, double value) const;
  double nonbasic_value(std::size_t j) const;
  void refactor();
  void compute_basic_values();
  bool any_infeasible() const;
  void compute_duals(bool phase1);
  double reduced_cost(std::size_t j, bool phase1) const;
  void load_column(std::size_t j, std::vector<double>& dense) const;
  LpResult make_result(LpStatus status, std::size_t iterations);

  enum class DualOutcome { kPrimalFeasible, kInfeasible, kIterationLimit, kGiveUp };
  bool make_dual_feasible();
  DualOutcome dual_phase(std::size_t& iterations);

  LpOptions opt_;
  std::size_t n_ = 0;
  std::size_t m_ = 0;
  std::vector<std::size_t> col_start_;
  std::vector<std::size_t> col_row_;
  std::vector<double> col_val_;
  std::vector<double> cost_;
  double cost_constant_ = 0.0;
  std::vector<double> lo_;
  std::vector<double> up_;

  std::vector<VarStatus> status_;
  std::vector<std::size_t> head_;  // basis position -> variable
  std::vector<double> x_;
  detail::BasisFactor factor_;
  bool factor_valid_ = false;

  std::vector<double> pi_;
  std::vector<double> alpha_;
  std::vector<double> d_;    // reduced costs, dual phase
  std::vector<double> rho_;  // row of the basis inverse, dual phase
  std::size_t total_iterations_ = 0;
};

SimplexSolver::Impl::Impl(const MilpProblem& problem, LpOptions options) : opt_(options) {
  n_ = problem.num_columns();
  m_ = problem.num_rows();
  const std::size_t total = n_ + m_;

  std::vector<std::size_t> counts(n_, 0);
  for (const Row& row : problem.rows) {
    for (const RowEntry& e : row.entries) {
      if (e.col >= n_) throw std::invalid_argument("row references a column out of range");
      ++counts[e.col];
    }
  }
  col_start_.assign(n_ + 1, 0);
  for (std::size_t j = 0; j < n_; ++j) col_start_[j + 1] = col_start_[j] + counts[j];
  col_row_.assign(col_start_[n_], 0);
  col_val_.assign(col_start_[n_], 0.0);
  std::vector<std::size_t> fill(col_start_.begin(), col_start_.end() - 1);
  for (std::size_t i = 0; i < m_; ++i) {
    for (const RowEntry& e : problem.rows[i].entries) {
      col_row_[fill[e.col]] = i;
      col_val_[fill[e.col]] = e.value;
      ++fill[e.col];
    }
  }

  cost_.assign(total, 0.0);
  std::copy(problem.objective.begin(), problem.objective.end(), cost_.begin());
  cost_constant_ = problem.objective_constant;
  lo_.assign(total, -kInf);
  up_.assign(total, kInf);
  std::copy(problem.lower.begin(), problem.lower.end(), lo_.begin());
  std::copy(problem.upper.begin(), problem.upper.end(), up_.begin());
  for (std::size_t i = 0; i < m_; ++i) {
    const Row& row = problem.rows[i];
    up_[n_ + i] = row.rhs;
    lo_[n_ + i] = row.sense == RowSense::EQ ? row.rhs : -kInf;
  }
  x_.assign(total, 0.0);
  pi_.assign(m_, 0.0);
  alpha_.assign(m_, 0.0);
  d_.assign(total, 0.0);
  rho_.assign(m_, 0.0);
  slack_basis();
}

VarStatus SimplexSolver::Impl::nonbasic_status_for(std::size_t j, double value) const {
  const bool has_lo = std::isfinite(lo_[j]);
  const bool has_up = std::isfinite(up_[j]);
  if (has_lo && has_up) {
    return std::abs(value - up_[j]) < std::abs(value - lo_[j]) ? VarStatus::kAtUpper
                                                               : VarStatus::kAtLower;
  }
  if (has_lo) return VarStatus::kAtLower;
  if (has_up) return VarStatus::kAtUpper;
  return VarStatus::kAtZero;
}

double SimplexSolver::Impl::nonbasic_value(std::size_t j) const {
  switch (status_[j]) {
    case VarStatus::kAtLower:
      return lo_[j];
    case VarStatus::kAtUpper:
      return up_[j];
    default:
      return 0.0;
  }
}

void SimplexSolver::Impl::snap_nonbasic(std::size_t j) {
  VarStatus s = status_[j];
  if ((s == VarStatus::kAtLower && !std::isfinite(lo_[j])) ||
      (s == VarStatus::kAtUpper && !std::isfinite(up_[j])) ||
      (s == VarStatus::kAtZero && (std::isfinite(lo_[j]) || std::isfinite(up_[j])))) {
    s = nonbasic_status_for(j, 0.0);
  }
  if (s == VarStatus::kAtUpper && lo_[j] == up_[j]) s = VarStatus::kAtLower;
  status_[j] = s;
  x_[j] = nonbasic_value(j);
}

void SimplexSolver::Impl::slack_basis() {
  const std::size_t total = n_ + m_;
  status_.assign(total, VarStatus::kAtLower);
  head_.resize(m_);
  for (std::size_t j = 0; j < n_; ++j) {
    status_[j] = nonbasic_status_for(j, 0.0);
    snap_nonbasic(j);
  }
  for (std::size_t i = 0; i < m_; ++i) {
    status_[n_ + i] = VarStatus::kBasic;
    head_[i] = n_ + i;
  }
  factor_valid_ = false;
}

void SimplexSolver::Impl::set_basis(const Basis& basis) {
  const std::size_t total = n_ + m_;
  if (basis.status.size() != total ||
      static_cast<std::size_t>(std::count(basis.status.begin(), basis.status.end(),
                                          VarStatus::kBasic)) != m_) {
    slack_basis();
    return;
  }
  // Same basic set as the current factor: keep the factorization.
  bool same = factor_valid_;
  for (std::size_t j = 0; same && j < total; ++j)
    same = (basis.status[j] == VarStatus::kBasic) == (status_[j] == VarStatus::kBasic);
  status_ = basis.status;
  if (same) {
    for (std::size_t j = 0; j < total; ++j)
      if (status_[j] != VarStatus::kBasic) snap_nonbasic(j);
    return;
  }
  std::size_t pos = 0;
  for (std::size_t j = 0; j < total; ++j) {
    if (status_[j] == VarStatus::kBasic) {
      head_[pos++] = j;
    } else {
      snap_nonbasic(j);
    }
  }
  factor_valid_ = false;
}

void SimplexSolver::Impl::set_bounds(std::size_t j, double lo, double hi) {
  if (j >= n_) throw std::out_of_range("set_column_bounds: column out of range");
  lo_[j] = lo;
  up_[j] = hi;
  if (status_[j] != VarStatus::kBasic) {
    // Prefer the side the variable sat on before the change.
    if (status_[j] == VarStatus::kAtUpper && std::isfinite(hi)) {
      x_[j] = hi;
    } else {
      status_[j] = nonbasic_status_for(j, x_[j]);
      snap_nonbasic(j);
    }
  }
}

void SimplexSolver::Impl::refactor() {
  for (;;) {
    std::vector<SparseColumn> columns(m_);
    for (std::size_t p = 0; p < m_; ++p) {
      const std::size_t j = head_[p];
      if (j < n_) {
        for (std::size_t k = col_start_[j]; k < col_start_[j + 1]; ++k)
          columns[p].push_back({col_row_[k], col_val_[k]});
      } else {
        columns[p].push_back({j - n_, -1.0});
      }
    }
    const auto singular = factor_.factorize(m_, columns);
    if (singular.positions.empty()) break;
    // Swap deficient basic columns for the logicals of the unpivoted rows.
    for (std::size_t k = 0; k < singular.positions.size(); ++k) {
      const std::size_t p = singular.positions[k];
      const std::size_t leaving = head_[p];
      const std::size_t entering = n_ + singular.rows[k];
      status_[leaving] = nonbasic_status_for(leaving, x_[leaving]);
      snap_nonbasic(leaving);
      status_[entering] = VarStatus::kBasic;
      head_[p] = entering;
    }
  }
  factor_valid_ = true;
}

void SimplexSolver::Impl::compute_basic_values() {
  std::vector<double> rhs(m_, 0.0);
  const std::size_t total = n_ + m_;
  for (std::size_t j = 0; j < total; ++j) {
    if (status_[j] == VarStatus::kBasic) continue;
    x_[j] = nonbasic_value(j);
    const double v = x_[j];
    if (v == 0.0) continue;
    if (j < n_) {
      for (std::size_t k = col_start_[j]; k < col_start_[j + 1]; ++k) rhs[col_row_[k]] -= col_val_[k] * v;
    } else {
      rhs[j - n_] += v;
    }
  }
  factor_.ftran(rhs);
  for (std::size_t p = 0; p < m_; ++p) x_[head_[p]] = rhs[p];
}

bool SimplexSolver::Impl::any_infeasible() const {
  const double tol = opt_.primal_tolerance;
  for (std::size_t j : head_)
    if (x_[j] < lo_[j] - tol || x_[j] > up_[j] + tol) return true;
  return false;
}

void SimplexSolver::Impl::compute_duals(bool phase1) {
  const double tol = opt_.primal_tolerance;
  for (std::size_t p = 0; p < m_; ++p) {
    const std::size_t j = head_[p];
    if (phase1) {
      pi_[p] = x_[j] < lo_[j] - tol ? -1.0 : (x_[j] > up_[j] + tol ? 1.0 : 0.0);
    } else {
      pi_[p] = cost_[j];
    }
  }
  factor_.btran(pi_);
}

double SimplexSolver::Impl::reduced_cost(std::size_t j, bool phase1) const {
  if (j >= n_) return (phase1 ? 0.0 : cost_[j]) + pi_[j - n_];
  double d = phase1 ? 0.0 : cost_[j];
  for (std::size_t k = col_start_[j]; k < col_start_[j + 1]; ++k) d -= pi_[col_row_[k]] * col_val_[k];
  return d;
}

void SimplexSolver::Impl::load_column(std::size_t j, std::vector<double>& dense) const {
  std::fill(dense.begin(), dense.end(), 0.0);
  if (j < n_) {
    for (std::size_t k = col_start_[j]; k < col_start_[j + 1]; ++k) dense[col_row_[k]] = col_val_[k];
  } else {
    dense[j - n_] = -1.0;
  }
}

LpResult SimplexSolver::Impl::make_result(LpStatus status, std::size_t iterations) {
  LpResult result;
  result.status = status;
  result.iterations = iterations;
  if (status != LpStatus::kOptimal) return result;
  result.point.assign(x_.begin(), x_.begin() + static_cast<std::ptrdiff_t>(n_));
  double obj = cost_constant_;
  for (std::size_t j = 0; j < n_; ++j) obj += cost_[j] * x_[j];
  result.objective = obj;
  compute_duals(false);
  result.row_duals = pi_;
  result.reduced_costs.resize(n_);
  for (std::size_t j = 0; j < n_; ++j)
    result.reduced_costs[j] = status_[j] == VarStatus::kBasic ? 0.0 : reduced_cost(j, false);
  return result;
}

LpResult SimplexSolver::Impl::solve() {
  const double ptol = opt_.primal_tolerance;
  const double dtol = opt_.dual_tolerance;
  const std::size_t total = n_ + m_;

  for (std::size_t j = 0; j < n_; ++j) {
    if (lo_[j] > up_[j]) return make_result(LpStatus::kInfeasible, 0);
  }
  if (!factor_valid_) refactor();
  compute_basic_values();

  std::size_t iterations = 0;
  // A dual feasible start (typical after a bound change in branch and bound)
  // is re-optimized by the dual simplex; the primal loop below then only
  // confirms optimality or repairs what the dual phase could not finish.
  if (any_infeasible() && make_dual_feasible()) {
    switch (dual_phase(iterations)) {
      case DualOutcome::kInfeasible:
        total_iterations_ += iterations;
        return make_result(LpStatus::kInfeasible, iterations);
      case DualOutcome::kIterationLimit:
        total_iterations_ += iterations;
        return make_result(LpStatus::kIterationLimit, iterations);
      default:
        break;
    }
  }

  std::size_t degenerate_run = 0;
  bool bland = false;
  bool fresh = true;

  for (;;) {
    if (iterations >= opt_.iteration_limit) {
      total_iterations_ += iterations;
      return make_result(LpStatus::kIterationLimit, iterations);
    }
    if (factor_.num_updates() >= opt_.refactor_interval) {
      refactor();
      compute_basic_values();
      fresh = true;
    }

    const bool phase1 = any_infeasible();
    compute_duals(phase1);

    // Pricing: Dantzig's largest reduced cost, or the lowest eligible index under Bland.
    std::size_t entering = total;
    double entering_dir = 0.0;
    double best = 0.0;
    for (std::size_t j = 0; j < total; ++j) {
      const VarStatus s = status_[j];
      if (s == VarStatus::kBasic || lo_[j] == up_[j]) continue;
      const double d = reduced_cost(j, phase1);
      double dir = 0.0;
      if (d < -dtol && s != VarStatus::kAtUpper) dir = 1.0;
      if (d > dtol && s != VarStatus::kAtLower) dir = -1.0;
      if (dir == 0.0) continue;
      if (bland) {
        entering = j;
        entering_dir = dir;
        break;
      }
      if (std::abs(d) > best) {
        best = std::abs(d);
        entering = j;
        entering_dir = dir;
      }
    }

    if (entering == total) {
      if (!fresh) {
        refactor();
        compute_basic_values();
        fresh = true;
        continue;
      }
      total_iterations_ += iterations;
      return make_result(phase1 ? LpStatus::kInfeasible : LpStatus::kOptimal, iterations);
    }

    load_column(entering, alpha_);
    factor_.ftran(alpha_);

    // Harris two-pass ratio test with a bound flip for the entering variable.
    const double flip_range = up_[entering] - lo_[entering];
    auto target_of = [&](std::size_t j, double rate, double& target) {
      const double v = x_[j];
      if (rate < 0.0) {
        if (v > up_[j] + ptol) {
          target = up_[j];
          return true;
        }
        if (v >= lo_[j] - ptol && std::isfinite(lo_[j])) {
          target = lo_[j];
          return true;
        }
        return false;
      }
      if (v < lo_[j] - ptol) {
        target = lo_[j];
        return true;
      }
      if (v <= up_[j] + ptol && std::isfinite(up_[j])) {
        target = up_[j];
        return true;
      }
      return false;
    };

    double theta_max = kInf;
    if (!bland) {
      for (std::size_t p = 0; p < m_; ++p) {
        const double a = alpha_[p];
        if (std::abs(a) <= opt_.pivot_tolerance) continue;
        const double rate = -entering_dir * a;
        double target = 0.0;
        if (!target_of(head_[p], rate, target)) continue;
        const double ratio = (std::abs(x_[head_[p]] - target) + ptol) / std::abs(rate);
        theta_max = std::min(theta_max, ratio);
      }
    }

    std::size_t leave_pos = m_;
    double leave_ratio = kInf;
    double leave_target = 0.0;
    double leave_abs = 0.0;
    for (std::size_t p = 0; p < m_; ++p) {
      const double a = alpha_[p];
      if (std::abs(a) <= opt_.pivot_tolerance) continue;
      const double rate = -entering_dir * a;
      double target = 0.0;
      const std::size_t j = head_[p];
      if (!target_of(j, rate, target)) continue;
      const double ratio = std::max(0.0, (x_[j] - target) / -rate);
      if (bland) {
        if (leave_pos == m_ || ratio < leave_ratio || (ratio == leave_ratio && j < head_[leave_pos])) {
          leave_pos = p;
          leave_ratio = ratio;
          leave_target = target;
        }
      } else if (ratio <= theta_max && std::abs(a) > leave_abs) {
        leave_pos = p;
        leave_ratio = ratio;
        leave_target = target;
        leave_abs = std::abs(a);
      }
    }

    const bool flip = std::isfinite(flip_range) &&
                      (bland ? flip_range <= leave_ratio : flip_range <= theta_max);
    if (leave_pos == m_ && !flip) {
      if (!phase1) {
        total_iterations_ += iterations;
        return make_result(LpStatus::kUnbounded, iterations);
      }
      // A phase-1 direction always meets an infeasible variable's bound; losing it
      // means the factorization has drifted.
      if (fresh) {
        total_iterations_ += iterations;
        return make_result(LpStatus::kIterationLimit, iterations);
      }
      refactor();
      compute_basic_values();
      fresh = true;
      continue;
    }

    ++iterations;
    fresh = false;
    const double theta = flip ? flip_range : leave_ratio;
    const double step = entering_dir * theta;
    if (theta != 0.0) {
      for (std::size_t p = 0; p < m_; ++p) {
        if (alpha_[p] != 0.0) x_[head_[p]] -= step * alpha_[p];
      }
    }

    if (flip) {
      status_[entering] = entering_dir > 0 ? VarStatus::kAtUpper : VarStatus::kAtLower;
      x_[entering] = nonbasic_value(entering);
    } else {
      x_[entering] += step;
      const std::size_t leaving = head_[leave_pos];
      x_[leaving] = leave_target;
      status_[leaving] = (leave_target == lo_[leaving]) ? VarStatus::kAtLower : VarStatus::kAtUpper;
      status_[entering] = VarStatus::kBasic;
      head_[leave_pos] = entering;
      factor_.update(leave_pos, alpha_);
    }

    if (theta <= 1e-12) {
      if (++degenerate_run >= opt_.bland_after) bland = true;
    } else {
      degenerate_run = 0;
      bland = false;
    }
  }
}

bool SimplexSolver::Impl::make_dual_feasible() {
  const double dtol = opt_.dual_tolerance;
  const std::size_t total = n_ + m_;
  compute_duals(false);
  bool flipped = false;
  for (std::size_t j = 0; j < total; ++j) {
    const VarStatus s = status_[j];
    if (s == VarStatus::kBasic || lo_[j] == up_[j]) continue;
    const double d = reduced_cost(j, false);
    if (s == VarStatus::kAtLower && d < -dtol) {
      if (!std::isfinite(up_[j])) return false;
      status_[j] = VarStatus::kAtUpper;
      flipped = true;
    } else if (s == VarStatus::kAtUpper && d > dtol) {
      if (!std::isfinite(lo_[j])) return false;
      status_[j] = VarStatus::kAtLower;
      flipped = true;
    } else if (s == VarStatus::kAtZero && std::abs(d) > dtol) {
      return false;
    }
  }
  if (flipped) compute_basic_values();
  return true;
}

SimplexSolver::Impl::DualOutcome SimplexSolver::Impl::dual_phase(std::size_t& iterations) {
  const double ptol = opt_.primal_tolerance;
  const double dtol = opt_.dual_tolerance;
  const std::size_t total = n_ + m_;

  auto load_reduced_costs = [&] {
    compute_duals(false);
    for (std::size_t j = 0; j < total; ++j) d_[j] = status_[j] == VarStatus::kBasic ? 0.0 : reduced_cost(j, false);
  };
  auto dual_feasible = [&] {
    for (std::size_t j = 0; j < total; ++j) {
      const VarStatus s = status_[j];
      if (s == VarStatus::kBasic || lo_[j] == up_[j]) continue;
      if ((s == VarStatus::kAtLower && d_[j] < -dtol) || (s == VarStatus::kAtUpper && d_[j] > dtol) ||
          (s == VarStatus::kAtZero && std::abs(d_[j]) > dtol))
        return false;
    }
    return true;
  };
  load_reduced_costs();

  bool fresh = true;
  std::vector<double> row(total, 0.0);
  for (;;) {
    if (iterations >= opt_.iteration_limit) return DualOutcome::kIterationLimit;
    if (factor_.num_updates() >= opt_.refactor_interval) {
      refactor();
      compute_basic_values();
      load_reduced_costs();
      if (!dual_feasible()) return DualOutcome::kGiveUp;
      fresh = true;
    }

    // Leaving row: largest primal infeasibility.
    std::size_t leave_pos = m_;
    double worst = ptol;
    for (std::size_t p = 0; p < m_; ++p) {
      const std::size_t j = head_[p];
      const double infeas = std::max(lo_[j] - x_[j], x_[j] - up_[j]);
      if (infeas > worst) {
        worst = infeas;
        leave_pos = p;
      }
    }
    if (leave_pos == m_) return DualOutcome::kPrimalFeasible;
    const std::size_t leaving = head_[leave_pos];
    const bool to_lower = x_[leaving] < lo_[leaving];
    const double s = to_lower ? 1.0 : -1.0;
    const double target = to_lower ? lo_[leaving] : up_[leaving];

    std::fill(rho_.begin(), rho_.end(), 0.0);
    rho_[leave_pos] = 1.0;
    factor_.btran(rho_);

    // Harris two-pass dual ratio test over the pivot row.
    double t_max = kInf;
    for (std::size_t j = 0; j < total; ++j) {
      const VarStatus st = status_[j];
      if (st == VarStatus::kBasic || lo_[j] == up_[j]) {
        row[j] = 0.0;
        continue;
      }
      double a = 0.0;
      if (j < n_) {
        for (std::size_t k = col_start_[j]; k < col_start_[j + 1]; ++k) a += rho_[col_row_[k]] * col_val_[k];
      } else {
        a = -rho_[j - n_];
      }
      row[j] = a;
      if (std::abs(a) <= opt_.pivot_tolerance) continue;
      const double sa = s * a;
      const bool eligible = (st == VarStatus::kAtLower && sa < 0.0) || (st == VarStatus::kAtUpper && sa > 0.0) ||
                            st == VarStatus::kAtZero;
      if (!eligible) continue;
      t_max = std::min(t_max, (std::abs(d_[j]) + dtol) / std::abs(a));
    }
    std::size_t entering = total;
    double best_abs = 0.0;
    for (std::size_t j = 0; j < total; ++j) {
      const double a = row[j];
      if (std::abs(a) <= opt_.pivot_tolerance) continue;
      const VarStatus st = status_[j];
      const double sa = s * a;
      const bool eligible = (st == VarStatus::kAtLower && sa < 0.0) || (st == VarStatus::kAtUpper && sa > 0.0) ||
                            st == VarStatus::kAtZero;
      if (!eligible) continue;
      if (std::abs(d_[j]) / std::abs(a) <= t_max && std::abs(a) > best_abs) {
        best_abs = std::abs(a);
        entering = j;
      }
    }
    if (entering == total) {
      if (fresh) return DualOutcome::kInfeasible;
      refactor();
      compute_basic_values();
      load_reduced_costs();
      if (!dual_feasible()) return DualOutcome::kGiveUp;
      fresh = true;
      continue;
    }

    load_column(entering, alpha_);
    factor_.ftran(alpha_);
    const double pivot = alpha_[leave_pos];
    if (std::abs(pivot) <= opt_.pivot_tolerance ||
        std::abs(pivot - row[entering]) > 1e-7 * (1.0 + std::abs(pivot))) {
      if (fresh) return DualOutcome::kGiveUp;
      refactor();
      compute_basic_values();
      load_reduced_costs();
      if (!dual_feasible()) return DualOutcome::kGiveUp;
      fresh = true;
      continue;
    }

    ++iterations;
    fresh = false;
    const double step = (x_[leaving] - target) / pivot;  // change of the entering variable
    for (std::size_t p = 0; p < m_; ++p) {
      if (alpha_[p] != 0.0) x_[head_[p]] -= step * alpha_[p];
    }
    x_[entering] += step;
    x_[leaving] = target;

    const double theta_d = d_[entering] / row[entering];
    for (std::size_t j = 0; j < total; ++j) {
      if (row[j] != 0.0) d_[j] -= theta_d * row[j];
    }
    d_[entering] = 0.0;
    d_[leaving] = -theta_d;

    status_[leaving] = to_lower ? VarStatus::kAtLower : VarStatus::kAtUpper;
    if (lo_[leaving] == up_[leaving]) status_[leaving] = VarStatus::kAtLower;
    status_[entering] = VarStatus::kBasic;
    head_[leave_pos] = entering;
    factor_.update(leave_pos, alpha_);
  }
}

SimplexSolver::SimplexSolver(const MilpProblem& problem, LpOptions options)
    : impl_(std::make_unique<Impl>(problem, options)) {}
SimplexSolver::~SimplexSolver() = default;
SimplexSolver::SimplexSolver(SimplexSolver&&) noexcept = default;
SimplexSolver& SimplexSolver::operator=(SimplexSolver&&) noexcept = default;

void SimplexSolver::set_column_bounds(std::size_t col, double lower, double upper) {
  impl_->set_bounds(col, lower, upper);
}
double SimplexSolver::column_lower(std::size_t col) const { return impl_->lower(col); }
double SimplexSolver::column_upper(std::size_t col) const { return impl_->upper(col); }
LpResult SimplexSolver::solve() { return impl_->solve(); }
Basis SimplexSolver::basis() const { return impl_->basis(); }
void SimplexSolver::set_basis(const Basis& basis) { impl_->set_basis(basis); }
std::size_t SimplexSolver::total_iterations() const { return impl_->total_iterations(); }

LpResult solve_lp(const MilpProblem& problem, const LpOptions& options, const Basis* warm_start) {
  SimplexSolver solver(problem, options);
  if (warm_start != nullptr) solver.set_basis(*warm_start);
  return solver.solve();
}

}  // namespace gdpmpc
