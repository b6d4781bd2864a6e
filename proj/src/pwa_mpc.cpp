#include "gdpmpc/pwa_mpc.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace gdpmpc {
namespace {

void require_shape(const Matrix& M, std::size_t rows, std::size_t cols, const char* what, std::size_t regime) {
  bool ok = M.size() == rows;
  for (const Vector& row : M) ok = ok && row.size() == cols;
  if (!ok) {
    throw std::invalid_argument(std::string("PwaSystem: regime ") + std::to_string(regime) + " matrix " + what +
                                " must be " + std::to_string(rows) + "x" + std::to_string(cols));
  }
}

std::size_t cols_of(const Matrix& M) { return M.empty() ? 0 : M.front().size(); }

Vector padded(const std::vector<Vector>& seq, std::size_t t, std::size_t dim) {
  if (t < seq.size() && !seq[t].empty()) {
    if (seq[t].size() != dim) throw std::invalid_argument("build_disjunctive_mpc: sequence entry has wrong size");
    return seq[t];
  }
  return Vector(dim, 0.0);
}

AffineExpr remap(const AffineExpr& local, const std::vector<std::size_t>& to_global) {
  AffineExpr out(local.constant());
  for (const AffineExpr::Term& t : local.terms()) {
    if (t.var.index >= to_global.size()) throw std::invalid_argument("PwaRegime: local variable index out of range");
    out.add_term(VarRef{to_global[t.var.index]}, t.coeff);
  }
  return out;
}

}  // namespace

std::size_t PwaSystem::num_disturbances() const { return regimes.empty() ? 0 : cols_of(regimes.front().E); }
std::size_t PwaSystem::num_output_noise() const { return regimes.empty() ? 0 : cols_of(regimes.front().F); }

void PwaSystem::check() const {
  if (regimes.empty()) throw std::invalid_argument("PwaSystem: at least one regime required");
  const std::size_t n = num_states();
  const std::size_t m = num_inputs();
  if (x_max.size() != n || u_max.size() != m) throw std::invalid_argument("PwaSystem: bound vectors differ in size");
  for (std::size_t i = 0; i < n; ++i) {
    if (!std::isfinite(x_min[i]) || !std::isfinite(x_max[i]) || x_min[i] > x_max[i])
      throw std::invalid_argument("PwaSystem: state bounds must be finite and ordered");
  }
  for (std::size_t j = 0; j < m; ++j) {
    if (!std::isfinite(u_min[j]) || !std::isfinite(u_max[j]) || u_min[j] > u_max[j])
      throw std::invalid_argument("PwaSystem: input bounds must be finite and ordered");
  }
  const std::size_t k = num_outputs();
  const std::size_t v = num_disturbances();
  const std::size_t h = num_output_noise();
  for (std::size_t r = 0; r < regimes.size(); ++r) {
    const PwaRegime& g = regimes[r];
    require_shape(g.A, n, n, "A", r);
    require_shape(g.B, n, m, "B", r);
    require_shape(g.E, n, v, "E", r);
    require_shape(g.C, k, n, "C", r);
    require_shape(g.F, k, h, "F", r);
  }
}

PwaStep simulate_pwa_step(const PwaSystem& system, const Vector& x, const Vector& u, const Vector& d,
                          std::size_t regime, const Vector& w) {
  if (regime >= system.regimes.size()) throw std::invalid_argument("simulate_pwa_step: regime out of range");
  const PwaRegime& g = system.regimes[regime];
  const std::size_t n = system.num_states();
  const std::size_t v = system.num_disturbances();
  const std::size_t h = system.num_output_noise();
  if (x.size() != n || u.size() != system.num_inputs() || (!d.empty() && d.size() != v) ||
      (!w.empty() && w.size() != h)) {
    throw std::invalid_argument("simulate_pwa_step: dimension mismatch");
  }
  PwaStep out;
  out.next_state.assign(n, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    double s = 0.0;
    for (std::size_t c = 0; c < n; ++c) s += g.A[i][c] * x[c];
    for (std::size_t c = 0; c < u.size(); ++c) s += g.B[i][c] * u[c];
    for (std::size_t c = 0; c < d.size(); ++c) s += g.E[i][c] * d[c];
    out.next_state[i] = s;
  }
  out.output.assign(g.C.size(), 0.0);
  for (std::size_t l = 0; l < g.C.size(); ++l) {
    double s = 0.0;
    for (std::size_t c = 0; c < n; ++c) s += g.C[l][c] * x[c];
    for (std::size_t c = 0; c < w.size(); ++c) s += g.F[l][c] * w[c];
    out.output[l] = s;
  }
  return out;
}

DisjunctiveMpc build_disjunctive_mpc(const PwaSystem& system, std::size_t horizon, const Vector& x0,
                                     std::optional<std::size_t> mode0, const std::vector<Vector>& disturbances,
                                     const std::vector<Vector>& noise) {
  system.check();
  if (horizon == 0) throw std::invalid_argument("build_disjunctive_mpc: horizon must be at least 1");
  const std::size_t n = system.num_states();
  const std::size_t m = system.num_inputs();
  const std::size_t k = system.num_outputs();
  const std::size_t S = system.regimes.size();
  if (x0.size() != n) throw std::invalid_argument("build_disjunctive_mpc: x0 has wrong dimension");
  for (std::size_t i = 0; i < n; ++i) {
    if (x0[i] < system.x_min[i] || x0[i] > system.x_max[i])
      throw std::invalid_argument("build_disjunctive_mpc: x0 outside the state bounds");
  }
  if (mode0 && *mode0 >= S) throw std::invalid_argument("build_disjunctive_mpc: mode0 out of range");

  DisjunctiveMpc out;
  GdpModel& g = out.model;
  PwaMpcLayout& L = out.layout;
  L.horizon = horizon;
  const auto tag = [](const char* base, std::size_t i, std::size_t t) {
    return std::string(base) + std::to_string(i) + "_" + std::to_string(t);
  };

  for (std::size_t t = 0; t <= horizon; ++t) {
    std::vector<std::size_t> xt;
    for (std::size_t i = 0; i < n; ++i) {
      const double lo = t == 0 ? x0[i] : system.x_min[i];
      const double hi = t == 0 ? x0[i] : system.x_max[i];
      xt.push_back(g.add_variable(tag("x", i, t), lo, hi).index);
    }
    L.x.push_back(std::move(xt));
  }
  for (std::size_t t = 0; t < horizon; ++t) {
    std::vector<std::size_t> ut;
    for (std::size_t j = 0; j < m; ++j)
      ut.push_back(g.add_variable(tag("u", j, t), system.u_min[j], system.u_max[j]).index);
    L.u.push_back(std::move(ut));
  }

  // Output bounds: hull of every regime's output map over the state box.
  std::vector<double> lo_box(system.x_min), hi_box(system.x_max);
  for (std::size_t t = 0; t < horizon; ++t) {
    const Vector w = padded(noise, t, system.num_output_noise());
    std::vector<std::size_t> yt;
    for (std::size_t l = 0; l < k; ++l) {
      double lo = kInf, hi = -kInf;
      for (const PwaRegime& r : system.regimes) {
        AffineExpr y;
        for (std::size_t c = 0; c < n; ++c) y.add_term(VarRef{c}, r.C[l][c]);
        for (std::size_t c = 0; c < w.size(); ++c) y.add_constant(r.F[l][c] * w[c]);
        hi = std::max(hi, y.supremum(lo_box, hi_box));
        lo = std::min(lo, -(-y).supremum(lo_box, hi_box));
      }
      yt.push_back(g.add_variable(tag("y", l, t), lo, hi).index);
    }
    L.y.push_back(std::move(yt));
  }

  // Stage-cost bounds over the [x | u | y] box.
  std::vector<double> local_lo(system.x_min), local_hi(system.x_max);
  local_lo.insert(local_lo.end(), system.u_min.begin(), system.u_min.end());
  local_hi.insert(local_hi.end(), system.u_max.begin(), system.u_max.end());
  for (std::size_t l = 0; l < k; ++l) {
    local_lo.push_back(g.variables[L.y[0][l]].lower);
    local_hi.push_back(g.variables[L.y[0][l]].upper);
  }
  double cost_lo = kInf, cost_hi = -kInf;
  for (const PwaRegime& r : system.regimes) {
    cost_hi = std::max(cost_hi, r.stage_cost.supremum(local_lo, local_hi));
    cost_lo = std::min(cost_lo, -(-r.stage_cost).supremum(local_lo, local_hi));
  }
  for (std::size_t t = 0; t < horizon; ++t) {
    const VarRef c = g.add_variable("stage_" + std::to_string(t), cost_lo, cost_hi);
    L.stage_cost.push_back(c.index);
    g.objective.add_term(c, 1.0);
  }

  for (std::size_t t = 0; t < horizon; ++t) {
    const Vector d = padded(disturbances, t, system.num_disturbances());
    const Vector w = padded(noise, t, system.num_output_noise());
    std::vector<std::size_t> local_map = L.x[t];
    local_map.insert(local_map.end(), L.u[t].begin(), L.u[t].end());
    local_map.insert(local_map.end(), L.y[t].begin(), L.y[t].end());

    Disjunction dj;
    dj.name = "regime_" + std::to_string(t);
    for (std::size_t s = 0; s < S; ++s) {
      const PwaRegime& r = system.regimes[s];
      Disjunct part;
      part.indicator_name = "delta" + std::to_string(s + 1) + "_" + std::to_string(t);
      for (std::size_t i = 0; i < n; ++i) {
        AffineExpr next;
        for (std::size_t c = 0; c < n; ++c) next.add_term(VarRef{L.x[t][c]}, r.A[i][c]);
        for (std::size_t c = 0; c < m; ++c) next.add_term(VarRef{L.u[t][c]}, r.B[i][c]);
        for (std::size_t c = 0; c < d.size(); ++c) next.add_constant(r.E[i][c] * d[c]);
        part.local_constraints.push_back(equal(VarRef{L.x[t + 1][i]}, next));
      }
      for (std::size_t l = 0; l < k; ++l) {
        AffineExpr y;
        for (std::size_t c = 0; c < n; ++c) y.add_term(VarRef{L.x[t][c]}, r.C[l][c]);
        for (std::size_t c = 0; c < w.size(); ++c) y.add_constant(r.F[l][c] * w[c]);
        part.local_constraints.push_back(equal(VarRef{L.y[t][l]}, y));
      }
      for (const LinConstraint& c : r.local_constraints)
        part.local_constraints.push_back({remap(c.expr, local_map), c.relation});
      part.local_constraints.push_back(equal(VarRef{L.stage_cost[t]}, remap(r.stage_cost, local_map)));
      dj.disjuncts.push_back(std::move(part));
    }
    L.mode.push_back(g.add_disjunction(std::move(dj)));
  }

  if (system.switching) {
    for (std::size_t t = 0; t + 1 < horizon; ++t) system.switching(t, L, g);
  }
  if (mode0) g.add_clause({{g.literal(L.mode[0], *mode0)}});
  return out;
}

PwaSystem thermostat_pwa_system(const ThermostatParams& params, const BuildingModel& building) {
  PwaSystem sys;
  sys.x_min.assign(4, kTemperatureMin);
  sys.x_max.assign(4, kTemperatureMax);
  sys.u_min = {0.0, params.T_set - kSetpointBand, 0.0};
  sys.u_max = {params.u_max, params.T_set + kSetpointBand, kSlackMax};

  Matrix A(4, Vector(4)), B(4, Vector(3, 0.0)), E(4, Vector(3)), C(1, Vector(4)), F(1, Vector{});
  for (std::size_t i = 0; i < 4; ++i) {
    for (std::size_t c = 0; c < 4; ++c) A[i][c] = building.A[i][c];
    for (std::size_t c = 0; c < 3; ++c) E[i][c] = building.E[i][c];
    B[i][0] = building.B[i];
    C[0][i] = building.C[i];
  }

  for (int id = 1; id <= 4; ++id) {
    PwaRegime r{A, B, E, C, F, {}, {}};
    const AffineExpr T = sys.output(0);
    const AffineExpr u = sys.input(0);
    const AffineExpr setpoint = sys.input(1);
    const AffineExpr slack = sys.input(2);
    const OperatingMode mode = operating_mode(id);
    switch (id) {
      case 1:
        r.local_constraints.push_back(T <= setpoint + params.gamma);
        break;
      case 2:
        r.local_constraints.push_back(T >= setpoint + params.gamma);
        break;
      case 3:
        r.local_constraints.push_back(T <= setpoint - params.gamma);
        break;
      default:
        r.local_constraints.push_back(T >= setpoint - params.gamma);
        break;
    }
    r.local_constraints.push_back(equal(u, mode.s_now == Relay::kOn ? params.u_max : 0.0));
    r.local_constraints.push_back(T >= params.T_set - params.theta - slack);
    r.local_constraints.push_back(T <= params.T_set + params.theta + slack);
    r.stage_cost = params.alpha * u + params.beta * slack;
    sys.regimes.push_back(std::move(r));
  }

  // Mode (s_t, s_{t+1}) at t forces s_now = s_{t+1} at t + 1.
  sys.switching = [](std::size_t t, const PwaMpcLayout& layout, GdpModel& g) {
    const std::size_t now = layout.mode[t];
    const std::size_t next = layout.mode[t + 1];
    for (int id = 1; id <= 4; ++id) {
      const bool on_next = operating_mode(id).s_next == Relay::kOn;
      const std::size_t i = static_cast<std::size_t>(id - 1);
      g.add_clause({{!g.literal(now, i), g.literal(next, on_next ? 0 : 2), g.literal(next, on_next ? 1 : 3)}});
    }
  };
  return sys;
}

}  // namespace gdpmpc
