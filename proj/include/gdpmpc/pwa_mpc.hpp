#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <vector>

#include "gdpmpc/gdp_model.hpp"
#include "gdpmpc/thermostat.hpp"

namespace gdpmpc {

using Vector = std::vector<double>;
using Matrix = std::vector<Vector>;  // row-major, rows x cols

// One affine regime: x+ = A x + B u + E d, y = C x + F w.
//
// Local constraints and the stage cost are written over the regime-local
// variable space [x (n) | u (m) | y (k)]; use PwaSystem::state/input/output to
// address it. The builder substitutes each period's variables.
struct PwaRegime {
  Matrix A;
  Matrix B;
  Matrix E;
  Matrix C;
  Matrix F;
  std::vector<LinConstraint> local_constraints;
  AffineExpr stage_cost;
};

struct PwaSystem;

// Variables and mode disjunctions of a built disjunctive MPC model.
struct PwaMpcLayout {
  std::size_t horizon = 0;
  std::vector<std::vector<std::size_t>> x;  // t = 0..N
  std::vector<std::vector<std::size_t>> u;  // t = 0..N-1
  std::vector<std::vector<std::size_t>> y;  // t = 0..N-1
  std::vector<std::size_t> stage_cost;      // t = 0..N-1
  std::vector<std::size_t> mode;            // disjunction of period t
};

// Emits rows and/or clauses linking the mode of period t to period t + 1.
// Called for t = 0..N-2 after all periods exist.
using SwitchingSpec = std::function<void(std::size_t t, const PwaMpcLayout&, GdpModel&)>;

struct PwaSystem {
  std::vector<PwaRegime> regimes;
  Vector x_min, x_max;
  Vector u_min, u_max;
  SwitchingSpec switching;

  std::size_t num_states() const { return x_min.size(); }
  std::size_t num_inputs() const { return u_min.size(); }
  std::size_t num_outputs() const { return regimes.empty() ? 0 : regimes.front().C.size(); }
  std::size_t num_disturbances() const;
  std::size_t num_output_noise() const;

  VarRef state(std::size_t i) const { return {i}; }
  VarRef input(std::size_t j) const { return {num_states() + j}; }
  VarRef output(std::size_t l) const { return {num_states() + num_inputs() + l}; }

  // Throws std::invalid_argument on inconsistent dimensions or bad bounds.
  void check() const;
};

struct PwaStep {
  Vector next_state;
  Vector output;
};

// Exact affine update with the given regime; w defaults to zero.
PwaStep simulate_pwa_step(const PwaSystem& system, const Vector& x, const Vector& u, const Vector& d,
                          std::size_t regime, const Vector& w = {});

struct DisjunctiveMpc {
  GdpModel model;
  PwaMpcLayout layout;
};

// Disjunctive MPC over horizon N: per period one disjunction over the regimes,
// each disjunct holding its dynamics, output map, local constraints and stage
// cost equation; state and input bounds as variable bounds; the switching hook;
// mode0 fixed by a unit clause when given. disturbances[t] and noise[t] default
// to zero when missing.
DisjunctiveMpc build_disjunctive_mpc(const PwaSystem& system, std::size_t horizon, const Vector& x0,
                                     std::optional<std::size_t> mode0,
                                     const std::vector<Vector>& disturbances = {},
                                     const std::vector<Vector>& noise = {});

// The thermostat as a four-regime PWA system with inputs (heat u, setpoint r,
// comfort slack m), regimes in operating-mode order, the relay state carried
// between periods by clauses, comfort enforced on x_t with slack m_t, and stage
// cost alpha u + beta m.
PwaSystem thermostat_pwa_system(const ThermostatParams& params,
                                const BuildingModel& building = BuildingModel::reference());

}  // namespace gdpmpc
