#pragma once

#include <array>
#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "gdpmpc/gdp_model.hpp"
#include "gdpmpc/milp_problem.hpp"

namespace gdpmpc {

// Four-state thermal model (floor, internal facade, external facade, indoor
// air, all in degC) sampled every 15 s, heated by a single input in watts.
struct BuildingModel {
  using State = std::array<double, 4>;

  std::array<std::array<double, 4>, 4> A{};
  std::array<double, 4> B{};
  std::array<double, 4> C{};
  std::array<std::array<double, 3>, 4> E{};
  double sampling_minutes = 0.25;

  static BuildingModel reference();

  State step(const State& x, double u, const std::array<double, 3>& d = {}) const;
  double output(const State& x) const;
};

enum class Relay : int { kOff = 0, kOn = 1 };

const char* to_string(Relay s);

struct ThermostatParams {
  double T_set = 21.0;
  double theta = 1.0;   // comfort half-band
  double gamma = 1.0;   // relay hysteresis half-band
  double u_max = 4000.0;
  double alpha = 1.0;   // energy weight
  double beta = 1e5;    // discomfort weight
  Relay s0 = Relay::kOff;

  // Empty when the invariants hold.
  std::vector<std::string> problems() const;
};

// Relay hysteresis: On iff (s = On and not T >= r + gamma) or (s = Off and T <= r - gamma).
Relay relay_switch(Relay s, double T, double r, double gamma);

// Operating modes 1..4 over (s_t, s_{t+1}):
//   1 (On,On)   T <= r + gamma   u_t = u_max, u_{t+1} = u_max
//   2 (On,Off)  T >= r + gamma   u_t = u_max, u_{t+1} = 0
//   3 (Off,On)  T <= r - gamma   u_t = 0,     u_{t+1} = u_max
//   4 (Off,Off) T >= r - gamma   u_t = 0,     u_{t+1} = 0
// Strict inequalities of the hysteresis are relaxed to non-strict ones.
struct OperatingMode {
  int id = 1;
  Relay s_now = Relay::kOn;
  Relay s_next = Relay::kOn;
};

int mode_of(Relay s_now, Relay s_next);
OperatingMode operating_mode(int id);

struct ThermostatVariant {
  enum class Kind { kGdpHull, kGdpBigM, kMilpBaseline };
  Kind kind = Kind::kGdpHull;
  // Big-M constant; unset for kGdpBigM means M from variable bounds.
  std::optional<double> big_m;

  static ThermostatVariant gdp_hull() { return {Kind::kGdpHull, std::nullopt}; }
  static ThermostatVariant gdp_bigm(std::optional<double> m = std::nullopt) { return {Kind::kGdpBigM, m}; }
  static ThermostatVariant milp_baseline(double m = 1e4) { return {Kind::kMilpBaseline, m}; }
};

std::string to_string(const ThermostatVariant& variant);

inline constexpr double kSetpointBand = 5.0;  // r_t within T_set +- 5
inline constexpr double kTemperatureMin = 0.0;
inline constexpr double kTemperatureMax = 45.0;
inline constexpr double kSlackMax = 20.0;

// Column handles of the thermostat GDP model.
struct ThermostatLayout {
  std::size_t horizon = 0;
  std::vector<std::array<std::size_t, 4>> x;  // x[t][k], t = 0..N
  std::vector<std::size_t> u;                  // t = 0..N
  std::vector<std::size_t> r;                  // t = 0..N-1
  std::vector<std::size_t> m;                  // t = 1..N at index t-1
  std::vector<std::size_t> mode_disjunction;   // t = 0..N-1
};

struct ThermostatGdp {
  GdpModel model;
  ThermostatLayout layout;
};

// GDP-MPC over horizon N from state x0 and relay state s0:
//   min sum_{t<N} alpha u_t + sum_{t=1..N} beta m_t
//   x_{t+1} = A x_t + B u_t, comfort T_set - theta - m_t <= T_t <= T_set + theta + m_t,
//   one disjunction over the operating modes per period, s0 as a unit clause.
// Throws std::invalid_argument for N = 0 or invalid parameters.
ThermostatGdp build_thermostat_gdp(const BuildingModel::State& x0, Relay s0, std::size_t N,
                                   const ThermostatParams& params,
                                   const BuildingModel& building = BuildingModel::reference());

MilpProblem build_thermostat_mpc(const BuildingModel::State& x0, Relay s0, std::size_t N,
                                 const ThermostatParams& params, const ThermostatVariant& variant,
                                 const BuildingModel& building = BuildingModel::reference());

MilpProblem reformulate_thermostat(const GdpModel& model, const ThermostatVariant& variant);

}  // namespace gdpmpc
