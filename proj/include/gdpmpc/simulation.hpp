#pragma once

#include <cstddef>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "gdpmpc/milp_bnb.hpp"
#include "gdpmpc/thermostat.hpp"

namespace gdpmpc {

struct Scenario {
  BuildingModel building = BuildingModel::reference();
  ThermostatParams params;
  BuildingModel::State x0{21.0, 21.0, 21.0, 21.0};
  std::size_t periods = 480;
  std::string start_time = "07:00";  // label only
};

// Values at the start of period t; energy_kwh_cum includes period t's heating.
struct TraceRow {
  std::size_t t = 0;
  double minutes = 0.0;
  double T_indoor = 0.0;
  double r = 0.0;
  Relay s = Relay::kOff;
  double u_watts = 0.0;
  double slack = 0.0;  // comfort violation of T_indoor
  double energy_kwh_cum = 0.0;
};

struct SolveRecord {
  std::size_t period = 0;
  SolveStatus status = SolveStatus::kInfeasible;
  double objective = 0.0;
  double gap_percent = 0.0;
  std::size_t nodes = 0;
  int planned_mode = 0;
  bool setpoint_adjusted = false;  // r nudged off a hysteresis boundary tie
  double wall_seconds = 0.0;       // informational, never compared
};

struct ClosedLoopTrace {
  std::vector<TraceRow> rows;
  double energy_kwh = 0.0;
  double discomfort = 0.0;  // sum of the slack column
  std::vector<SolveRecord> solves;
};

double period_energy_kwh(double u_watts, double sampling_minutes);
double comfort_violation(double T, const ThermostatParams& params);

// Relay thermostat with the setpoint fixed at T_set.
ClosedLoopTrace simulate_rtc(const Scenario& scenario);

struct DmpcOptions {
  std::size_t N = 10;  // prediction periods
  std::size_t M = 1;   // periods between evaluations
  ThermostatVariant variant = ThermostatVariant::gdp_hull();
  // Play the planned setpoint sequence between evaluations instead of holding
  // the first planned setpoint.
  bool apply_sequence = false;
  SolveOptions solver;
};

// Receding-horizon D-MPC: every M periods the GDP-MPC is solved from the
// current state and relay state; the relay executes the switching with the
// resulting setpoint. When the relay disagrees with the planned mode because
// the plan sits exactly on a hysteresis boundary, the setpoint is moved by
// 1e-6 degC to the side the plan intends. Throws std::runtime_error when an
// evaluation yields no solution.
ClosedLoopTrace simulate_dmpc(const Scenario& scenario, const DmpcOptions& options);

struct TraceAudit {
  bool energy_ok = true;
  bool relay_ok = true;
  bool comfort_ok = true;
  std::vector<std::string> failures;

  bool ok() const { return energy_ok && relay_ok && comfort_ok; }
};

// Re-derives cumulative energy and the relay recursion from the raw columns
// and checks them exactly; the slack sum is checked within 1e-6.
TraceAudit audit_trace(const std::vector<TraceRow>& rows, const ThermostatParams& params,
                       double sampling_minutes = 0.25);

inline constexpr const char* kTraceHeader = "t,minutes,T_indoor,r,s,u_watts,slack,energy_kwh_cum";

// Numbers are written in shortest round-trip form, so parsing reproduces the
// doubles exactly.
void write_trace_csv(std::ostream& out, const ClosedLoopTrace& trace);
std::vector<TraceRow> read_trace_csv(std::istream& in);

}  // namespace gdpmpc
