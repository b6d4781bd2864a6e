#include "gdpmpc/simulation.hpp"

#include <charconv>
#include <chrono>
#include <cmath>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include "gdpmpc/reformulate.hpp"

namespace gdpmpc {

double period_energy_kwh(double u_watts, double sampling_minutes) {
  return u_watts * (sampling_minutes / 60.0) / 1000.0;
}

double comfort_violation(double T, const ThermostatParams& params) {
  return std::max({0.0, (params.T_set - params.theta) - T, T - (params.T_set + params.theta)});
}

namespace {

constexpr double kBoundaryNudge = 1e-6;

class TraceBuilder {
 public:
  TraceBuilder(const Scenario& scenario) : scenario_(scenario) {}

  void record(std::size_t t, double T, double r, Relay s, double u) {
    TraceRow row;
    row.t = t;
    row.minutes = static_cast<double>(t) * scenario_.building.sampling_minutes;
    row.T_indoor = T;
    row.r = r;
    row.s = s;
    row.u_watts = u;
    row.slack = comfort_violation(T, scenario_.params);
    energy_ += period_energy_kwh(u, scenario_.building.sampling_minutes);
    row.energy_kwh_cum = energy_;
    trace_.discomfort += row.slack;
    trace_.rows.push_back(row);
  }

  ClosedLoopTrace finish() {
    trace_.energy_kwh = energy_;
    return std::move(trace_);
  }

  ClosedLoopTrace& trace() { return trace_; }

 private:
  const Scenario& scenario_;
  ClosedLoopTrace trace_;
  double energy_ = 0.0;
};

// Moves r off a boundary tie so that the relay reproduces the planned mode.
double realize_setpoint(int mode, Relay s, double T, double r, double gamma) {
  const OperatingMode planned = operating_mode(mode);
  if (planned.s_now != s || relay_switch(s, T, r, gamma) == planned.s_next) return r;
  switch (mode) {
    case 1:
      return std::max(r, T - gamma + kBoundaryNudge);
    case 2:
      return std::min(r, T - gamma);
    case 3:
      return std::max(r, T + gamma);
    default:
      return std::min(r, T + gamma - kBoundaryNudge);
  }
}

struct Plan {
  std::vector<double> setpoints;
  std::vector<int> modes;
};

}  // namespace

ClosedLoopTrace simulate_rtc(const Scenario& scenario) {
  const ThermostatParams& p = scenario.params;
  TraceBuilder builder(scenario);
  BuildingModel::State x = scenario.x0;
  Relay s = p.s0;
  for (std::size_t t = 0; t < scenario.periods; ++t) {
    const double T = scenario.building.output(x);
    const double u = s == Relay::kOn ? p.u_max : 0.0;
    builder.record(t, T, p.T_set, s, u);
    x = scenario.building.step(x, u);
    s = relay_switch(s, T, p.T_set, p.gamma);
  }
  return builder.finish();
}

ClosedLoopTrace simulate_dmpc(const Scenario& scenario, const DmpcOptions& options) {
  if (options.N == 0 || options.M == 0) throw std::invalid_argument("simulate_dmpc: N and M must be at least 1");
  const ThermostatParams& p = scenario.params;
  TraceBuilder builder(scenario);
  BuildingModel::State x = scenario.x0;
  Relay s = p.s0;
  Plan plan;
  std::size_t plan_start = 0;

  for (std::size_t t = 0; t < scenario.periods; ++t) {
    const double T = scenario.building.output(x);
    if (t % options.M == 0) {
      const auto started = std::chrono::steady_clock::now();
      const ThermostatGdp gdp = build_thermostat_gdp(x, s, options.N, p, scenario.building);
      const MilpProblem milp = reformulate_thermostat(gdp.model, options.variant);
      const SolveResult solved = solve(milp, options.solver);
      SolveRecord rec;
      rec.period = t;
      rec.status = solved.status;
      rec.nodes = solved.nodes_explored;
      if (!solved.has_incumbent()) {
        throw std::runtime_error("simulate_dmpc: MPC evaluation at period " + std::to_string(t) + " returned " +
                                 to_string(solved.status));
      }
      rec.objective = solved.objective;
      rec.gap_percent = solved.gap_percent;
      const ProjectedPoint projected = project_point(milp, solved.point);
      plan.setpoints.clear();
      plan.modes.clear();
      for (std::size_t k = 0; k < options.N; ++k) {
        plan.setpoints.push_back(projected.point[gdp.layout.r[k]]);
        plan.modes.push_back(static_cast<int>(projected.selection[gdp.layout.mode_disjunction[k]]) + 1);
      }
      plan_start = t;
      rec.planned_mode = plan.modes.front();
      rec.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count();
      builder.trace().solves.push_back(rec);
    }

    const std::size_t offset = t - plan_start;
    double r = plan.setpoints.front();
    int mode = offset == 0 ? plan.modes.front() : 0;
    if (options.apply_sequence) {
      const std::size_t k = std::min(offset, plan.setpoints.size() - 1);
      r = plan.setpoints[k];
      mode = offset < plan.modes.size() ? plan.modes[offset] : 0;
    }
    if (mode != 0) {
      const double adjusted = realize_setpoint(mode, s, T, r, p.gamma);
      if (adjusted != r && offset == 0) builder.trace().solves.back().setpoint_adjusted = true;
      r = adjusted;
      if (!options.apply_sequence) plan.setpoints.front() = r;  // the held value is the realized one
    }

    const double u = s == Relay::kOn ? p.u_max : 0.0;
    builder.record(t, T, r, s, u);
    x = scenario.building.step(x, u);
    s = relay_switch(s, T, r, p.gamma);
  }
  return builder.finish();
}

TraceAudit audit_trace(const std::vector<TraceRow>& rows, const ThermostatParams& params, double sampling_minutes) {
  TraceAudit audit;
  double energy = 0.0;
  double slack_sum = 0.0;
  double discomfort = 0.0;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const TraceRow& row = rows[i];
    energy += row.u_watts * (sampling_minutes / 60.0) / 1000.0;
    if (energy != row.energy_kwh_cum && audit.energy_ok) {
      audit.energy_ok = false;
      audit.failures.push_back("cumulative energy mismatch at t=" + std::to_string(row.t));
    }
    if (i + 1 < rows.size()) {
      const bool on = (row.s == Relay::kOn && !(row.T_indoor >= row.r + params.gamma)) ||
                      (row.s == Relay::kOff && row.T_indoor <= row.r - params.gamma);
      const Relay expected = on ? Relay::kOn : Relay::kOff;
      if (rows[i + 1].s != expected && audit.relay_ok) {
        audit.relay_ok = false;
        audit.failures.push_back("relay recursion broken between t=" + std::to_string(row.t) + " and t+1");
      }
    }
    slack_sum += row.slack;
    const double lo = params.T_set - params.theta;
    const double hi = params.T_set + params.theta;
    discomfort += std::max(0.0, std::max(lo - row.T_indoor, row.T_indoor - hi));
  }
  if (std::abs(slack_sum - discomfort) > 1e-6) {
    audit.comfort_ok = false;
    audit.failures.push_back("slack column does not match the recomputed discomfort");
  }
  return audit;
}

namespace {

std::string shortest(double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

double parse_double(const std::string& field) {
  double v = 0.0;
  const auto res = std::from_chars(field.data(), field.data() + field.size(), v);
  if (res.ec != std::errc() || res.ptr != field.data() + field.size())
    throw std::runtime_error("trace CSV: bad number '" + field + "'");
  return v;
}

}  // namespace

void write_trace_csv(std::ostream& out, const ClosedLoopTrace& trace) {
  out << kTraceHeader << '\n';
  for (const TraceRow& row : trace.rows) {
    out << row.t << ',' << shortest(row.minutes) << ',' << shortest(row.T_indoor) << ',' << shortest(row.r) << ','
        << (row.s == Relay::kOn ? 1 : 0) << ',' << shortest(row.u_watts) << ',' << shortest(row.slack) << ','
        << shortest(row.energy_kwh_cum) << '\n';
  }
}

std::vector<TraceRow> read_trace_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line) || line != kTraceHeader) throw std::runtime_error("trace CSV: missing header");
  std::vector<TraceRow> rows;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::vector<std::string> f;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) f.push_back(cell);
    if (f.size() != 8) throw std::runtime_error("trace CSV: expected 8 fields");
    TraceRow row;
    row.t = static_cast<std::size_t>(parse_double(f[0]));
    row.minutes = parse_double(f[1]);
    row.T_indoor = parse_double(f[2]);
    row.r = parse_double(f[3]);
    row.s = parse_double(f[4]) != 0.0 ? Relay::kOn : Relay::kOff;
    row.u_watts = parse_double(f[5]);
    row.slack = parse_double(f[6]);
    row.energy_kwh_cum = parse_double(f[7]);
    rows.push_back(row);
  }
  return rows;
}

}  // namespace gdpmpc
