#include <doctest.h>

#include <cmath>
#include <sstream>
#include <stdexcept>
#include <vector>

#include "gdpmpc/simulation.hpp"

using namespace gdpmpc;

namespace {

std::string csv(const ClosedLoopTrace& trace) {
  std::ostringstream out;
  write_trace_csv(out, trace);
  return out.str();
}

void check_invariants(const ClosedLoopTrace& trace, const Scenario& sc) {
  REQUIRE(trace.rows.size() == sc.periods);
  const TraceAudit audit = audit_trace(trace.rows, sc.params, sc.building.sampling_minutes);
  for (const std::string& f : audit.failures) INFO(f);
  CHECK(audit.ok());
  double prev = 0.0;
  for (std::size_t t = 0; t < trace.rows.size(); ++t) {
    const TraceRow& row = trace.rows[t];
    CHECK(row.t == t);
    CHECK(row.minutes == doctest::Approx(0.25 * static_cast<double>(t)));
    CHECK(row.u_watts == (row.s == Relay::kOn ? sc.params.u_max : 0.0));
    CHECK(row.energy_kwh_cum >= prev);
    CHECK(row.slack >= 0.0);
    CHECK(row.slack == doctest::Approx(comfort_violation(row.T_indoor, sc.params)));
    prev = row.energy_kwh_cum;
  }
  CHECK(trace.energy_kwh == trace.rows.back().energy_kwh_cum);
}

}  // namespace

TEST_CASE("energy and comfort helpers") {
  CHECK(period_energy_kwh(4000.0, 0.25) == doctest::Approx(4000.0 * 0.25 / 60.0 / 1000.0));
  const ThermostatParams p;
  CHECK(comfort_violation(21.0, p) == 0.0);
  CHECK(comfort_violation(22.0, p) == 0.0);
  CHECK(comfort_violation(22.5, p) == doctest::Approx(0.5));
  CHECK(comfort_violation(19.25, p) == doctest::Approx(0.75));
}

TEST_CASE("RTC trace satisfies its invariants") {
  const Scenario sc;
  const ClosedLoopTrace trace = simulate_rtc(sc);
  check_invariants(trace, sc);
  for (const TraceRow& row : trace.rows) CHECK(row.r == sc.params.T_set);
  CHECK(trace.solves.empty());
}

TEST_CASE("RTC with an infinite hysteresis never switches") {
  Scenario sc;
  sc.params.gamma = INFINITY;
  const ClosedLoopTrace off = simulate_rtc(sc);
  CHECK(off.energy_kwh == 0.0);
  for (const TraceRow& row : off.rows) CHECK(row.u_watts == 0.0);

  sc.params.s0 = Relay::kOn;
  const ClosedLoopTrace on = simulate_rtc(sc);
  CHECK(on.energy_kwh == doctest::Approx(8.0).epsilon(1e-12));
  for (const TraceRow& row : on.rows) CHECK(row.s == Relay::kOn);
}

TEST_CASE("auditor catches tampered traces") {
  const Scenario sc;
  const ClosedLoopTrace trace = simulate_rtc(sc);
  REQUIRE(audit_trace(trace.rows, sc.params).ok());

  auto energy = trace.rows;
  energy[100].energy_kwh_cum += 1e-9;
  const TraceAudit a = audit_trace(energy, sc.params);
  CHECK_FALSE(a.energy_ok);
  CHECK(a.relay_ok);

  auto relay = trace.rows;
  relay[200].s = relay[200].s == Relay::kOn ? Relay::kOff : Relay::kOn;
  CHECK_FALSE(audit_trace(relay, sc.params).relay_ok);

  auto comfort = trace.rows;
  comfort[50].slack += 0.01;
  const TraceAudit c = audit_trace(comfort, sc.params);
  CHECK_FALSE(c.comfort_ok);
  CHECK_FALSE(c.failures.empty());
}

TEST_CASE("CSV round-trip is exact") {
  Scenario sc;
  sc.x0 = {20.123456789, 20.5, 21.0, 19.87654321};
  const ClosedLoopTrace trace = simulate_rtc(sc);
  const std::string text = csv(trace);
  CHECK(text.rfind(std::string(kTraceHeader) + "\n", 0) == 0);
  std::istringstream in(text);
  const std::vector<TraceRow> back = read_trace_csv(in);
  REQUIRE(back.size() == trace.rows.size());
  for (std::size_t i = 0; i < back.size(); ++i) {
    CHECK(back[i].t == trace.rows[i].t);
    CHECK(back[i].minutes == trace.rows[i].minutes);
    CHECK(back[i].T_indoor == trace.rows[i].T_indoor);
    CHECK(back[i].r == trace.rows[i].r);
    CHECK(back[i].s == trace.rows[i].s);
    CHECK(back[i].u_watts == trace.rows[i].u_watts);
    CHECK(back[i].slack == trace.rows[i].slack);
    CHECK(back[i].energy_kwh_cum == trace.rows[i].energy_kwh_cum);
  }
  CHECK(audit_trace(back, sc.params).ok());
}

TEST_CASE("CSV reader rejects malformed input") {
  std::istringstream no_header("1,2,3\n");
  CHECK_THROWS_AS(read_trace_csv(no_header), std::runtime_error);
  std::istringstream short_row(std::string(kTraceHeader) + "\n0,0,21,21,off,0\n");
  CHECK_THROWS_AS(read_trace_csv(short_row), std::runtime_error);
  std::istringstream bad_number(std::string(kTraceHeader) + "\n0,0,abc,21,off,0,0,0\n");
  CHECK_THROWS_AS(read_trace_csv(bad_number), std::runtime_error);
}

TEST_CASE("D-MPC trace satisfies its invariants and is deterministic") {
  Scenario sc;
  sc.periods = 60;
  sc.x0 = {20.5, 20.7, 21.0, 20.6};
  DmpcOptions o;
  o.N = 6;
  o.M = 1;
  const ClosedLoopTrace a = simulate_dmpc(sc, o);
  check_invariants(a, sc);
  CHECK(a.solves.size() == 60);
  for (const SolveRecord& s : a.solves) {
    CHECK(s.status == SolveStatus::kOptimal);
    CHECK(s.planned_mode >= 1);
    CHECK(s.planned_mode <= 4);
  }
  // The relay executes the planned mode at every evaluation.
  for (std::size_t k = 0; k + 1 < a.rows.size(); ++k) {
    const OperatingMode m = operating_mode(a.solves[k].planned_mode);
    CHECK(a.rows[k].s == m.s_now);
    CHECK(a.rows[k + 1].s == m.s_next);
  }
  const ClosedLoopTrace b = simulate_dmpc(sc, o);
  CHECK(csv(a) == csv(b));
}

TEST_CASE("D-MPC evaluation spacing and variants") {
  Scenario sc;
  sc.periods = 40;
  DmpcOptions o;
  o.N = 5;
  o.M = 10;
  const ClosedLoopTrace held = simulate_dmpc(sc, o);
  check_invariants(held, sc);
  REQUIRE(held.solves.size() == 4);
  for (std::size_t k = 0; k < 4; ++k) CHECK(held.solves[k].period == 10 * k);
  // Between evaluations the held setpoint stays constant.
  for (std::size_t t = 1; t < 10; ++t) CHECK(held.rows[t].r == held.rows[1].r);

  o.apply_sequence = true;
  check_invariants(simulate_dmpc(sc, o), sc);

  o.apply_sequence = false;
  o.M = 1;
  o.variant = ThermostatVariant::gdp_bigm(1e4);
  const ClosedLoopTrace bigm = simulate_dmpc(sc, o);
  o.variant = ThermostatVariant::gdp_hull();
  const ClosedLoopTrace hull = simulate_dmpc(sc, o);
  // Same state at the first evaluation, so the same optimum.
  CHECK(hull.solves[0].objective == doctest::Approx(bigm.solves[0].objective).epsilon(1e-6));
  check_invariants(bigm, sc);
}

TEST_CASE("D-MPC rejects a zero horizon or spacing") {
  Scenario sc;
  DmpcOptions o;
  o.N = 0;
  CHECK_THROWS_AS(simulate_dmpc(sc, o), std::invalid_argument);
  o.N = 3;
  o.M = 0;
  CHECK_THROWS_AS(simulate_dmpc(sc, o), std::invalid_argument);
}
