#include <doctest.h>

#include <cmath>
#include <stdexcept>
#include <vector>

#include "gdpmpc/brute_force.hpp"
#include "gdpmpc/milp_bnb.hpp"
#include "gdpmpc/reformulate.hpp"
#include "gdpmpc/thermostat.hpp"

using namespace gdpmpc;

TEST_CASE("relay_switch examples") {
  CHECK(relay_switch(Relay::kOn, 22.1, 21.0, 1.0) == Relay::kOff);
  CHECK(relay_switch(Relay::kOff, 20.0, 21.0, 1.0) == Relay::kOn);
  CHECK(relay_switch(Relay::kOff, 21.0, 21.0, 1.0) == Relay::kOff);
  CHECK(relay_switch(Relay::kOn, 22.0, 21.0, 1.0) == Relay::kOff);
  CHECK(relay_switch(Relay::kOn, 21.999, 21.0, 1.0) == Relay::kOn);
}

TEST_CASE("relay_switch over the full grid") {
  std::size_t evaluated = 0;
  for (Relay s : {Relay::kOff, Relay::kOn}) {
    for (int k = 0; k <= 60; ++k) {
      const double T = (180.0 + k) / 10.0;  // 18.0 .. 24.0
      for (double r : {19.0, 20.0, 21.0, 22.0, 23.0}) {
        const bool on_truth = (s == Relay::kOn && T < r + 1.0) || (s == Relay::kOff && T <= r - 1.0);
        CHECK(relay_switch(s, T, r, 1.0) == (on_truth ? Relay::kOn : Relay::kOff));
        ++evaluated;
      }
    }
  }
  CHECK(evaluated == 2 * 61 * 5);
}

TEST_CASE("mode_of is the operating-mode bijection") {
  CHECK(mode_of(Relay::kOn, Relay::kOn) == 1);
  CHECK(mode_of(Relay::kOn, Relay::kOff) == 2);
  CHECK(mode_of(Relay::kOff, Relay::kOn) == 3);
  CHECK(mode_of(Relay::kOff, Relay::kOff) == 4);
  for (int id = 1; id <= 4; ++id) {
    const OperatingMode m = operating_mode(id);
    CHECK(m.id == id);
    CHECK(mode_of(m.s_now, m.s_next) == id);
  }
  CHECK_THROWS_AS(operating_mode(0), std::invalid_argument);
  CHECK_THROWS_AS(operating_mode(5), std::invalid_argument);
}

TEST_CASE("building model step") {
  const BuildingModel b = BuildingModel::reference();
  const BuildingModel::State x{21.0, 21.0, 21.0, 21.0};
  CHECK(b.output(b.step(x, 0.0)) == doctest::Approx(20.9013).epsilon(1e-9));
  CHECK(b.output(b.step(x, 4000.0)) == doctest::Approx(20.9013 + 4000.0 * 4.421e-5).epsilon(1e-9));
  const BuildingModel::State zero{};
  CHECK(b.step(zero, 0.0) == zero);
}

TEST_CASE("parameter validation") {
  ThermostatParams p;
  CHECK(p.problems().empty());
  p.gamma = 0.0;
  CHECK_FALSE(p.problems().empty());
  CHECK_THROWS_AS(build_thermostat_gdp({21, 21, 21, 21}, Relay::kOff, 3, p), std::invalid_argument);
  CHECK_THROWS_AS(build_thermostat_gdp({21, 21, 21, 21}, Relay::kOff, 0, ThermostatParams{}),
                  std::invalid_argument);
}

TEST_CASE("GDP layout and structure") {
  const std::size_t N = 4;
  const ThermostatGdp g = build_thermostat_gdp({21, 21, 21, 21}, Relay::kOn, N, ThermostatParams{});
  CHECK(g.layout.horizon == N);
  CHECK(g.layout.x.size() == N + 1);
  CHECK(g.layout.u.size() == N + 1);
  CHECK(g.layout.r.size() == N);
  CHECK(g.layout.m.size() == N);
  CHECK(g.layout.mode_disjunction.size() == N);
  CHECK(g.model.disjunctions.size() == N);
  for (const Disjunction& d : g.model.disjunctions) CHECK(d.disjuncts.size() == 4);
  for (std::size_t t = 0; t < N; ++t) {
    CHECK(g.model.variables[g.layout.r[t]].lower == doctest::Approx(21.0 - kSetpointBand));
    CHECK(g.model.variables[g.layout.r[t]].upper == doctest::Approx(21.0 + kSetpointBand));
  }
}

TEST_CASE("N = 1 with s0 Off leaves modes 3 and 4") {
  const ThermostatGdp g = build_thermostat_gdp({21, 21, 21, 21}, Relay::kOff, 1, ThermostatParams{});
  const BruteForceResult r = brute_force_solve(g.model);
  CHECK(r.combinations == 4);
  CHECK(r.lps_solved == 2);
  REQUIRE(r.status == SolveStatus::kOptimal);
  CHECK(r.selection[0] >= 2);
}

TEST_CASE("relay continuity links consecutive modes") {
  // Mode t fixes u_{t+1} and so does mode t+1; selections that disagree on the
  // relay state in between have an infeasible induced LP.
  const ThermostatGdp g = build_thermostat_gdp({21, 21, 21, 21}, Relay::kOn, 3, ThermostatParams{});
  std::size_t chains = 0;
  for (std::size_t a = 0; a < 4; ++a)
    for (std::size_t b = 0; b < 4; ++b)
      for (std::size_t c = 0; c < 4; ++c) {
        const Selection sel{a, b, c};
        const OperatingMode m0 = operating_mode(static_cast<int>(a) + 1);
        const OperatingMode m1 = operating_mode(static_cast<int>(b) + 1);
        const OperatingMode m2 = operating_mode(static_cast<int>(c) + 1);
        const bool chain = m0.s_next == m1.s_now && m1.s_next == m2.s_now;
        const LpResult lp = solve_lp(induced_lp(g.model, sel));
        if (!chain) CHECK(lp.status == LpStatus::kInfeasible);
        if (m0.s_now != Relay::kOn) continue;
        chains += chain;
      }
  CHECK(chains == 8);  // s1, s2, s3 free once s0 = On
}

TEST_CASE("variants produce the expected formulations") {
  const BuildingModel::State x0{20.6, 20.9, 21.2, 20.7};
  const ThermostatParams params;
  const MilpProblem hull = build_thermostat_mpc(x0, Relay::kOff, 5, params, ThermostatVariant::gdp_hull());
  const MilpProblem bigm = build_thermostat_mpc(x0, Relay::kOff, 5, params, ThermostatVariant::gdp_bigm(1e4));
  const MilpProblem base = build_thermostat_mpc(x0, Relay::kOff, 5, params, ThermostatVariant::milp_baseline());
  CHECK(hull.num_columns() > bigm.num_columns());
  CHECK(bigm.num_columns() == base.num_columns());
  CHECK(bigm.num_rows() == base.num_rows());
  CHECK(to_string(ThermostatVariant::gdp_hull()) != to_string(ThermostatVariant::gdp_bigm(1e4)));
  CHECK(relaxation_bound(hull) >= relaxation_bound(bigm) - 1e-9);
  SolveOptions o;
  o.rel_gap_tol = 1e-12;
  const double zh = solve(hull, o).objective;
  CHECK(solve(bigm, o).objective == doctest::Approx(zh).epsilon(1e-9));
  CHECK(solve(base, o).objective == doctest::Approx(zh).epsilon(1e-9));
}

TEST_CASE("N = 10 hull relaxation is at least as tight as big-M") {
  const BuildingModel::State x0{21.0, 21.0, 21.0, 21.0};
  const ThermostatParams params;
  const double h = relaxation_bound(build_thermostat_mpc(x0, Relay::kOff, 10, params, ThermostatVariant::gdp_hull()));
  const double b =
      relaxation_bound(build_thermostat_mpc(x0, Relay::kOff, 10, params, ThermostatVariant::gdp_bigm(1e4)));
  CHECK(h >= b - 1e-9);
}

TEST_CASE("small horizons match enumeration") {
  const ThermostatParams params;
  const std::vector<std::pair<BuildingModel::State, Relay>> starts = {
      {{21.0, 21.0, 21.0, 21.0}, Relay::kOff},
      {{19.0, 19.5, 20.0, 19.2}, Relay::kOff},
      {{22.5, 22.0, 21.5, 22.8}, Relay::kOn},
      {{20.0, 20.0, 20.0, 20.0}, Relay::kOn},
  };
  SolveOptions o;
  o.rel_gap_tol = 1e-12;
  for (const auto& [x0, s0] : starts) {
    for (std::size_t N = 1; N <= 3; ++N) {
      const ThermostatGdp g = build_thermostat_gdp(x0, s0, N, params);
      const BruteForceResult brute = brute_force_solve(g.model);
      REQUIRE(brute.status == SolveStatus::kOptimal);
      for (const ThermostatVariant& v :
           {ThermostatVariant::gdp_hull(), ThermostatVariant::gdp_bigm(), ThermostatVariant::gdp_bigm(1e4)}) {
        const SolveResult r = solve(reformulate_thermostat(g.model, v), o);
        INFO(to_string(v), " N=", N);
        REQUIRE(r.status == SolveStatus::kOptimal);
        CHECK(std::abs(r.objective - brute.objective) <= 1e-6);
      }
    }
  }
}

TEST_CASE("optimal plans follow the relay in the model's own dynamics") {
  const ThermostatParams params;
  const BuildingModel b = BuildingModel::reference();
  const BuildingModel::State x0{20.4, 20.8, 21.0, 20.5};
  const std::size_t N = 6;
  const ThermostatGdp g = build_thermostat_gdp(x0, Relay::kOff, N, params);
  const MilpProblem p = reformulate_thermostat(g.model, ThermostatVariant::gdp_hull());
  const SolveResult r = solve(p);
  REQUIRE(r.status == SolveStatus::kOptimal);
  const ProjectedPoint pp = project_point(p, r.point);
  BuildingModel::State x = x0;
  Relay s = Relay::kOff;
  for (std::size_t t = 0; t < N; ++t) {
    const double u = pp.point[g.layout.u[t]];
    CHECK(u == doctest::Approx(s == Relay::kOn ? params.u_max : 0.0));
    for (std::size_t k = 0; k < 4; ++k) CHECK(pp.point[g.layout.x[t][k]] == doctest::Approx(x[k]).epsilon(1e-9));
    const OperatingMode m = operating_mode(static_cast<int>(pp.selection[t]) + 1);
    CHECK(m.s_now == s);
    x = b.step(x, u);
    s = m.s_next;
  }
}
