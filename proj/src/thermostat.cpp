#include "gdpmpc/thermostat.hpp"

#include <cmath>
#include <stdexcept>

#include "gdpmpc/reformulate.hpp"

namespace gdpmpc {

BuildingModel BuildingModel::reference() {
  BuildingModel b;
  b.A = {{{0.9997, 0.0, 0.0, 0.0},
          {0.0, 0.9998, 0.0, 0.0},
          {0.0, 0.0, 0.9992, 0.0},
          {0.0177, 0.0428, 0.0, 0.9348}}};
  b.B = {0.0001e-4, 0.0001e-4, 0.0, 0.4421e-4};
  b.C = {0.0, 0.0, 0.0, 1.0};
  b.E = {{{0.0, 0.0, 0.0}, {0.0, 0.0, 0.0}, {0.0008, 0.0, 0.0}, {0.0047, 0.0, 0.0}}};
  return b;
}

BuildingModel::State BuildingModel::step(const State& x, double u, const std::array<double, 3>& d) const {
  State next{};
  for (std::size_t i = 0; i < 4; ++i) {
    double v = B[i] * u;
    for (std::size_t k = 0; k < 4; ++k) v += A[i][k] * x[k];
    for (std::size_t k = 0; k < 3; ++k) v += E[i][k] * d[k];
    next[i] = v;
  }
  return next;
}

double BuildingModel::output(const State& x) const {
  double y = 0.0;
  for (std::size_t k = 0; k < 4; ++k) y += C[k] * x[k];
  return y;
}

const char* to_string(Relay s) { return s == Relay::kOn ? "on" : "off"; }

std::vector<std::string> ThermostatParams::problems() const {
  std::vector<std::string> out;
  if (!(theta > 0.0)) out.push_back("theta must be positive");
  if (!(gamma > 0.0)) out.push_back("gamma must be positive");
  if (!(u_max > 0.0)) out.push_back("u_max must be positive");
  if (!(alpha >= 0.0)) out.push_back("alpha must be non-negative");
  if (!(beta >= 0.0)) out.push_back("beta must be non-negative");
  if (!std::isfinite(T_set)) out.push_back("T_set must be finite");
  return out;
}

Relay relay_switch(Relay s, double T, double r, double gamma) {
  const bool on = (s == Relay::kOn && !(T >= r + gamma)) || (s == Relay::kOff && T <= r - gamma);
  return on ? Relay::kOn : Relay::kOff;
}

int mode_of(Relay s_now, Relay s_next) {
  if (s_now == Relay::kOn) return s_next == Relay::kOn ? 1 : 2;
  return s_next == Relay::kOn ? 3 : 4;
}

OperatingMode operating_mode(int id) {
  switch (id) {
    case 1:
      return {1, Relay::kOn, Relay::kOn};
    case 2:
      return {2, Relay::kOn, Relay::kOff};
    case 3:
      return {3, Relay::kOff, Relay::kOn};
    case 4:
      return {4, Relay::kOff, Relay::kOff};
    default:
      throw std::invalid_argument("operating_mode: id must be 1..4");
  }
}

std::string to_string(const ThermostatVariant& variant) {
  switch (variant.kind) {
    case ThermostatVariant::Kind::kGdpHull:
      return "hull";
    case ThermostatVariant::Kind::kGdpBigM:
      return "bigm";
    case ThermostatVariant::Kind::kMilpBaseline:
      return "baseline";
  }
  return "unknown";
}

ThermostatGdp build_thermostat_gdp(const BuildingModel::State& x0, Relay s0, std::size_t N,
                                   const ThermostatParams& params, const BuildingModel& building) {
  if (N == 0) throw std::invalid_argument("build_thermostat_gdp: horizon must be at least 1");
  if (const auto problems = params.problems(); !problems.empty()) {
    throw std::invalid_argument("build_thermostat_gdp: " + problems.front());
  }
  ThermostatGdp out;
  GdpModel& g = out.model;
  ThermostatLayout& L = out.layout;
  L.horizon = N;
  const auto idx = [](std::size_t t) { return std::to_string(t); };

  for (std::size_t t = 0; t <= N; ++t) {
    std::array<std::size_t, 4> xt{};
    for (std::size_t k = 0; k < 4; ++k) {
      const std::string name = "x" + std::to_string(k + 1) + "_" + idx(t);
      const double lo = t == 0 ? x0[k] : kTemperatureMin;
      const double hi = t == 0 ? x0[k] : kTemperatureMax;
      xt[k] = g.add_variable(name, lo, hi).index;
    }
    L.x.push_back(xt);
  }
  for (std::size_t t = 0; t <= N; ++t) L.u.push_back(g.add_variable("u_" + idx(t), 0.0, params.u_max).index);
  for (std::size_t t = 0; t < N; ++t) {
    L.r.push_back(g.add_variable("r_" + idx(t), params.T_set - kSetpointBand, params.T_set + kSetpointBand).index);
  }
  for (std::size_t t = 1; t <= N; ++t) L.m.push_back(g.add_variable("m_" + idx(t), 0.0, kSlackMax).index);

  const auto X = [&](std::size_t t, std::size_t k) { return VarRef{L.x[t][k]}; };
  const auto U = [&](std::size_t t) { return VarRef{L.u[t]}; };
  const auto R = [&](std::size_t t) { return AffineExpr(VarRef{L.r[t]}); };
  const auto M = [&](std::size_t t) { return AffineExpr(VarRef{L.m[t - 1]}); };
  const auto T = [&](std::size_t t) {
    AffineExpr y;
    for (std::size_t k = 0; k < 4; ++k) y.add_term(X(t, k), building.C[k]);
    return y;
  };

  for (std::size_t t = 0; t < N; ++t) {
    for (std::size_t i = 0; i < 4; ++i) {
      AffineExpr rhs = building.B[i] * U(t);
      for (std::size_t k = 0; k < 4; ++k) rhs.add_term(X(t, k), building.A[i][k]);
      g.add_constraint(equal(X(t + 1, i), rhs));
    }
  }
  for (std::size_t t = 1; t <= N; ++t) {
    g.add_constraint(T(t) >= params.T_set - params.theta - M(t));
    g.add_constraint(T(t) <= params.T_set + params.theta + M(t));
  }

  for (std::size_t t = 0; t < N; ++t) {
    Disjunction d;
    d.name = "mode_" + idx(t);
    const double umax = params.u_max;
    const double gam = params.gamma;
    for (int id = 1; id <= 4; ++id) {
      const OperatingMode mode = operating_mode(id);
      Disjunct dj;
      dj.indicator_name = "delta" + std::to_string(id) + "_" + idx(t);
      switch (id) {
        case 1:
          dj.local_constraints.push_back(T(t) <= R(t) + gam);
          break;
        case 2:
          dj.local_constraints.push_back(T(t) >= R(t) + gam);
          break;
        case 3:
          dj.local_constraints.push_back(T(t) <= R(t) - gam);
          break;
        default:
          dj.local_constraints.push_back(T(t) >= R(t) - gam);
          break;
      }
      dj.local_constraints.push_back(equal(U(t), mode.s_now == Relay::kOn ? umax : 0.0));
      dj.local_constraints.push_back(equal(U(t + 1), mode.s_next == Relay::kOn ? umax : 0.0));
      d.disjuncts.push_back(std::move(dj));
    }
    L.mode_disjunction.push_back(g.add_disjunction(std::move(d)));
  }
  const std::size_t first = L.mode_disjunction.front();
  if (s0 == Relay::kOn) {
    g.add_clause({{g.literal(first, 0), g.literal(first, 1)}});
  } else {
    g.add_clause({{g.literal(first, 2), g.literal(first, 3)}});
  }

  for (std::size_t t = 0; t < N; ++t) g.objective.add_term(U(t), params.alpha);
  for (std::size_t t = 1; t <= N; ++t) g.objective.add_term(VarRef{L.m[t - 1]}, params.beta);
  return out;
}

MilpProblem reformulate_thermostat(const GdpModel& model, const ThermostatVariant& variant) {
  switch (variant.kind) {
    case ThermostatVariant::Kind::kGdpHull:
      return to_hull(model);
    case ThermostatVariant::Kind::kGdpBigM:
      return to_bigm(model, variant.big_m ? BigMStrategy::fixed(*variant.big_m) : BigMStrategy::from_bounds());
    case ThermostatVariant::Kind::kMilpBaseline:
      return to_bigm(model, BigMStrategy::fixed(variant.big_m.value_or(1e4)));
  }
  throw std::invalid_argument("reformulate_thermostat: unknown variant");
}

MilpProblem build_thermostat_mpc(const BuildingModel::State& x0, Relay s0, std::size_t N,
                                 const ThermostatParams& params, const ThermostatVariant& variant,
                                 const BuildingModel& building) {
  return reformulate_thermostat(build_thermostat_gdp(x0, s0, N, params, building).model, variant);
}

}  // namespace gdpmpc
