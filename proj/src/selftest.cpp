#include "gdpmpc/selftest.hpp"

#include <cmath>
#include <random>
#include <stdexcept>

#include "gdpmpc/brute_force.hpp"
#include "gdpmpc/reformulate.hpp"
#include "gdpmpc/thermostat.hpp"

namespace gdpmpc {

namespace {

class Draw {
 public:
  explicit Draw(std::uint64_t seed) : rng_(seed) {}

  // Uniform integer in [lo, hi].
  long integer(long lo, long hi) {
    return lo + static_cast<long>(rng_() % static_cast<std::uint64_t>(hi - lo + 1));
  }
  std::size_t count(std::size_t lo, std::size_t hi) { return static_cast<std::size_t>(integer(static_cast<long>(lo), static_cast<long>(hi))); }
  bool chance(int percent) { return integer(0, 99) < percent; }

 private:
  std::mt19937_64 rng_;
};

// Random row over 1..3 variables with a rhs that keeps `anchor` feasible.
LinConstraint random_row(Draw& draw, std::size_t n, const std::vector<double>& anchor, bool allow_eq) {
  AffineExpr lhs;
  const std::size_t terms = draw.count(1, std::min<std::size_t>(3, n));
  for (std::size_t k = 0; k < terms; ++k) {
    long coef = draw.integer(-3, 3);
    if (coef == 0) coef = 1;
    lhs.add_term(VarRef{draw.count(0, n - 1)}, static_cast<double>(coef));
  }
  double at_anchor = 0.0;
  for (const auto& [var, coef] : lhs.terms()) at_anchor += coef * anchor[var.index];
  const int kind = draw.integer(0, allow_eq ? 9 : 7);
  const double slack = static_cast<double>(draw.integer(0, 3));
  if (kind < 4) return lhs <= at_anchor + slack;
  if (kind < 8) return lhs >= at_anchor - slack;
  return equal(lhs, AffineExpr(at_anchor));
}

}  // namespace

GdpModel random_gdp(std::uint64_t seed, const RandomGdpOptions& options) {
  Draw draw(seed);
  GdpModel model;
  const std::size_t n = draw.count(1, options.max_variables);
  std::vector<double> center(n);
  for (std::size_t j = 0; j < n; ++j) {
    const double lo = static_cast<double>(draw.integer(-8, 2));
    const double hi = lo + static_cast<double>(draw.integer(1, 12));
    model.add_variable("y" + std::to_string(j), lo, hi);
    model.objective.add_term(VarRef{j}, static_cast<double>(draw.integer(-4, 4)));
    center[j] = std::floor((lo + hi) / 2.0);
  }
  const auto random_point = [&] {
    std::vector<double> p(n);
    for (std::size_t j = 0; j < n; ++j) {
      p[j] = static_cast<double>(draw.integer(static_cast<long>(model.variables[j].lower),
                                              static_cast<long>(model.variables[j].upper)));
    }
    return p;
  };

  const std::size_t globals = draw.count(0, options.max_global_rows);
  for (std::size_t g = 0; g < globals; ++g) model.add_constraint(random_row(draw, n, center, false));

  const std::size_t disjunctions = draw.count(1, options.max_disjunctions);
  for (std::size_t k = 0; k < disjunctions; ++k) {
    Disjunction d;
    d.name = "D" + std::to_string(k);
    const std::size_t count = draw.count(1, options.max_disjuncts);
    for (std::size_t i = 0; i < count; ++i) {
      Disjunct dj;
      dj.indicator_name = "a" + std::to_string(k) + "_" + std::to_string(i);
      dj.fixed_cost = static_cast<double>(draw.integer(0, 3));
      const std::vector<double> anchor = random_point();
      const std::size_t rows = draw.count(1, options.max_local_rows);
      for (std::size_t r = 0; r < rows; ++r) dj.local_constraints.push_back(random_row(draw, n, anchor, true));
      d.disjuncts.push_back(std::move(dj));
    }
    model.add_disjunction(std::move(d));
  }

  const std::size_t clauses = draw.count(0, options.max_clauses);
  for (std::size_t c = 0; c < clauses; ++c) {
    CnfClause clause;
    const std::size_t width = draw.count(1, std::min<std::size_t>(3, disjunctions));
    std::vector<char> used(disjunctions, 0);
    for (std::size_t l = 0; l < width; ++l) {
      const std::size_t k = draw.count(0, disjunctions - 1);
      if (used[k]) continue;
      used[k] = 1;
      const std::size_t i = draw.count(0, model.disjunctions[k].disjuncts.size() - 1);
      const Literal lit = model.literal(k, i);
      clause.literals.push_back(draw.chance(40) ? !lit : lit);
    }
    model.add_clause(std::move(clause));
  }
  return model;
}

std::vector<GdpModel> thermostat_oracle_models() {
  const ThermostatParams params;
  const std::vector<std::pair<BuildingModel::State, Relay>> starts = {
      {{20.3, 20.8, 21.6, 19.7}, Relay::kOff},
      {{21.9, 21.2, 20.4, 22.4}, Relay::kOn},
      {{19.4, 19.9, 21.1, 20.05}, Relay::kOff},
  };
  std::vector<GdpModel> out;
  for (const auto& [x0, s0] : starts) {
    for (std::size_t n = 1; n <= 3; ++n) out.push_back(build_thermostat_gdp(x0, s0, n, params).model);
  }
  return out;
}

namespace {

bool same_outcome(SolveStatus a, double za, SolveStatus b, double zb, double tol) {
  const bool fa = a == SolveStatus::kOptimal;
  const bool fb = b == SolveStatus::kOptimal;
  if (fa != fb) return false;
  if (!fa) return a == b;
  return std::abs(za - zb) <= tol;
}

OracleCase oracle_case(const std::string& name, const GdpModel& model, double tol) {
  OracleCase c;
  c.name = name;
  const BruteForceResult brute = brute_force_solve(model);
  c.brute = brute.status;
  c.brute_objective = brute.objective;

  SolveOptions options;
  options.rel_gap_tol = 1e-12;
  const SolveResult bigm = solve(to_bigm(model, BigMStrategy::from_bounds()), options);
  const SolveResult fixed = solve(to_bigm(model, BigMStrategy::fixed(1e4)), options);
  const SolveResult hull = solve(to_hull(model), options);
  c.bigm = bigm.status;
  c.bigm_objective = bigm.objective;
  c.bigm_fixed = fixed.status;
  c.bigm_fixed_objective = fixed.objective;
  c.hull = hull.status;
  c.hull_objective = hull.objective;
  c.agree = same_outcome(c.brute, c.brute_objective, c.bigm, c.bigm_objective, tol) &&
            same_outcome(c.brute, c.brute_objective, c.bigm_fixed, c.bigm_fixed_objective, tol) &&
            same_outcome(c.brute, c.brute_objective, c.hull, c.hull_objective, tol);
  return c;
}

}  // namespace

OracleSuiteResult run_oracle_suite(std::size_t random_count, std::uint64_t seed, double tolerance) {
  OracleSuiteResult result;
  for (std::size_t k = 0; k < random_count; ++k) {
    const OracleCase c = oracle_case("random seed " + std::to_string(seed + k), random_gdp(seed + k), tolerance);
    ++result.random_instances;
    if (c.brute == SolveStatus::kOptimal) ++result.feasible_instances;
    result.cases.push_back(c);
  }
  const std::vector<GdpModel> thermostat = thermostat_oracle_models();
  for (std::size_t k = 0; k < thermostat.size(); ++k) {
    const std::size_t n = thermostat[k].disjunctions.size();
    result.cases.push_back(
        oracle_case("thermostat start " + std::to_string(k / 3) + " N=" + std::to_string(n), thermostat[k], tolerance));
  }
  for (const OracleCase& c : result.cases)
    if (!c.agree) ++result.mismatches;
  return result;
}

namespace {

// An infeasible relaxation bounds the minimum by +inf.
double bound_or_infinity(const MilpProblem& problem) {
  const LpResult lp = solve_lp(problem);
  if (lp.status == LpStatus::kInfeasible) return kInf;
  if (lp.status != LpStatus::kOptimal) throw std::runtime_error(std::string("relaxation ended ") + to_string(lp.status));
  return lp.objective;
}

}  // namespace

TightnessSuiteResult run_tightness_suite(std::size_t random_count, std::uint64_t seed) {
  TightnessSuiteResult result;
  const auto add = [&](const std::string& name, const GdpModel& model) {
    TightnessCase c;
    c.name = name;
    c.hull_bound = bound_or_infinity(to_hull(model));
    c.bigm_bound = bound_or_infinity(to_bigm(model, BigMStrategy::fixed(1e4)));
    if (c.hull_bound == kInf && c.bigm_bound == kInf) ++result.both_infeasible;
    if (c.hull_bound < c.bigm_bound - 1e-9) ++result.weak_violations;
    if (c.hull_bound > c.bigm_bound + 1e-6) ++result.strict_improvements;  // inf > finite counts
    result.cases.push_back(c);
  };
  for (std::size_t k = 0; k < random_count; ++k) add("random seed " + std::to_string(seed + k), random_gdp(seed + k));
  const std::vector<GdpModel> thermostat = thermostat_oracle_models();
  for (std::size_t k = 0; k < thermostat.size(); ++k) add("thermostat " + std::to_string(k), thermostat[k]);
  return result;
}

}  // namespace gdpmpc
