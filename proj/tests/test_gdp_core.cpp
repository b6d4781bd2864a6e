#include <doctest.h>

#include <cmath>
#include <stdexcept>
#include <vector>

#include "gdpmpc/brute_force.hpp"
#include "gdpmpc/gdp_model.hpp"
#include "gdpmpc/reformulate.hpp"
#include "gdpmpc/selftest.hpp"
#include "gdpmpc/thermostat.hpp"

using namespace gdpmpc;

namespace {

// {D1: y >= 1 | D2: y >= 2}, min y, y in [0, 10].
GdpModel two_threshold_model() {
  GdpModel m;
  const VarRef y = m.add_variable("y", 0.0, 10.0);
  m.objective = AffineExpr(y);
  Disjunction d;
  d.disjuncts.push_back({"a1", {AffineExpr(y) >= 1.0}, 0.0});
  d.disjuncts.push_back({"a2", {AffineExpr(y) >= 2.0}, 0.0});
  m.add_disjunction(std::move(d));
  return m;
}

bool has_kind(const std::vector<Diagnostic>& ds, DiagnosticKind kind) {
  for (const Diagnostic& d : ds)
    if (d.kind == kind) return true;
  return false;
}

}  // namespace

TEST_CASE("validate accepts a plain bounded model") {
  GdpModel m;
  m.add_variable("y", 0.0, 1.0);
  CHECK(validate(m).empty());
}

TEST_CASE("validate reports an undeclared variable") {
  GdpModel m;
  m.add_variable("a", 0.0, 1.0);
  m.add_variable("b", 0.0, 1.0);
  m.add_constraint(AffineExpr(VarRef{5}) <= 1.0);
  const auto ds = validate(m);
  REQUIRE(ds.size() == 1);
  CHECK(ds[0].kind == DiagnosticKind::kUndeclaredVariable);
}

TEST_CASE("validate reports an infinite bound") {
  GdpModel m;
  m.add_variable("y", -INFINITY, 1.0);
  const auto ds = validate(m);
  REQUIRE(ds.size() == 1);
  CHECK(ds[0].kind == DiagnosticKind::kUnboundedVariable);
  CHECK(ds[0].message.find("unbounded variable forbids hull reformulation") != std::string::npos);
}

TEST_CASE("validate reports each broken invariant") {
  GdpModel m;
  const VarRef y = m.add_variable("y", 2.0, 1.0);
  m.objective = AffineExpr(y) * NAN;
  Disjunction empty;
  empty.name = "empty";
  m.disjunctions.push_back(empty);
  Disjunction dup;
  dup.disjuncts.push_back({"a", {}, INFINITY});
  dup.disjuncts.push_back({"a", {}, 0.0});
  m.disjunctions.push_back(dup);
  m.add_clause({});
  m.add_clause({{m.literal(1, 0), m.literal(1, 0)}});
  m.add_clause({{m.literal(7, 0)}});
  const auto ds = validate(m);
  CHECK(has_kind(ds, DiagnosticKind::kInvertedBounds));
  CHECK(has_kind(ds, DiagnosticKind::kNonFiniteCoefficient));
  CHECK(has_kind(ds, DiagnosticKind::kEmptyDisjunction));
  CHECK(has_kind(ds, DiagnosticKind::kDuplicateIndicatorName));
  CHECK(has_kind(ds, DiagnosticKind::kNonFiniteCost));
  CHECK(has_kind(ds, DiagnosticKind::kEmptyClause));
  CHECK(has_kind(ds, DiagnosticKind::kDuplicateLiteral));
  CHECK(has_kind(ds, DiagnosticKind::kUnknownIndicator));
}

TEST_CASE("evaluate_assignment follows the selected disjunct") {
  const GdpModel m = two_threshold_model();
  const std::vector<double> y{1.5};
  const auto first = evaluate_assignment(m, std::vector<std::size_t>{0}, y);
  CHECK(first.feasible);
  REQUIRE(first.objective.has_value());
  CHECK(*first.objective == doctest::Approx(1.5));
  const auto second = evaluate_assignment(m, std::vector<std::size_t>{1}, y);
  CHECK_FALSE(second.feasible);
  CHECK_FALSE(second.objective.has_value());
}

TEST_CASE("evaluate_assignment applies clauses and fixed costs") {
  GdpModel m = two_threshold_model();
  m.disjunctions[0].disjuncts[1].fixed_cost = 4.0;
  const std::vector<double> y{2.5};
  const auto picked = evaluate_assignment(m, std::vector<std::size_t>{1}, y);
  REQUIRE(picked.feasible);
  CHECK(*picked.objective == doctest::Approx(6.5));

  m.add_clause({{!m.literal(0, 0)}});
  CHECK_FALSE(evaluate_assignment(m, std::vector<std::size_t>{0}, y).feasible);
  CHECK(evaluate_assignment(m, std::vector<std::size_t>{1}, y).feasible);
}

TEST_CASE("evaluate_assignment tolerance and bounds") {
  const GdpModel m = two_threshold_model();
  CHECK(evaluate_assignment(m, std::vector<std::size_t>{0}, std::vector<double>{1.0 - 5e-8}).feasible);
  CHECK_FALSE(evaluate_assignment(m, std::vector<std::size_t>{0}, std::vector<double>{1.0 - 5e-7}).feasible);
  CHECK_FALSE(evaluate_assignment(m, std::vector<std::size_t>{0}, std::vector<double>{11.0}).feasible);
}

TEST_CASE("evaluate_assignment rejects mismatched dimensions") {
  const GdpModel m = two_threshold_model();
  CHECK_THROWS_AS(evaluate_assignment(m, std::vector<std::size_t>{0}, std::vector<double>{1.0, 2.0}),
                  std::invalid_argument);
  CHECK_THROWS_AS(evaluate_assignment(m, std::vector<std::size_t>{}, std::vector<double>{1.0}),
                  std::invalid_argument);
  CHECK_THROWS_AS(evaluate_assignment(m, std::vector<std::size_t>{2}, std::vector<double>{1.0}),
                  std::invalid_argument);
}

TEST_CASE("brute force on the two-threshold model") {
  const BruteForceResult r = brute_force_solve(two_threshold_model());
  CHECK(r.status == SolveStatus::kOptimal);
  CHECK(r.objective == doctest::Approx(1.0));
  CHECK(r.selection == Selection{0});
  CHECK(r.combinations == 2);
  CHECK(r.lps_solved == 2);
}

TEST_CASE("brute force reports infeasible when the only consistent selection fails") {
  GdpModel m = two_threshold_model();
  m.variables[0].upper = 1.5;
  m.add_clause({{!m.literal(0, 0)}});  // forces y >= 2 while y <= 1.5
  const BruteForceResult r = brute_force_solve(m);
  CHECK(r.status == SolveStatus::kInfeasible);
  CHECK(r.lps_solved == 1);
}

TEST_CASE("brute force refuses oversized enumerations") {
  GdpModel m;
  const VarRef y = m.add_variable("y", 0.0, 1.0);
  for (int k = 0; k < 7; ++k) {
    Disjunction d;
    for (int i = 0; i < 4; ++i) d.disjuncts.push_back({"a" + std::to_string(i), {AffineExpr(y) >= 0.0}, 0.0});
    m.add_disjunction(std::move(d));
  }
  CHECK_THROWS_AS(brute_force_solve(m), std::length_error);  // 4^7 > 4096
  BruteForceOptions wide;
  wide.combination_cap = 1 << 14;
  CHECK(brute_force_solve(m, wide).status == SolveStatus::kOptimal);
}

TEST_CASE("valid random models reformulate and their solutions lift into both MILPs") {
  std::size_t checked = 0;
  for (std::uint64_t seed = 500; seed < 650; ++seed) {
    const GdpModel m = random_gdp(seed);
    REQUIRE(validate(m).empty());
    const MilpProblem bigm = to_bigm(m, BigMStrategy::from_bounds());
    const MilpProblem bigm_fixed = to_bigm(m, BigMStrategy::fixed(1e4));
    const MilpProblem hull = to_hull(m);
    const BruteForceResult r = brute_force_solve(m);
    if (r.status != SolveStatus::kOptimal) continue;
    const auto eval = evaluate_assignment(m, r.selection, r.point);
    REQUIRE(eval.feasible);
    CHECK(*eval.objective == doctest::Approx(r.objective).epsilon(1e-9));
    for (const MilpProblem* p : {&bigm, &bigm_fixed, &hull}) {
      const std::vector<double> lifted = lift_point(*p, r.selection, r.point);
      CHECK(check_point(*p, lifted) <= 1e-6);
      CHECK(integrality_violation(*p, lifted) == 0.0);
      CHECK(p->objective_value(lifted) == doctest::Approx(r.objective).epsilon(1e-9));
    }
    ++checked;
  }
  CHECK(checked >= 50);
}

TEST_CASE("thermostat GDP is valid") {
  const ThermostatGdp g = build_thermostat_gdp({20.5, 20.5, 21.0, 20.2}, Relay::kOff, 5, ThermostatParams{});
  CHECK(validate(g.model).empty());
}
