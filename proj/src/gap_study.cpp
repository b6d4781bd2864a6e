#include "gdpmpc/gap_study.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <exception>
#include <random>
#include <stdexcept>
#include <thread>

#include <json.hpp>

namespace gdpmpc {

void GapStudyConfig::check() const {
  if (instance_count == 0) throw std::invalid_argument("gap study: instance_count must be at least 1");
  if (horizons.empty()) throw std::invalid_argument("gap study: no horizons given");
  for (std::size_t n : horizons)
    if (n == 0) throw std::invalid_argument("gap study: horizons must be at least 1");
  if (node_limit == 0) throw std::invalid_argument("gap study: node_limit must be at least 1");
  if (optimal_node_limit == 0) throw std::invalid_argument("gap study: optimal_node_limit must be at least 1");
  if (!(x0_min <= x0_max)) throw std::invalid_argument("gap study: x0 range is empty");
  if (!(big_m > 0.0)) throw std::invalid_argument("gap study: big_m must be positive");
  if (const auto problems = params.problems(); !problems.empty())
    throw std::invalid_argument("gap study: " + problems.front());
}

std::vector<BuildingModel::State> sample_initial_states(const GapStudyConfig& config) {
  std::mt19937_64 rng(config.seed);
  const double width = config.x0_max - config.x0_min;
  std::vector<BuildingModel::State> out(config.instance_count);
  for (auto& x : out) {
    for (double& v : x) {
      const double unit = static_cast<double>(rng() >> 11) * 0x1.0p-53;
      v = config.x0_min + width * unit;
    }
  }
  return out;
}

const GapAggregate& GapStudyReport::aggregate(const std::string& variant, std::size_t horizon) const {
  for (const GapAggregate& a : aggregates)
    if (a.variant == variant && a.horizon == horizon) return a;
  throw std::out_of_range("gap study: no aggregate for " + variant + " at N=" + std::to_string(horizon));
}

namespace {

std::size_t worker_count(const GapStudyConfig& config, std::size_t jobs) {
  std::size_t n = config.threads != 0 ? config.threads : std::max(1u, std::thread::hardware_concurrency());
  if (const char* env = std::getenv("SIM_THREADS")) {
    char* end = nullptr;
    const long cap = std::strtol(env, &end, 10);
    if (end != env && cap >= 1) n = std::min(n, static_cast<std::size_t>(cap));
  }
  return std::clamp<std::size_t>(n, 1, jobs);
}

VariantRun capped_run(const MilpProblem& problem, std::size_t node_limit, std::optional<double> z_star) {
  SolveOptions options;
  options.node_limit = node_limit;
  const SolveResult r = solve(problem, options);
  VariantRun run;
  run.status = r.status;
  run.best_bound = r.best_bound;
  run.nodes = r.nodes_explored;
  if (r.has_incumbent()) {
    run.incumbent = r.objective;
    if (z_star) {
      run.gap_percent = 100.0 * (r.objective - *z_star) / std::max(std::abs(*z_star), 1e-12);
      run.scored_gap_percent = std::min(*run.gap_percent, 100.0);
    }
  }
  return run;
}

GapInstance run_instance(const GapStudyConfig& config, std::size_t index, std::size_t horizon,
                         const BuildingModel::State& x0) {
  GapInstance inst;
  inst.index = index;
  inst.horizon = horizon;
  inst.x0 = x0;
  const ThermostatGdp gdp = build_thermostat_gdp(x0, config.params.s0, horizon, config.params, config.building);
  const MilpProblem hull = reformulate_thermostat(gdp.model, ThermostatVariant::gdp_hull());
  const MilpProblem bigm = reformulate_thermostat(gdp.model, ThermostatVariant::gdp_bigm(config.big_m));

  SolveOptions reference;
  reference.node_limit = config.optimal_node_limit;
  const SolveResult ref = solve(hull, reference);
  inst.reference_nodes = ref.nodes_explored;
  if (ref.status == SolveStatus::kOptimal) {
    inst.z_star = ref.objective;
    inst.included = true;
  } else {
    inst.diagnostic = std::string("reference solve ended ") + to_string(ref.status) + " after " +
                      std::to_string(ref.nodes_explored) + " nodes";
  }
  inst.hull = capped_run(hull, config.node_limit, inst.z_star);
  inst.bigm = capped_run(bigm, config.node_limit, inst.z_star);
  return inst;
}

GapAggregate summarize(const std::vector<GapInstance>& instances, const std::string& variant,
                       std::size_t horizon) {
  GapAggregate a;
  a.variant = variant;
  a.horizon = horizon;
  double sum = 0.0;
  double sum_both = 0.0;
  for (const GapInstance& inst : instances) {
    if (inst.horizon != horizon || !inst.included) continue;
    const VariantRun& run = variant == "hull" ? inst.hull : inst.bigm;
    ++a.included;
    if (run.incumbent) ++a.with_incumbent;
    sum += run.scored_gap_percent;
    a.max_gap_percent = std::max(a.max_gap_percent, run.scored_gap_percent);
    if (inst.hull.incumbent && inst.bigm.incumbent) {
      ++a.both_incumbent;
      sum_both += *run.gap_percent;
    }
  }
  if (a.included > 0) a.mean_gap_percent = sum / static_cast<double>(a.included);
  if (a.both_incumbent > 0) a.mean_gap_both_percent = sum_both / static_cast<double>(a.both_incumbent);
  return a;
}

}  // namespace

GapStudyReport run_gap_study(const GapStudyConfig& config) {
  config.check();
  GapStudyReport report;
  report.config = config;
  const std::vector<BuildingModel::State> states = sample_initial_states(config);
  const std::size_t jobs = states.size() * config.horizons.size();
  report.instances.resize(jobs);

  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::atomic<bool> failed{false};
  const auto work = [&] {
    for (std::size_t job = next++; job < jobs && !failed; job = next++) {
      const std::size_t h = job / states.size();
      const std::size_t i = job % states.size();
      try {
        report.instances[job] = run_instance(config, i, config.horizons[h], states[i]);
      } catch (...) {
        if (!failed.exchange(true)) failure = std::current_exception();
      }
    }
  };
  const std::size_t workers = worker_count(config, jobs);
  if (workers == 1) {
    work();
  } else {
    std::vector<std::thread> pool;
    for (std::size_t w = 0; w < workers; ++w) pool.emplace_back(work);
    for (std::thread& t : pool) t.join();
  }
  if (failure) std::rethrow_exception(failure);

  for (std::size_t n : config.horizons) {
    report.aggregates.push_back(summarize(report.instances, "hull", n));
    report.aggregates.push_back(summarize(report.instances, "bigm", n));
  }
  return report;
}

namespace {

using Json = nlohmann::ordered_json;

Json optional_number(const std::optional<double>& v) { return v ? Json(*v) : Json(nullptr); }

Json finite_or_null(double v) { return std::isfinite(v) ? Json(v) : Json(nullptr); }

Json run_json(const VariantRun& run) {
  Json j;
  j["status"] = to_string(run.status);
  j["incumbent"] = optional_number(run.incumbent);
  j["best_bound"] = finite_or_null(run.best_bound);
  j["nodes"] = run.nodes;
  j["gap_percent"] = optional_number(run.gap_percent);
  j["scored_gap_percent"] = run.scored_gap_percent;
  return j;
}

}  // namespace

std::string gap_report_json(const GapStudyReport& report) {
  const GapStudyConfig& c = report.config;
  Json root;
  Json cfg;
  cfg["seed"] = c.seed;
  cfg["instance_count"] = c.instance_count;
  cfg["horizons"] = c.horizons;
  cfg["node_limit"] = c.node_limit;
  cfg["optimal_node_limit"] = c.optimal_node_limit;
  cfg["x0_range"] = {c.x0_min, c.x0_max};
  cfg["big_m"] = c.big_m;
  cfg["s0"] = to_string(c.params.s0);
  cfg["T_set"] = c.params.T_set;
  cfg["theta"] = c.params.theta;
  cfg["gamma"] = c.params.gamma;
  cfg["u_max"] = c.params.u_max;
  cfg["alpha"] = c.params.alpha;
  cfg["beta"] = c.params.beta;
  cfg["gap_formula"] = "100 * (z_tilde - z_star) / max(|z_star|, 1e-12); scored value capped at 100, 100 without incumbent";
  root["config"] = std::move(cfg);

  Json aggregates = Json::array();
  for (const GapAggregate& a : report.aggregates) {
    Json j;
    j["variant"] = a.variant;
    j["N"] = a.horizon;
    j["included"] = a.included;
    j["with_incumbent"] = a.with_incumbent;
    j["mean_gap_percent"] = a.mean_gap_percent;
    j["max_gap_percent"] = a.max_gap_percent;
    j["both_incumbent"] = a.both_incumbent;
    j["mean_gap_both_percent"] = optional_number(a.mean_gap_both_percent);
    aggregates.push_back(std::move(j));
  }
  root["aggregates"] = std::move(aggregates);

  Json instances = Json::array();
  for (const GapInstance& inst : report.instances) {
    Json j;
    j["index"] = inst.index;
    j["N"] = inst.horizon;
    j["x0"] = inst.x0;
    j["included"] = inst.included;
    if (!inst.diagnostic.empty()) j["diagnostic"] = inst.diagnostic;
    j["z_star"] = optional_number(inst.z_star);
    j["reference_nodes"] = inst.reference_nodes;
    j["hull"] = run_json(inst.hull);
    j["bigm"] = run_json(inst.bigm);
    instances.push_back(std::move(j));
  }
  root["instances"] = std::move(instances);
  return root.dump(2) + "\n";
}

}  // namespace gdpmpc
