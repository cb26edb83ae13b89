#include "feedplan/cli/sweep.hpp"

#include <cmath>
#include <cstdio>
#include <limits>

#include "feedplan/cli/worker_pool.hpp"
#include "feedplan/seed.hpp"

namespace feedplan::cli {

namespace {

constexpr std::uint64_t kGeometryStream = 20;
constexpr std::uint64_t kPlanStream = 21;

std::string csv_number(double v) {
  if (std::isnan(v)) return "NaN";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

}  // namespace

std::vector<SweepCell> sweep_cells(const SweepConfig& s) {
  std::vector<SweepCell> cells;
  for (double be : s.beta_E)
    for (double bc : s.beta_C) {
      if (s.gamma_C.empty()) {
        cells.push_back({be, bc, bc});
      } else {
        for (double gc : s.gamma_C) cells.push_back({be, bc, gc});
      }
    }
  return cells;
}

std::uint64_t sweep_geometry_seed(std::uint64_t base, int scenario) {
  return derive_seed(base, kGeometryStream, static_cast<std::uint64_t>(scenario));
}

std::uint64_t sweep_plan_seed(std::uint64_t base, int scenario) {
  return derive_seed(base, kPlanStream, static_cast<std::uint64_t>(scenario));
}

sample::Scenario sweep_scenario(const ScenarioConfig& cfg, int scenario) {
  return sample::random_scenario(sweep_geometry_seed(cfg.sweep.base_seed, scenario), cfg.random_spec());
}

ScenarioConfig sweep_run_config(const ScenarioConfig& cfg, const SweepCell& cell, int scenario) {
  ScenarioConfig c = cfg;
  c.weights.beta_E = cell.beta_E;
  c.weights.beta_C = cell.beta_C;
  c.weights.gamma_C = cell.gamma_C;
  c.seed = sweep_plan_seed(cfg.sweep.base_seed, scenario);
  return c;
}

SweepSample run_sweep_sample(const ScenarioConfig& cfg, const SweepCell& cell, int scenario) {
  const ScenarioConfig c = sweep_run_config(cfg, cell, scenario);
  const sample::Scenario sc = sweep_scenario(cfg, scenario);
  SweepSample out;
  try {
    const plan::PlanOutcome o = plan::plan_bite(sc, c.pipeline());
    if (!o.selected) return out;
    const costs::CostModel model(sc.scene, c.weights, c.rays);
    out.feasible = true;
    out.efficiency = o.selected->goal_terms.efficiency;
    out.goal_comfort = o.selected->goal_terms.comfort;
    out.path_comfort = plan::path_mean_comfort(*o.selected, model);
  } catch (const sample::InfeasibleGoalError&) {
  } catch (const InvalidStartError&) {
  }
  return out;
}

SweepRow summarize_cell(int cell, const SweepCell& weights, const std::vector<SweepSample>& samples) {
  SweepRow row;
  row.cell = cell;
  row.weights = weights;
  row.scenarios = static_cast<int>(samples.size());

  auto stats = [&](double SweepSample::*field, double& mean, double& sd) {
    double sum = 0.0;
    int n = 0;
    for (const auto& s : samples)
      if (s.feasible) {
        sum += s.*field;
        ++n;
      }
    if (n == 0) {
      mean = sd = std::numeric_limits<double>::quiet_NaN();
      return n;
    }
    mean = sum / n;
    double ss = 0.0;
    for (const auto& s : samples)
      if (s.feasible) ss += (s.*field - mean) * (s.*field - mean);
    sd = n > 1 ? std::sqrt(ss / (n - 1)) : 0.0;
    return n;
  };
  row.feasible = stats(&SweepSample::path_comfort, row.comfort_mean, row.comfort_std);
  stats(&SweepSample::goal_comfort, row.goal_comfort_mean, row.goal_comfort_std);
  stats(&SweepSample::efficiency, row.efficiency_mean, row.efficiency_std);
  row.flag = row.feasible == 0 ? "infeasible" : row.feasible < row.scenarios ? "partial" : "ok";
  return row;
}

std::vector<SweepRow> run_sweep(const ScenarioConfig& cfg, int workers) {
  const std::vector<SweepCell> cells = sweep_cells(cfg.sweep);
  const std::size_t per = static_cast<std::size_t>(cfg.sweep.scenarios_per_cell);
  const auto samples = parallel_map<SweepSample>(cells.size() * per, workers, [&](std::size_t job) {
    const int cell = static_cast<int>(job / per);
    return run_sweep_sample(cfg, cells[cell], static_cast<int>(job % per));
  });

  std::vector<SweepRow> rows;
  for (std::size_t c = 0; c < cells.size(); ++c) {
    const std::vector<SweepSample> mine(samples.begin() + c * per, samples.begin() + (c + 1) * per);
    rows.push_back(summarize_cell(static_cast<int>(c), cells[c], mine));
  }
  return rows;
}

void write_sweep_csv(std::ostream& out, const std::vector<SweepRow>& rows) {
  out << "cell,beta_E,beta_C,gamma_C,scenarios,feasible,comfort_mean,comfort_std,goal_comfort_mean,"
         "goal_comfort_std,efficiency_mean,efficiency_std,flag\n";
  for (const SweepRow& r : rows) {
    out << r.cell << ',' << csv_number(r.weights.beta_E) << ',' << csv_number(r.weights.beta_C) << ','
        << csv_number(r.weights.gamma_C) << ',' << r.scenarios << ',' << r.feasible << ',' << csv_number(r.comfort_mean)
        << ',' << csv_number(r.comfort_std) << ',' << csv_number(r.goal_comfort_mean) << ','
        << csv_number(r.goal_comfort_std) << ',' << csv_number(r.efficiency_mean) << ','
        << csv_number(r.efficiency_std) << ',' << r.flag << '\n';
  }
}

}  // namespace feedplan::cli
