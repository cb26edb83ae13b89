#pragma once

#include <cstdint>
#include <ostream>
#include <string>
#include <vector>

#include "feedplan/cli/config.hpp"

namespace feedplan::cli {

struct SweepCell {
  double beta_E = 0.0;
  double beta_C = 0.0;
  double gamma_C = 0.0;
};

/// Row-major over beta_E, then beta_C, then gamma_C. With an empty gamma_C
/// grid every cell uses gamma_C = beta_C.
std::vector<SweepCell> sweep_cells(const SweepConfig& s);

/// Geometry and planner seeds depend on (base seed, scenario index) only.
/// Every cell replays the same scenarios with the same planner stream, so
/// differences between cells come from the weights rather than sampling noise.
std::uint64_t sweep_geometry_seed(std::uint64_t base, int scenario);
std::uint64_t sweep_plan_seed(std::uint64_t base, int scenario);

sample::Scenario sweep_scenario(const ScenarioConfig& cfg, int scenario);
/// Effective config of one sweep run: the cell weights and the plan seed.
ScenarioConfig sweep_run_config(const ScenarioConfig& cfg, const SweepCell& cell, int scenario);

struct SweepSample {
  bool feasible = false;
  double efficiency = 0.0;    // C_E at the selected goal
  double goal_comfort = 0.0;  // C_C at the selected goal
  double path_comfort = 0.0;  // C_C averaged over the selected waypoints
};

SweepSample run_sweep_sample(const ScenarioConfig& cfg, const SweepCell& cell, int scenario);

struct SweepRow {
  int cell = 0;
  SweepCell weights;
  int scenarios = 0;
  int feasible = 0;
  double comfort_mean = 0.0;  // path-mean comfort
  double comfort_std = 0.0;
  double goal_comfort_mean = 0.0;
  double goal_comfort_std = 0.0;
  double efficiency_mean = 0.0;
  double efficiency_std = 0.0;
  std::string flag;  // "ok", "partial" or "infeasible"
};

/// Means and sample standard deviations over feasible scenarios; NaN when a
/// cell has none.
SweepRow summarize_cell(int cell, const SweepCell& weights, const std::vector<SweepSample>& samples);

std::vector<SweepRow> run_sweep(const ScenarioConfig& cfg, int workers);

/// Fixed column order, 17 significant digits.
void write_sweep_csv(std::ostream& out, const std::vector<SweepRow>& rows);

}  // namespace feedplan::cli
