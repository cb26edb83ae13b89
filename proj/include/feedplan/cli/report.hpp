#pragma once

#include <string>

#include "json.hpp"

#include "feedplan/bite/bite.hpp"
#include "feedplan/cli/config.hpp"

namespace feedplan::cli {

using Json = nlohmann::ordered_json;

/// [x, y, z, rx, ry, rz]: translation and rotation vector.
Json pose_json(const Pose& p);

/// Cost breakdown of one trajectory. `distance` is the plain pose-distance
/// length; `path_cost` adds the comfort premium of comfort-aware modes.
Json trajectory_json(const plan::Trajectory& traj, const costs::CostModel& model, bool with_waypoints);

/// Everything but wall-clock time lives outside the "timings" object.
Json plan_report(const ScenarioConfig& cfg, const sample::Scenario& scenario, const plan::PlanOutcome& outcome);
Json multibite_report(const ScenarioConfig& cfg, const sample::Scenario& scenario, const bite::MultibiteResult& result,
                      double elapsed_s);

/// Pretty-printed with a trailing newline; drops "timings" when asked.
std::string dump_report(Json report, bool with_timings);

}  // namespace feedplan::cli
