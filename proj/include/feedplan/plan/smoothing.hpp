#pragma once

#include <cstdint>

#include "feedplan/plan/hbirrt.hpp"

namespace feedplan::plan {

/// Random shortcutting. Each iteration picks two waypoints at least two apart
/// and replaces the stretch between them with a straight edge, re-discretized
/// at step_eps. The shortcut is kept only if every new edge is collision free
/// at edge_check_resolution and its cost does not exceed the stretch it
/// replaces. Endpoints never move and the total cost never increases.
Trajectory smooth_path(const Trajectory& traj, const costs::CostModel& model, const PlannerConfig& cfg,
                       std::uint64_t seed);

}  // namespace feedplan::plan
