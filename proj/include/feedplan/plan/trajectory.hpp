#pragma once

#include <vector>

#include "feedplan/costs/costs.hpp"

namespace feedplan::plan {

using geom::Pose;

struct Trajectory {
  std::vector<Pose> waypoints;    // start first, goal last
  std::vector<double> edge_costs;  // one per consecutive pair
  costs::GoalTerms goal_terms;
  double path_cost = 0.0;     // sum of edge costs
  double goal_penalty = 0.0;  // goal terms weighted by the active mode
  double total_cost = 0.0;    // path_cost + goal_penalty
  int goal_index = -1;
};

/// Fills in edge costs and totals for `waypoints` under `model`.
Trajectory make_trajectory(std::vector<Pose> waypoints, const costs::CostModel& model,
                           const costs::GoalTerms& terms, int goal_index);

/// Evenly spaced poses from `a` to `b` (both included), no gap above `max_step`.
std::vector<Pose> discretize(const Pose& a, const Pose& b, double max_step, double w_rot);

enum class EdgeEnd { check, known_free };

/// Every pose along a -> b at spacing <= resolution keeps `clearance` to the
/// mouth boundary. `a` is never checked; `b` is skipped when already known free.
/// A sub-segment touching an end without the margin is also checked collision
/// free at spacing `clearance`.
bool edge_is_free(const geom::Scene& scene, const Pose& a, const Pose& b, double resolution, double w_rot,
                  double clearance = 0.0, EdgeEnd end = EdgeEnd::check);

/// Lowest total cost; ties go to fewer waypoints, then to the lower goal
/// index. Throws NoTrajectoryError on an empty list.
std::size_t select_trajectory_index(const std::vector<Trajectory>& trajs);
const Trajectory& select_trajectory(const std::vector<Trajectory>& trajs);

struct TimedPose {
  double t = 0.0;
  Pose pose;
};

/// Follower that moves at most v_max * dt per tick toward the current
/// waypoint and advances once within `follow_radius`. Ends on the last
/// waypoint exactly.
std::vector<TimedPose> interpolate_trajectory(const std::vector<Pose>& waypoints, double v_max, double dt,
                                              double follow_radius, double w_rot = 0.1);

/// Mean comfort cost over the waypoints.
double path_mean_comfort(const Trajectory& traj, const costs::CostModel& model);

}  // namespace feedplan::plan
