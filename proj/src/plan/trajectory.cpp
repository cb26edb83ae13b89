#include "feedplan/plan/trajectory.hpp"

#include <cmath>

#include "feedplan/error.hpp"

namespace feedplan::plan {

Trajectory make_trajectory(std::vector<Pose> waypoints, const costs::CostModel& model,
                           const costs::GoalTerms& terms, int goal_index) {
  Trajectory t;
  t.waypoints = std::move(waypoints);
  t.goal_terms = terms;
  t.goal_index = goal_index;
  for (std::size_t i = 1; i < t.waypoints.size(); ++i) {
    t.edge_costs.push_back(model.edge(t.waypoints[i - 1], t.waypoints[i]));
    t.path_cost += t.edge_costs.back();
  }
  t.goal_penalty = model.goal_penalty(terms);
  t.total_cost = t.path_cost + t.goal_penalty;
  return t;
}

std::vector<Pose> discretize(const Pose& a, const Pose& b, double max_step, double w_rot) {
  const double d = costs::pose_distance(a, b, w_rot);
  const int n = std::max(1, static_cast<int>(std::ceil(d / max_step - 1e-12)));
  std::vector<Pose> out;
  out.reserve(n + 1);
  out.push_back(a);
  for (int i = 1; i < n; ++i) out.push_back(geom::interpolate(a, b, static_cast<double>(i) / n));
  out.push_back(b);
  return out;
}

namespace {

// Samples of [t0, t1] along a -> b at pose-distance spacing <= step, ends excluded.
bool stretch_is_free(const geom::Scene& scene, const Pose& a, const Pose& b, double t0, double t1, double length,
                     double step) {
  const int m = std::max(1, static_cast<int>(std::ceil((t1 - t0) * length / step - 1e-12)));
  for (int j = 1; j < m; ++j) {
    if (!scene.is_free(geom::interpolate(a, b, t0 + (t1 - t0) * j / m))) return false;
  }
  return true;
}

}  // namespace

bool edge_is_free(const geom::Scene& scene, const Pose& a, const Pose& b, double resolution, double w_rot,
                  double clearance, EdgeEnd end) {
  const double d = costs::pose_distance(a, b, w_rot);
  const int n = std::max(1, static_cast<int>(std::ceil(d / resolution - 1e-12)));
  const int last = end == EdgeEnd::known_free ? n - 1 : n;
  for (int i = 1; i <= last; ++i) {
    if (!scene.is_clear(i == n ? b : geom::interpolate(a, b, static_cast<double>(i) / n), clearance)) return false;
  }
  if (clearance > 0.0) {
    // The margin covers the motion between two clear samples. An exempt end
    // (start or goal) may sit on the boundary, so its neighbouring sub-segment
    // is resampled at spacing `clearance`.
    const double t = 1.0 / n;
    if (!scene.is_clear(a, clearance) && !stretch_is_free(scene, a, b, 0.0, t, d, clearance)) return false;
    if (end == EdgeEnd::known_free && !scene.is_clear(b, clearance) &&
        !stretch_is_free(scene, a, b, 1.0 - t, 1.0, d, clearance)) {
      return false;
    }
  }
  return true;
}

std::size_t select_trajectory_index(const std::vector<Trajectory>& trajs) {
  if (trajs.empty()) throw NoTrajectoryError("no trajectory to select from");
  std::size_t best = 0;
  for (std::size_t i = 1; i < trajs.size(); ++i) {
    const Trajectory& a = trajs[i];
    const Trajectory& b = trajs[best];
    if (a.total_cost != b.total_cost) {
      if (a.total_cost < b.total_cost) best = i;
    } else if (a.waypoints.size() != b.waypoints.size()) {
      if (a.waypoints.size() < b.waypoints.size()) best = i;
    } else if (a.goal_index < b.goal_index) {
      best = i;
    }
  }
  return best;
}

const Trajectory& select_trajectory(const std::vector<Trajectory>& trajs) {
  return trajs[select_trajectory_index(trajs)];
}

std::vector<TimedPose> interpolate_trajectory(const std::vector<Pose>& waypoints, double v_max, double dt,
                                              double follow_radius, double w_rot) {
  if (!(v_max > 0.0 && dt > 0.0 && follow_radius > 0.0)) {
    throw InvalidSpecError("v_max, dt and follow_radius must be > 0");
  }
  std::vector<TimedPose> out;
  if (waypoints.empty()) return out;
  const double step = v_max * dt;
  Pose cur = waypoints.front();
  double t = 0.0;
  out.push_back({t, cur});
  std::size_t target = 1;
  while (target < waypoints.size()) {
    const Pose& goal = waypoints[target];
    const double d = costs::pose_distance(cur, goal, w_rot);
    const bool last = target + 1 == waypoints.size();
    if (d <= follow_radius && !last) {
      ++target;
      continue;
    }
    if (d == 0.0) break;
    cur = d <= step ? goal : geom::interpolate(cur, goal, step / d);
    t += dt;
    out.push_back({t, cur});
  }
  return out;
}

double path_mean_comfort(const Trajectory& traj, const costs::CostModel& model) {
  if (traj.waypoints.empty()) return 0.0;
  double sum = 0.0;
  for (const Pose& p : traj.waypoints) sum += model.comfort(p);
  return sum / static_cast<double>(traj.waypoints.size());
}

}  // namespace feedplan::plan
