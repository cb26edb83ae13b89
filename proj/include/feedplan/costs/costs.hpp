#pragma once

#include <string_view>
#include <vector>

#include "feedplan/geom/raycast.hpp"
#include "feedplan/geom/scene.hpp"

namespace feedplan::costs {

using geom::Pose;

enum class CostMode { distance, efficiency, comfort, combined };

std::string_view to_string(CostMode mode);
/// Throws InvalidSpecError for unknown names.
CostMode cost_mode_from_string(std::string_view name);

/// r_up, r_down, r_side are quadratic-form coefficients: larger means a
/// steeper comfort penalty in that direction.
struct CostWeights {
  double alpha = 1.0;
  double r_up = 1.5;
  double r_down = 1.0;
  double r_side = 1.0;
  double beta_E = 1.0;
  double beta_C = 10.0;
  double gamma_C = 10.0;
  double w_rot = 0.1;  // meters per radian
  CostMode mode = CostMode::combined;

  void validate() const;
  bool uses_efficiency() const { return mode == CostMode::efficiency || mode == CostMode::combined; }
  bool uses_comfort() const { return mode == CostMode::comfort || mode == CostMode::combined; }
};

struct ComfortRayConfig {
  int grid_n = 16;
  int grid_m = 16;
  double extent = 0.4;
  double z_max = 0.5;
  double z_floor = 0.005;

  void validate() const;
  geom::RayGrid grid() const { return {grid_n, grid_m, extent, z_max}; }
};

/// sqrt(|dt|^2 + w_rot^2 theta^2), theta the geodesic angle between rotations.
double pose_distance(const Pose& p, const Pose& q, double w_rot = 0.1);

/// 1 - (v_final / v_initial)^(1/3), clamped to [0, 1].
double efficiency_from_volumes(double v_final, double v_initial);

/// Volume of the posed food inside the mouth slab -depth_in <= z <= 0.
double volume_inside_mouth(const geom::TriMesh& food, const Pose& food_pose, const geom::MouthModel& mouth);

double cost_efficiency(const Pose& goal, const geom::TriMesh& food, const geom::MouthModel& mouth);

/// 1 - exp(-alpha x^T Sigma(x) x / z^2); x = (side, vertical) in the face plane.
double cost_comfort_spatial(const Eigen::Vector2d& x, double z, const CostWeights& w);

/// Mean spatial cost over the ray grid; misses count as zero. Hits closer
/// than z_floor are evaluated at z_floor.
double comfort_from_hits(const std::vector<Eigen::Vector3d>& hits, const ComfortRayConfig& rc,
                         const CostWeights& w);

double cost_comfort_pose(const Pose& food_pose, const geom::Scene& scene, const ComfortRayConfig& rc,
                         const CostWeights& w);

/// d (1 + gamma_C c_mid).
inline double comfort_weighted_edge(double distance, double midpoint_comfort, double gamma_C) {
  return distance * (1.0 + gamma_C * midpoint_comfort);
}

struct GoalTerms {
  double efficiency = 0.0;
  double comfort = 0.0;
};

/// Evaluates every cost term against one scene. Stateless apart from the
/// immutable scene reference, so one instance can be shared across threads.
class CostModel {
 public:
  CostModel(const geom::Scene& scene, const CostWeights& weights, const ComfortRayConfig& rays = {});

  const geom::Scene& scene() const { return *scene_; }
  const CostWeights& weights() const { return weights_; }
  const ComfortRayConfig& rays() const { return rays_; }

  double distance(const Pose& p, const Pose& q) const { return pose_distance(p, q, weights_.w_rot); }
  double comfort(const Pose& food_pose) const;
  double efficiency(const Pose& food_pose) const;

  /// Distance, scaled by 1 + gamma_C C_C(midpoint) in comfort-aware modes.
  double edge(const Pose& p, const Pose& q) const;

  /// Both goal terms, whether or not the active mode weighs them.
  GoalTerms goal_terms(const Pose& goal) const;
  /// beta_E C_E + beta_C C_C restricted to the active mode.
  double goal_penalty(const GoalTerms& terms) const;
  double heuristic(const Pose& p, const Pose& goal, const GoalTerms& terms) const {
    return distance(p, goal) + goal_penalty(terms);
  }

 private:
  const geom::Scene* scene_;
  CostWeights weights_;
  ComfortRayConfig rays_;
};

double edge_cost(const Pose& p, const Pose& q, const geom::Scene& scene, const CostWeights& w,
                 const ComfortRayConfig& rc = {});
double heuristic_cost(const Pose& p, const Pose& goal, const geom::Scene& scene, const CostWeights& w,
                      const ComfortRayConfig& rc = {});

}  // namespace feedplan::costs
