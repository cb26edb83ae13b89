#pragma once

#include <vector>

#include "feedplan/geom/collision.hpp"
#include "feedplan/geom/mouth.hpp"

namespace feedplan::geom {

/// Food on the fork plus the mouth it is delivered to. The food mesh lives in
/// the food frame (centroid at the origin); a planning state is the food pose.
/// Immutable after construction.
class Scene {
 public:
  Scene(TriMesh food, const Pose& food_on_fork, const MouthModel& mouth, const ProxyDims& dims = {});

  const TriMesh& food() const { return food_; }
  const Pose& food_on_fork() const { return food_on_fork_; }
  const MouthModel& mouth() const { return mouth_; }
  const ProxyDims& proxy_dims() const { return dims_; }
  const RobotProxy& proxy() const { return proxy_; }
  const CollisionModel& collision() const { return collision_; }
  double food_volume() const { return food_volume_; }

  /// Food and proxy meshes, all expressed in the food frame.
  const std::vector<TriMesh>& rigid_parts() const { return parts_; }

  bool is_free(const Pose& food_pose) const { return collision_.is_free(food_pose, mouth_); }
  /// Free with every body point at least `margin` inside free space.
  bool is_clear(const Pose& food_pose, double margin) const {
    return margin == 0.0 ? is_free(food_pose) : collision_.is_free(food_pose, mouth_.eroded(margin));
  }

  /// Pose of the fork (end-effector flange) for a given food pose.
  Pose fork_pose(const Pose& food_pose) const { return food_pose * food_on_fork_.inverse(); }

 private:
  TriMesh food_;
  Pose food_on_fork_;
  MouthModel mouth_;
  ProxyDims dims_;
  RobotProxy proxy_;
  CollisionModel collision_;
  double food_volume_ = 0.0;
  std::vector<TriMesh> parts_;
};

}  // namespace feedplan::geom
