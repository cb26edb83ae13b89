#pragma once

#include <vector>

#include "feedplan/geom/mouth.hpp"

namespace feedplan::geom {

enum class Verdict { free, collision };

/// Projection test against the mouth tube. For every body except the end
/// effector, the part at z <= 0 in the mouth frame (including the points where
/// edges cross z = 0) must project inside the ellipse and stay above
/// z = -depth_in. The end effector must stay strictly at z > 0.
///
/// Precomputes unique edges and bounding spheres once, so repeated queries
/// against the same food and proxy are cheap. Immutable after construction.
class CollisionModel {
 public:
  CollisionModel(const TriMesh& food, const RobotProxy& proxy);

  Verdict check(const Pose& food_pose, const MouthModel& mouth) const;
  bool is_free(const Pose& food_pose, const MouthModel& mouth) const {
    return check(food_pose, mouth) == Verdict::free;
  }

 private:
  struct Body {
    std::vector<Eigen::Vector3d> vertices;
    std::vector<std::pair<int, int>> edges;
    Pose offset;
    bool end_effector = false;
    Eigen::Vector3d center = Eigen::Vector3d::Zero();
    double radius = 0.0;
  };
  static Body make_body(const TriMesh& mesh, const Pose& offset, bool end_effector);
  static bool body_free(const Body& body, const Pose& in_mouth, const MouthModel& mouth);

  std::vector<Body> bodies_;
};

Verdict projection_collision_check(const TriMesh& food, const Pose& food_pose,
                                   const RobotProxy& proxy, const MouthModel& mouth);

}  // namespace feedplan::geom
