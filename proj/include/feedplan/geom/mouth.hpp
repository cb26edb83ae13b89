#pragma once

#include <string>
#include <vector>

#include "feedplan/geom/slice.hpp"

namespace feedplan::geom {

/// Elliptical tube cut into the face plane. Local frame: origin at the mouth
/// center on the face plane, +x to the user's side, +y up, +z out of the face.
/// Free space is z > 0 plus the tube {(x/a)^2 + (y/b)^2 <= 1, -depth_in <= z <= 0}.
struct MouthModel {
  Pose pose;
  double semi_axis_x = 0.03;  // a
  double semi_axis_y = 0.02;  // b
  double depth_in = 0.06;

  void validate() const;
  Eigen::Vector3d to_local(const Eigen::Vector3d& world) const { return pose.inverse() * world; }
  /// Boundary counts as inside.
  bool inside_ellipse(double x, double y) const;
  Plane face_plane() const;
  /// Free space shrunk by `margin`: any point within `margin` of a point that
  /// is free here is free in the original. The face plane moves out by
  /// `margin` and the ellipse scales by 1 - margin / min(a, b).
  MouthModel eroded(double margin) const;
};

enum class ProxyRole { tines, handle, end_effector };

struct ProxyBody {
  ProxyRole role = ProxyRole::tines;
  TriMesh mesh;
  Pose offset;  // body frame relative to the food frame
};

/// Fork + end-effector stand-in, rigidly attached to the food.
struct RobotProxy {
  std::vector<ProxyBody> bodies;
};

/// Fork-frame dimensions. The fork frame has its origin at the end-effector
/// flange and +y pointing along the fork toward the tine tips.
struct ProxyDims {
  Eigen::Vector3d tines_size{0.02, 0.06, 0.003};
  double handle_radius = 0.004;
  double handle_length = 0.12;
  Eigen::Vector3d end_effector_size{0.08, 0.1, 0.08};
  int segments = 16;

  double tine_tip_y() const { return handle_length + tines_size.y(); }
};

/// Builds the proxy for a food held at `food_on_fork` (food pose in the fork frame).
RobotProxy make_robot_proxy(const Pose& food_on_fork, const ProxyDims& dims = {});

}  // namespace feedplan::geom
