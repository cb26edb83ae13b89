#include "feedplan/geom/mouth.hpp"

#include <algorithm>

#include "feedplan/error.hpp"
#include "feedplan/geom/primitives.hpp"
#include "feedplan/geom/slice.hpp"

namespace feedplan::geom {

void MouthModel::validate() const {
  if (!(semi_axis_x > 0.0) || !(semi_axis_y > 0.0)) {
    throw InvalidSpecError("mouth semi-axes must be positive");
  }
  if (!(depth_in > 0.0)) throw InvalidSpecError("mouth depth_in must be positive");
}

bool MouthModel::inside_ellipse(double x, double y) const {
  const double u = x / semi_axis_x;
  const double v = y / semi_axis_y;
  return u * u + v * v <= 1.0;
}

MouthModel MouthModel::eroded(double margin) const {
  const double b = std::min(semi_axis_x, semi_axis_y);
  if (!(margin >= 0.0) || !(margin < b)) throw InvalidSpecError("erosion margin must lie in [0, min semi-axis)");
  MouthModel out = *this;
  out.pose = pose * Pose::from_translation({0.0, 0.0, margin});
  out.semi_axis_x *= 1.0 - margin / b;
  out.semi_axis_y *= 1.0 - margin / b;
  return out;
}

Plane MouthModel::face_plane() const {
  return Plane{pose.translation(), pose.rotate(Eigen::Vector3d::UnitZ())};
}

RobotProxy make_robot_proxy(const Pose& food_on_fork, const ProxyDims& dims) {
  const Pose food_from_fork = food_on_fork.inverse();
  RobotProxy proxy;

  const double tines_center = dims.handle_length + 0.5 * dims.tines_size.y();
  proxy.bodies.push_back({ProxyRole::tines, make_box(dims.tines_size),
                          food_from_fork * Pose::from_translation({0.0, tines_center, 0.0})});

  proxy.bodies.push_back({ProxyRole::handle,
                          make_cylinder(dims.handle_radius, dims.handle_length, dims.segments),
                          food_from_fork * Pose::from_translation({0.0, 0.5 * dims.handle_length, 0.0})});

  proxy.bodies.push_back(
      {ProxyRole::end_effector, make_box(dims.end_effector_size),
       food_from_fork * Pose::from_translation({0.0, -0.5 * dims.end_effector_size.y(), 0.0})});
  return proxy;
}

}  // namespace feedplan::geom
