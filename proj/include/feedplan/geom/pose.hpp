#pragma once

#include <Eigen/Core>
#include <Eigen/Geometry>

namespace feedplan::geom {

/// Rigid transform (rotation then translation). The rotation is kept as a unit
/// quaternion; every constructor and composition renormalizes it.
class Pose {
 public:
  Pose() = default;
  Pose(const Eigen::Vector3d& translation, const Eigen::Quaterniond& rotation);

  static Pose identity() { return {}; }
  static Pose from_translation(const Eigen::Vector3d& t);
  /// Rotation given as axis * angle (radians).
  static Pose from_rotation_vector(const Eigen::Vector3d& translation,
                                   const Eigen::Vector3d& rotation_vector);

  const Eigen::Vector3d& translation() const { return translation_; }
  const Eigen::Quaterniond& rotation() const { return rotation_; }
  Eigen::Matrix3d rotation_matrix() const { return rotation_.toRotationMatrix(); }
  Eigen::Vector3d rotation_vector() const;

  Pose inverse() const;
  Pose operator*(const Pose& rhs) const;
  Eigen::Vector3d operator*(const Eigen::Vector3d& point) const;
  Eigen::Vector3d rotate(const Eigen::Vector3d& v) const { return rotation_ * v; }

  bool operator==(const Pose& rhs) const;

 private:
  Eigen::Vector3d translation_ = Eigen::Vector3d::Zero();
  Eigen::Quaterniond rotation_ = Eigen::Quaterniond::Identity();
};

/// Geodesic angle between two orientations, in [0, pi].
double rotation_angle(const Eigen::Quaterniond& a, const Eigen::Quaterniond& b);

/// Translation interpolated linearly, rotation along the shortest geodesic.
Pose interpolate(const Pose& from, const Pose& to, double t);

}  // namespace feedplan::geom
