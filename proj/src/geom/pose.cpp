#include "feedplan/geom/pose.hpp"

#include <algorithm>
#include <cmath>

namespace feedplan::geom {

namespace {

Eigen::Quaterniond canonical(Eigen::Quaterniond q) {
  q.normalize();
  // w >= 0 keeps a single representative per rotation, which makes equality and
  // serialization stable.
  if (q.w() < 0.0) q.coeffs() *= -1.0;
  return q;
}

}  // namespace

Pose::Pose(const Eigen::Vector3d& translation, const Eigen::Quaterniond& rotation)
    : translation_(translation), rotation_(canonical(rotation)) {}

Pose Pose::from_translation(const Eigen::Vector3d& t) {
  return Pose(t, Eigen::Quaterniond::Identity());
}

Pose Pose::from_rotation_vector(const Eigen::Vector3d& translation,
                                const Eigen::Vector3d& rotation_vector) {
  const double angle = rotation_vector.norm();
  if (angle < 1e-300) return Pose(translation, Eigen::Quaterniond::Identity());
  return Pose(translation, Eigen::Quaterniond(Eigen::AngleAxisd(angle, rotation_vector / angle)));
}

Eigen::Vector3d Pose::rotation_vector() const {
  const Eigen::Vector3d v = rotation_.vec();
  const double s = v.norm();
  if (s < 1e-300) return Eigen::Vector3d::Zero();
  const double angle = 2.0 * std::atan2(s, rotation_.w());
  return v / s * angle;
}

Pose Pose::inverse() const {
  const Eigen::Quaterniond inv = rotation_.conjugate();
  return Pose(-(inv * translation_), inv);
}

Pose Pose::operator*(const Pose& rhs) const {
  return Pose(translation_ + rotation_ * rhs.translation_, rotation_ * rhs.rotation_);
}

Eigen::Vector3d Pose::operator*(const Eigen::Vector3d& point) const {
  return rotation_ * point + translation_;
}

bool Pose::operator==(const Pose& rhs) const {
  return translation_ == rhs.translation_ && rotation_.coeffs() == rhs.rotation_.coeffs();
}

double rotation_angle(const Eigen::Quaterniond& a, const Eigen::Quaterniond& b) {
  const Eigen::Quaterniond rel = a.conjugate() * b;
  return 2.0 * std::atan2(rel.vec().norm(), std::abs(rel.w()));
}

Pose interpolate(const Pose& from, const Pose& to, double t) {
  if (t <= 0.0) return from;
  if (t >= 1.0) return to;
  const Eigen::Vector3d trans = (1.0 - t) * from.translation() + t * to.translation();
  // Eigen's slerp already picks the shorter arc.
  return Pose(trans, from.rotation().slerp(t, to.rotation()));
}

}  // namespace feedplan::geom
