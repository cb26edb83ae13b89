#pragma once

// Brute-force references used to cross-check the fast geometry routines.

#include <cmath>
#include <limits>
#include <numbers>
#include <optional>
#include <random>
#include <vector>

#include "feedplan/geom/mouth.hpp"
#include "feedplan/geom/pose.hpp"

namespace feedplan::testing {

using geom::Pose;
using geom::TriMesh;

inline Eigen::Quaterniond random_rotation(std::mt19937_64& rng) {
  std::normal_distribution<double> n(0.0, 1.0);
  Eigen::Quaterniond q(n(rng), n(rng), n(rng), n(rng));
  return q.normalized();
}

inline Pose random_pose(std::mt19937_64& rng, double extent) {
  std::uniform_real_distribution<double> u(-extent, extent);
  return Pose({u(rng), u(rng), u(rng)}, random_rotation(rng));
}

/// True if a point lies in the obstacle region around the mouth tube.
inline bool point_blocked(const Eigen::Vector3d& p, const geom::MouthModel& m, bool end_effector) {
  if (p.z() > 0.0) return false;
  if (end_effector) return true;
  if (p.z() < -m.depth_in) return true;
  const double u = p.x() / m.semi_axis_x, v = p.y() / m.semi_axis_y;
  return u * u + v * v > 1.0;
}

/// Dense surface sampling: every vertex, points along edges every `spacing`,
/// and a barycentric grid inside each triangle, all tested against the
/// obstacle region. Triangles fully in front of the face plane are skipped
/// since the obstacle lies entirely at z <= 0.
inline bool body_blocked_dense(const std::vector<Eigen::Vector3d>& verts, const std::vector<geom::Face>& faces,
                               const geom::MouthModel& m, bool end_effector, double spacing, int interior = 8) {
  for (const auto& f : faces) {
    const Eigen::Vector3d& a = verts[f[0]];
    const Eigen::Vector3d& b = verts[f[1]];
    const Eigen::Vector3d& c = verts[f[2]];
    if (std::min({a.z(), b.z(), c.z()}) > 0.0) continue;
    const Eigen::Vector3d* corners[3] = {&a, &b, &c};
    for (int k = 0; k < 3; ++k) {
      const Eigen::Vector3d& p = *corners[k];
      const Eigen::Vector3d& q = *corners[(k + 1) % 3];
      const int steps = std::max(1, static_cast<int>(std::ceil((q - p).norm() / spacing)));
      for (int s = 0; s <= steps; ++s) {
        if (point_blocked(p + (q - p) * (static_cast<double>(s) / steps), m, end_effector)) return true;
      }
    }
    for (int i = 1; i < interior; ++i) {
      for (int j = 1; i + j < interior; ++j) {
        const double u = static_cast<double>(i) / interior, v = static_cast<double>(j) / interior;
        if (point_blocked(a + u * (b - a) + v * (c - a), m, end_effector)) return true;
      }
    }
  }
  return false;
}

inline bool scene_blocked_dense(const TriMesh& food, const Pose& food_pose, const geom::RobotProxy& proxy,
                                const geom::MouthModel& mouth, double spacing) {
  const Pose to_mouth = mouth.pose.inverse() * food_pose;
  auto posed = [&](const TriMesh& mesh, const Pose& offset) {
    std::vector<Eigen::Vector3d> out;
    const Pose t = to_mouth * offset;
    for (const auto& v : mesh.vertices) out.push_back(t * v);
    return out;
  };
  if (body_blocked_dense(posed(food, Pose::identity()), food.faces, mouth, false, spacing)) return true;
  for (const auto& body : proxy.bodies) {
    if (body_blocked_dense(posed(body.mesh, body.offset), body.mesh.faces, mouth,
                           body.role == geom::ProxyRole::end_effector, spacing)) {
      return true;
    }
  }
  return false;
}

/// Ray (x, y, 0) + t e_z against a triangle via the supporting plane and
/// 2D edge functions. Independent of the Möller-Trumbore routine.
inline std::optional<double> ray_triangle_plane(double x, double y, const Eigen::Vector3d& a,
                                                const Eigen::Vector3d& b, const Eigen::Vector3d& c) {
  auto edge = [](const Eigen::Vector3d& p, const Eigen::Vector3d& q, double px, double py) {
    return (q.x() - p.x()) * (py - p.y()) - (q.y() - p.y()) * (px - p.x());
  };
  const double e0 = edge(a, b, x, y), e1 = edge(b, c, x, y), e2 = edge(c, a, x, y);
  const bool pos = e0 >= 0 && e1 >= 0 && e2 >= 0;
  const bool neg = e0 <= 0 && e1 <= 0 && e2 <= 0;
  if (!pos && !neg) return std::nullopt;
  const Eigen::Vector3d n = (b - a).cross(c - a);
  if (std::abs(n.z()) < 1e-15) return std::nullopt;
  return a.z() - (n.x() * (x - a.x()) + n.y() * (y - a.y())) / n.z();
}

}  // namespace feedplan::testing

#include "feedplan/geom/primitives.hpp"

namespace feedplan::testing {

/// Fork orientation that points the fork's +y axis into the mouth (-z).
inline Eigen::Quaterniond into_mouth() {
  return Eigen::Quaterniond(Eigen::AngleAxisd(-std::numbers::pi / 2, Eigen::Vector3d::UnitX()));
}

struct ContainmentCase {
  geom::FoodSpec spec;
  geom::MouthModel mouth;
  Pose food_pose;
};

/// Food near the mouth opening with a tilted, spun approach; roughly half of
/// these cases end up in collision.
inline ContainmentCase random_containment_case(std::mt19937_64& rng, geom::FoodKind kind) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  ContainmentCase c;
  c.spec = geom::FoodSpec::default_for(kind).scaled(0.6 + 0.8 * u(rng));
  c.mouth.pose = random_pose(rng, 0.5);
  const double tilt = 0.6 * u(rng), az = 2 * std::numbers::pi * u(rng), spin = 2 * std::numbers::pi * (u(rng) - 0.5);
  const Eigen::Quaterniond r = Eigen::AngleAxisd(tilt, Eigen::Vector3d(std::cos(az), std::sin(az), 0.0)) *
                               into_mouth() * Eigen::AngleAxisd(spin, Eigen::Vector3d::UnitY());
  const Eigen::Vector3d t(0.03 * (u(rng) - 0.5), 0.03 * (u(rng) - 0.5), -0.08 * u(rng) + 0.02);
  c.food_pose = c.mouth.pose * Pose(t, r);
  return c;
}

}  // namespace feedplan::testing
