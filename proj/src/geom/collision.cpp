#include "feedplan/geom/collision.hpp"

#include <algorithm>
#include <set>

namespace feedplan::geom {

CollisionModel::Body CollisionModel::make_body(const TriMesh& mesh, const Pose& offset,
                                               bool end_effector) {
  validate_indices(mesh);
  Body body;
  body.vertices = mesh.vertices;
  body.offset = offset;
  body.end_effector = end_effector;

  std::set<std::pair<int, int>> edges;
  for (const Face& f : mesh.faces) {
    for (int k = 0; k < 3; ++k) {
      const int a = f[k], b = f[(k + 1) % 3];
      edges.emplace(std::min(a, b), std::max(a, b));
    }
  }
  body.edges.assign(edges.begin(), edges.end());

  if (!mesh.vertices.empty()) {
    const Aabb box = bounding_box(mesh);
    body.center = 0.5 * (box.min + box.max);
    for (const auto& v : mesh.vertices) body.radius = std::max(body.radius, (v - body.center).norm());
  }
  return body;
}

CollisionModel::CollisionModel(const TriMesh& food, const RobotProxy& proxy) {
  bodies_.push_back(make_body(food, Pose::identity(), false));
  for (const ProxyBody& b : proxy.bodies) {
    bodies_.push_back(make_body(b.mesh, b.offset, b.role == ProxyRole::end_effector));
  }
}

bool CollisionModel::body_free(const Body& body, const Pose& in_mouth, const MouthModel& mouth) {
  if (body.vertices.empty()) return true;
  // Entirely in front of the face plane: nothing to test.
  if ((in_mouth * body.center).z() - body.radius > 0.0) return true;

  const Eigen::Matrix3d r = in_mouth.rotation_matrix();
  const Eigen::Vector3d t = in_mouth.translation();

  thread_local std::vector<Eigen::Vector3d> local;
  local.resize(body.vertices.size());
  for (std::size_t i = 0; i < body.vertices.size(); ++i) local[i] = r * body.vertices[i] + t;

  if (body.end_effector) {
    return std::all_of(local.begin(), local.end(), [](const Eigen::Vector3d& p) { return p.z() > 0.0; });
  }

  for (const auto& p : local) {
    if (p.z() > 0.0) continue;
    if (p.z() < -mouth.depth_in) return false;
    if (!mouth.inside_ellipse(p.x(), p.y())) return false;
  }
  for (const auto& [ia, ib] : body.edges) {
    const Eigen::Vector3d& a = local[ia];
    const Eigen::Vector3d& b = local[ib];
    if ((a.z() <= 0.0) == (b.z() <= 0.0)) continue;
    const double s = a.z() / (a.z() - b.z());
    const double x = a.x() + s * (b.x() - a.x());
    const double y = a.y() + s * (b.y() - a.y());
    if (!mouth.inside_ellipse(x, y)) return false;
  }
  return true;
}

Verdict CollisionModel::check(const Pose& food_pose, const MouthModel& mouth) const {
  const Pose food_in_mouth = mouth.pose.inverse() * food_pose;
  for (const Body& body : bodies_) {
    if (!body_free(body, food_in_mouth * body.offset, mouth)) return Verdict::collision;
  }
  return Verdict::free;
}

Verdict projection_collision_check(const TriMesh& food, const Pose& food_pose,
                                   const RobotProxy& proxy, const MouthModel& mouth) {
  return CollisionModel(food, proxy).check(food_pose, mouth);
}

}  // namespace feedplan::geom
