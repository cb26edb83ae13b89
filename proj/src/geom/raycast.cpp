#include "feedplan/geom/raycast.hpp"

#include <algorithm>
#include <cmath>

namespace feedplan::geom {

namespace {
constexpr double kNoHit = std::numeric_limits<double>::infinity();
}

double intersect_axis_ray(double x, double y, const Eigen::Vector3d& a, const Eigen::Vector3d& b,
                          const Eigen::Vector3d& c) {
  const Eigen::Vector3d origin(x, y, 0.0);
  const Eigen::Vector3d dir = Eigen::Vector3d::UnitZ();
  const Eigen::Vector3d e1 = b - a;
  const Eigen::Vector3d e2 = c - a;
  const Eigen::Vector3d p = dir.cross(e2);
  const double det = e1.dot(p);
  if (std::abs(det) < 1e-300) return std::numeric_limits<double>::quiet_NaN();
  const double inv = 1.0 / det;
  const Eigen::Vector3d s = origin - a;
  const double u = s.dot(p) * inv;
  if (u < 0.0 || u > 1.0) return std::numeric_limits<double>::quiet_NaN();
  const Eigen::Vector3d q = s.cross(e1);
  const double v = dir.dot(q) * inv;
  if (v < 0.0 || u + v > 1.0) return std::numeric_limits<double>::quiet_NaN();
  return e2.dot(q) * inv;
}

RayGridCaster::RayGridCaster(const RayGrid& grid)
    : grid_(grid), nearest_(static_cast<std::size_t>(grid.n) * grid.m, kNoHit) {}

void RayGridCaster::add_triangle(const Eigen::Vector3d& a, const Eigen::Vector3d& b,
                                 const Eigen::Vector3d& c) {
  const double zmin = std::min({a.z(), b.z(), c.z()});
  const double zmax = std::max({a.z(), b.z(), c.z()});
  if (zmax < 0.0 || zmin > grid_.z_max) return;

  // Only rays whose origin falls inside the triangle's xy box can hit it.
  const double dx = grid_.extent / grid_.n;
  const double dy = grid_.extent / grid_.m;
  const double half = 0.5 * grid_.extent;
  const double xmin = std::min({a.x(), b.x(), c.x()}), xmax = std::max({a.x(), b.x(), c.x()});
  const double ymin = std::min({a.y(), b.y(), c.y()}), ymax = std::max({a.y(), b.y(), c.y()});
  const int i0 = std::max(0, static_cast<int>(std::ceil((xmin + half) / dx - 0.5)));
  const int i1 = std::min(grid_.n - 1, static_cast<int>(std::floor((xmax + half) / dx - 0.5)));
  const int j0 = std::max(0, static_cast<int>(std::ceil((ymin + half) / dy - 0.5)));
  const int j1 = std::min(grid_.m - 1, static_cast<int>(std::floor((ymax + half) / dy - 0.5)));

  for (int j = j0; j <= j1; ++j) {
    const double y = grid_.ray_y(j);
    for (int i = i0; i <= i1; ++i) {
      const double t = intersect_axis_ray(grid_.ray_x(i), y, a, b, c);
      if (!(t >= 0.0 && t <= grid_.z_max)) continue;
      double& best = nearest_[static_cast<std::size_t>(j) * grid_.n + i];
      best = std::min(best, t);
    }
  }
}

void RayGridCaster::add_mesh(const std::vector<Eigen::Vector3d>& local_vertices,
                             const std::vector<Face>& faces) {
  for (const Face& f : faces) add_triangle(local_vertices[f[0]], local_vertices[f[1]], local_vertices[f[2]]);
}

std::vector<Eigen::Vector3d> RayGridCaster::hits() const {
  std::vector<Eigen::Vector3d> out;
  for (int j = 0; j < grid_.m; ++j) {
    for (int i = 0; i < grid_.n; ++i) {
      const double t = nearest_[static_cast<std::size_t>(j) * grid_.n + i];
      if (t != kNoHit) out.emplace_back(grid_.ray_x(i), grid_.ray_y(j), t);
    }
  }
  return out;
}

std::vector<Eigen::Vector3d> raycast_grid(const std::vector<TriMesh>& meshes, const MouthModel& mouth,
                                          int n, int m, double extent, double z_max) {
  RayGridCaster caster(RayGrid{n, m, extent, z_max});
  const Pose to_mouth = mouth.pose.inverse();
  std::vector<Eigen::Vector3d> local;
  for (const TriMesh& mesh : meshes) {
    local.clear();
    for (const auto& v : mesh.vertices) local.push_back(to_mouth * v);
    caster.add_mesh(local, mesh.faces);
  }
  return caster.hits();
}

}  // namespace feedplan::geom
