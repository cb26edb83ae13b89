#pragma once

#include <limits>
#include <vector>

#include "feedplan/geom/mouth.hpp"

namespace feedplan::geom {

/// N x M rays on the face plane, cast along the mouth +z axis. Ray (i, j)
/// starts at x_i = -extent/2 + (i + 1/2) extent / N (same for y with M).
struct RayGrid {
  int n = 16;
  int m = 16;
  double extent = 0.4;
  double z_max = 0.5;

  double ray_x(int i) const { return -0.5 * extent + (i + 0.5) * extent / n; }
  double ray_y(int j) const { return -0.5 * extent + (j + 0.5) * extent / m; }
};

/// Accumulates nearest hits per ray over any number of meshes that are
/// already expressed in the mouth frame.
class RayGridCaster {
 public:
  explicit RayGridCaster(const RayGrid& grid);

  void add_triangle(const Eigen::Vector3d& a, const Eigen::Vector3d& b, const Eigen::Vector3d& c);
  void add_mesh(const std::vector<Eigen::Vector3d>& local_vertices, const std::vector<Face>& faces);

  /// Hit points (mouth frame) in ray order j * n + i; misses are skipped.
  std::vector<Eigen::Vector3d> hits() const;
  const RayGrid& grid() const { return grid_; }

 private:
  RayGrid grid_;
  std::vector<double> nearest_;
};

/// Möller-Trumbore for an axis ray (x, y, 0) + t (0, 0, 1). Returns t or NaN.
double intersect_axis_ray(double x, double y, const Eigen::Vector3d& a, const Eigen::Vector3d& b,
                          const Eigen::Vector3d& c);

/// Meshes are in world coordinates; hits are returned in the mouth frame.
std::vector<Eigen::Vector3d> raycast_grid(const std::vector<TriMesh>& meshes, const MouthModel& mouth,
                                          int n, int m, double extent, double z_max);

}  // namespace feedplan::geom
