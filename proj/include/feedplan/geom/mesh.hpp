#pragma once

#include <array>
#include <vector>

#include <Eigen/Core>

#include "feedplan/geom/pose.hpp"

namespace feedplan::geom {

using Face = std::array<int, 3>;

/// Triangle-only mesh. Faces are counter-clockwise seen from outside, so a
/// closed mesh has positive signed volume.
struct TriMesh {
  std::vector<Eigen::Vector3d> vertices;
  std::vector<Face> faces;

  bool empty() const { return faces.empty(); }
};

/// Throws TopologyError if any face references a missing vertex.
void validate_indices(const TriMesh& mesh);

/// Every directed edge (a,b) is matched by exactly one (b,a). This is the
/// watertight + consistently-wound test; an empty mesh passes.
bool is_closed(const TriMesh& mesh);

/// Divergence-theorem volume, no topology check. Negative for inward winding.
double signed_volume(const TriMesh& mesh);

/// Absolute enclosed volume. Throws TopologyError unless is_closed().
double mesh_volume(const TriMesh& mesh);

/// Volumetric centroid of a closed mesh (vertex mean for zero-volume input).
Eigen::Vector3d volume_centroid(const TriMesh& mesh);

TriMesh transform_mesh(const TriMesh& mesh, const Pose& pose);
TriMesh translate_mesh(const TriMesh& mesh, const Eigen::Vector3d& offset);

/// Appends `other` as an extra connected component.
void append_mesh(TriMesh& mesh, const TriMesh& other);

struct Aabb {
  Eigen::Vector3d min = Eigen::Vector3d::Constant(0.0);
  Eigen::Vector3d max = Eigen::Vector3d::Constant(0.0);
};
Aabb bounding_box(const TriMesh& mesh);

}  // namespace feedplan::geom
