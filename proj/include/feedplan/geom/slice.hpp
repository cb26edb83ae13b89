#pragma once

#include "feedplan/geom/mesh.hpp"

namespace feedplan::geom {

struct Plane {
  Eigen::Vector3d point = Eigen::Vector3d::Zero();
  Eigen::Vector3d normal = Eigen::Vector3d::UnitZ();
};

struct SliceResult {
  TriMesh inside;   // half-space opposite the normal
  TriMesh outside;  // half-space the normal points into
};

/// Cuts a closed mesh by a plane and caps both pieces, so each piece is closed
/// again. Vertices exactly on the plane go to the outside piece. Throws
/// InvalidPlaneError for a zero normal and TopologyError if the cut boundary
/// does not form closed loops.
SliceResult slice_mesh_by_plane(const TriMesh& mesh, const Plane& plane);

}  // namespace feedplan::geom
