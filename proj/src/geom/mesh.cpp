#include "feedplan/geom/mesh.hpp"

#include <cmath>
#include <cstdint>
#include <string>
#include <unordered_map>

#include "feedplan/error.hpp"

namespace feedplan::geom {

namespace {

std::uint64_t edge_key(int a, int b) {
  return (static_cast<std::uint64_t>(static_cast<std::uint32_t>(a)) << 32) |
         static_cast<std::uint32_t>(b);
}

}  // namespace

void validate_indices(const TriMesh& mesh) {
  const int n = static_cast<int>(mesh.vertices.size());
  for (std::size_t f = 0; f < mesh.faces.size(); ++f) {
    for (int idx : mesh.faces[f]) {
      if (idx < 0 || idx >= n) {
        throw TopologyError("face " + std::to_string(f) + " references vertex " +
                            std::to_string(idx) + " of " + std::to_string(n));
      }
    }
  }
}

bool is_closed(const TriMesh& mesh) {
  validate_indices(mesh);
  std::unordered_map<std::uint64_t, int> directed;
  directed.reserve(mesh.faces.size() * 3);
  for (const Face& f : mesh.faces) {
    for (int k = 0; k < 3; ++k) {
      const int a = f[k];
      const int b = f[(k + 1) % 3];
      if (a == b) return false;
      if (++directed[edge_key(a, b)] > 1) return false;
    }
  }
  for (const auto& [key, count] : directed) {
    const int a = static_cast<int>(key >> 32);
    const int b = static_cast<int>(key & 0xffffffffu);
    auto it = directed.find(edge_key(b, a));
    if (it == directed.end() || it->second != count) return false;
  }
  return true;
}

double signed_volume(const TriMesh& mesh) {
  double six_v = 0.0;
  for (const Face& f : mesh.faces) {
    const Eigen::Vector3d& a = mesh.vertices[f[0]];
    const Eigen::Vector3d& b = mesh.vertices[f[1]];
    const Eigen::Vector3d& c = mesh.vertices[f[2]];
    six_v += a.dot(b.cross(c));
  }
  return six_v / 6.0;
}

double mesh_volume(const TriMesh& mesh) {
  if (!is_closed(mesh)) throw TopologyError("mesh is not watertight or not consistently wound");
  return std::abs(signed_volume(mesh));
}

Eigen::Vector3d volume_centroid(const TriMesh& mesh) {
  double six_v = 0.0;
  Eigen::Vector3d acc = Eigen::Vector3d::Zero();
  for (const Face& f : mesh.faces) {
    const Eigen::Vector3d& a = mesh.vertices[f[0]];
    const Eigen::Vector3d& b = mesh.vertices[f[1]];
    const Eigen::Vector3d& c = mesh.vertices[f[2]];
    const double d = a.dot(b.cross(c));
    six_v += d;
    acc += d * (a + b + c);
  }
  if (std::abs(six_v) < 1e-300) {
    Eigen::Vector3d mean = Eigen::Vector3d::Zero();
    for (const auto& v : mesh.vertices) mean += v;
    return mesh.vertices.empty() ? mean : Eigen::Vector3d(mean / double(mesh.vertices.size()));
  }
  // Tetra centroid is (a+b+c+0)/4, weighted by its volume d/6.
  return acc / (4.0 * six_v);
}

TriMesh transform_mesh(const TriMesh& mesh, const Pose& pose) {
  TriMesh out;
  out.faces = mesh.faces;
  out.vertices.reserve(mesh.vertices.size());
  const Eigen::Matrix3d r = pose.rotation_matrix();
  for (const auto& v : mesh.vertices) out.vertices.push_back(r * v + pose.translation());
  return out;
}

TriMesh translate_mesh(const TriMesh& mesh, const Eigen::Vector3d& offset) {
  TriMesh out = mesh;
  for (auto& v : out.vertices) v += offset;
  return out;
}

void append_mesh(TriMesh& mesh, const TriMesh& other) {
  const int base = static_cast<int>(mesh.vertices.size());
  mesh.vertices.insert(mesh.vertices.end(), other.vertices.begin(), other.vertices.end());
  for (const Face& f : other.faces) mesh.faces.push_back({f[0] + base, f[1] + base, f[2] + base});
}

Aabb bounding_box(const TriMesh& mesh) {
  Aabb box;
  if (mesh.vertices.empty()) return box;
  box.min = box.max = mesh.vertices.front();
  for (const auto& v : mesh.vertices) {
    box.min = box.min.cwiseMin(v);
    box.max = box.max.cwiseMax(v);
  }
  return box;
}

}  // namespace feedplan::geom
