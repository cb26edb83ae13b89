#include "feedplan/geom/slice.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <unordered_map>
#include <vector>

#include "feedplan/error.hpp"
#include "feedplan/geom/triangulate.hpp"

namespace feedplan::geom {

namespace {

// Builds one output piece, remapping source vertices on first use.
class PieceBuilder {
 public:
  explicit PieceBuilder(std::size_t source_vertices) : remap_(source_vertices, -1) {}

  int source_vertex(int idx, const Eigen::Vector3d& p) {
    if (remap_[idx] < 0) {
      remap_[idx] = static_cast<int>(mesh_.vertices.size());
      mesh_.vertices.push_back(p);
    }
    return remap_[idx];
  }
  int cut_vertex(std::uint64_t key, const Eigen::Vector3d& p) {
    auto [it, inserted] = cut_.try_emplace(key, -1);
    if (inserted) {
      it->second = static_cast<int>(mesh_.vertices.size());
      mesh_.vertices.push_back(p);
    }
    return it->second;
  }
  void face(int a, int b, int c) { mesh_.faces.push_back({a, b, c}); }
  TriMesh& mesh() { return mesh_; }

 private:
  TriMesh mesh_;
  std::vector<int> remap_;
  std::unordered_map<std::uint64_t, int> cut_;
};

std::uint64_t undirected_key(int a, int b) {
  if (a > b) std::swap(a, b);
  return (static_cast<std::uint64_t>(static_cast<std::uint32_t>(a)) << 32) |
         static_cast<std::uint32_t>(b);
}

}  // namespace

SliceResult slice_mesh_by_plane(const TriMesh& mesh, const Plane& plane) {
  const double len = plane.normal.norm();
  if (!(len > 0.0) || !std::isfinite(len)) throw InvalidPlaneError("plane normal has zero length");
  validate_indices(mesh);
  const Eigen::Vector3d n = plane.normal / len;

  const std::size_t nv = mesh.vertices.size();
  std::vector<double> dist(nv);
  for (std::size_t i = 0; i < nv; ++i) dist[i] = n.dot(mesh.vertices[i] - plane.point);
  auto is_in = [&](int i) { return dist[i] < 0.0; };

  PieceBuilder in(nv), out(nv);

  // Cut points are keyed by undirected edge and computed from the lower index,
  // so both faces sharing the edge produce the bit-identical point.
  std::unordered_map<std::uint64_t, Eigen::Vector3d> cut_points;
  auto cut_point = [&](int a, int b) -> std::pair<std::uint64_t, Eigen::Vector3d> {
    const std::uint64_t key = undirected_key(a, b);
    auto it = cut_points.find(key);
    if (it == cut_points.end()) {
      const int lo = std::min(a, b), hi = std::max(a, b);
      const double t = dist[lo] / (dist[lo] - dist[hi]);
      const Eigen::Vector3d p = mesh.vertices[lo] + t * (mesh.vertices[hi] - mesh.vertices[lo]);
      it = cut_points.emplace(key, p).first;
    }
    return {key, it->second};
  };

  // Directed cut segments as seen by the inside cap (reverse of the inside
  // piece's boundary edge), in cut-vertex keys.
  std::unordered_map<std::uint64_t, std::uint64_t> cap_next;

  for (const Face& f : mesh.faces) {
    const int inside_count = is_in(f[0]) + is_in(f[1]) + is_in(f[2]);
    if (inside_count == 3) {
      in.face(in.source_vertex(f[0], mesh.vertices[f[0]]), in.source_vertex(f[1], mesh.vertices[f[1]]),
              in.source_vertex(f[2], mesh.vertices[f[2]]));
      continue;
    }
    if (inside_count == 0) {
      out.face(out.source_vertex(f[0], mesh.vertices[f[0]]), out.source_vertex(f[1], mesh.vertices[f[1]]),
               out.source_vertex(f[2], mesh.vertices[f[2]]));
      continue;
    }
    // Rotate so the vertex alone on its side comes first, keeping winding.
    const bool lone_inside = inside_count == 1;
    int r = 0;
    for (int k = 0; k < 3; ++k) {
      if (is_in(f[k]) == lone_inside) r = k;
    }
    const int a = f[r], b = f[(r + 1) % 3], c = f[(r + 2) % 3];
    const auto [kab, pab] = cut_point(a, b);
    const auto [kca, pca] = cut_point(c, a);

    PieceBuilder& lone = lone_inside ? in : out;
    PieceBuilder& pair = lone_inside ? out : in;
    const int la = lone.source_vertex(a, mesh.vertices[a]);
    const int l_ab = lone.cut_vertex(kab, pab);
    const int l_ca = lone.cut_vertex(kca, pca);
    lone.face(la, l_ab, l_ca);

    const int pb = pair.source_vertex(b, mesh.vertices[b]);
    const int pc = pair.source_vertex(c, mesh.vertices[c]);
    const int p_ab = pair.cut_vertex(kab, pab);
    const int p_ca = pair.cut_vertex(kca, pca);
    pair.face(p_ab, pb, pc);
    pair.face(p_ab, pc, p_ca);

    // The lone triangle walks ab -> ca along the cut. If it is the inside
    // piece, the inside cap needs ca -> ab; otherwise the inside piece (the
    // quad) walks ca -> ab and its cap needs ab -> ca.
    if (lone_inside) {
      cap_next[kca] = kab;
    } else {
      cap_next[kab] = kca;
    }
  }

  // Chain cap segments into loops and triangulate each one in the plane.
  Eigen::Vector3d u = n.unitOrthogonal();
  Eigen::Vector3d v = n.cross(u);
  std::unordered_map<std::uint64_t, bool> used;
  std::vector<std::uint64_t> starts;
  starts.reserve(cap_next.size());
  for (const auto& [from, to] : cap_next) starts.push_back(from);
  std::sort(starts.begin(), starts.end());

  for (std::uint64_t start : starts) {
    if (used[start]) continue;
    std::vector<std::uint64_t> loop;
    std::uint64_t cur = start;
    while (!used[cur]) {
      used[cur] = true;
      loop.push_back(cur);
      auto it = cap_next.find(cur);
      if (it == cap_next.end()) throw TopologyError("slice boundary is not a closed loop");
      cur = it->second;
    }
    if (cur != start) throw TopologyError("slice boundary loops are not disjoint");
    if (loop.size() < 3) continue;

    std::vector<Eigen::Vector2d> flat;
    flat.reserve(loop.size());
    for (std::uint64_t key : loop) {
      const Eigen::Vector3d& p = cut_points.at(key);
      flat.emplace_back(p.dot(u), p.dot(v));
    }
    for (const auto& t : triangulate_polygon(flat)) {
      const std::uint64_t k0 = loop[t[0]], k1 = loop[t[1]], k2 = loop[t[2]];
      in.face(in.cut_vertex(k0, cut_points.at(k0)), in.cut_vertex(k1, cut_points.at(k1)),
              in.cut_vertex(k2, cut_points.at(k2)));
      out.face(out.cut_vertex(k2, cut_points.at(k2)), out.cut_vertex(k1, cut_points.at(k1)),
               out.cut_vertex(k0, cut_points.at(k0)));
    }
  }

  return {std::move(in.mesh()), std::move(out.mesh())};
}

}  // namespace feedplan::geom
