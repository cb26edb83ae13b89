#include "feedplan/costs/costs.hpp"

#include <algorithm>
#include <array>
#include <cmath>

#include "feedplan/error.hpp"
#include "feedplan/geom/slice.hpp"

namespace feedplan::costs {

namespace {

void require(bool ok, const char* message) {
  if (!ok) throw InvalidSpecError(message);
}

std::array<double, 7> pose_key(const Pose& p) {
  const auto& t = p.translation();
  const auto& r = p.rotation();
  return {t.x(), t.y(), t.z(), r.w(), r.x(), r.y(), r.z()};
}

}  // namespace

std::string_view to_string(CostMode mode) {
  switch (mode) {
    case CostMode::distance: return "distance";
    case CostMode::efficiency: return "efficiency";
    case CostMode::comfort: return "comfort";
    case CostMode::combined: return "combined";
  }
  return "combined";
}

CostMode cost_mode_from_string(std::string_view name) {
  for (CostMode m : {CostMode::distance, CostMode::efficiency, CostMode::comfort, CostMode::combined}) {
    if (to_string(m) == name) return m;
  }
  throw InvalidSpecError("unknown cost mode '" + std::string(name) + "'");
}

void CostWeights::validate() const {
  require(alpha >= 0.0 && beta_E >= 0.0 && beta_C >= 0.0 && gamma_C >= 0.0, "cost weights must be >= 0");
  require(r_up > 0.0 && r_down > 0.0 && r_side > 0.0, "comfort radii must be > 0");
  require(w_rot > 0.0, "w_rot must be > 0");
}

void ComfortRayConfig::validate() const {
  require(grid_n >= 1 && grid_m >= 1 && grid_n * grid_m >= 4, "comfort ray grid needs at least 4 rays");
  require(extent > 0.0 && z_max > 0.0 && z_floor > 0.0, "comfort ray extents must be > 0");
}

double pose_distance(const Pose& p, const Pose& q, double w_rot) {
  const double dt2 = (p.translation() - q.translation()).squaredNorm();
  const double theta = geom::rotation_angle(p.rotation(), q.rotation());
  return std::sqrt(dt2 + w_rot * w_rot * theta * theta);
}

double efficiency_from_volumes(double v_final, double v_initial) {
  if (!(v_initial > 0.0)) return 1.0;
  const double ratio = std::clamp(v_final / v_initial, 0.0, 1.0);
  return std::clamp(1.0 - std::cbrt(ratio), 0.0, 1.0);
}

double volume_inside_mouth(const geom::TriMesh& food, const Pose& food_pose, const geom::MouthModel& mouth) {
  const geom::TriMesh local = geom::transform_mesh(food, mouth.pose.inverse() * food_pose);
  const geom::Aabb box = geom::bounding_box(local);
  if (box.min.z() >= 0.0 || box.max.z() <= -mouth.depth_in) {
    if (!geom::is_closed(local)) throw TopologyError("food mesh is not closed");
    return 0.0;
  }
  if (box.max.z() < 0.0 && box.min.z() > -mouth.depth_in) return geom::mesh_volume(local);

  const geom::TriMesh behind = geom::slice_mesh_by_plane(local, {{0, 0, 0}, {0, 0, 1}}).inside;
  if (behind.empty()) return 0.0;
  const geom::TriMesh slab = geom::slice_mesh_by_plane(behind, {{0, 0, -mouth.depth_in}, {0, 0, -1}}).inside;
  return slab.empty() ? 0.0 : geom::mesh_volume(slab);
}

double cost_efficiency(const Pose& goal, const geom::TriMesh& food, const geom::MouthModel& mouth) {
  return efficiency_from_volumes(volume_inside_mouth(food, goal, mouth), geom::mesh_volume(food));
}

double cost_comfort_spatial(const Eigen::Vector2d& x, double z, const CostWeights& w) {
  const double r_vert = x.y() > 0.0 ? w.r_up : w.r_down;
  const double q = w.r_side * x.x() * x.x() + r_vert * x.y() * x.y();
  return -std::expm1(-w.alpha * q / (z * z));
}

double comfort_from_hits(const std::vector<Eigen::Vector3d>& hits, const ComfortRayConfig& rc,
                         const CostWeights& w) {
  double sum = 0.0;
  for (const auto& h : hits) sum += cost_comfort_spatial(h.head<2>(), std::max(h.z(), rc.z_floor), w);
  return sum / (static_cast<double>(rc.grid_n) * rc.grid_m);
}

double cost_comfort_pose(const Pose& food_pose, const geom::Scene& scene, const ComfortRayConfig& rc,
                         const CostWeights& w) {
  geom::RayGridCaster caster(rc.grid());
  const Pose to_mouth = scene.mouth().pose.inverse() * food_pose;
  const Eigen::Matrix3d r = to_mouth.rotation_matrix();
  const Eigen::Vector3d t = to_mouth.translation();
  thread_local std::vector<Eigen::Vector3d> local;
  for (const geom::TriMesh& part : scene.rigid_parts()) {
    local.resize(part.vertices.size());
    for (std::size_t i = 0; i < part.vertices.size(); ++i) local[i] = r * part.vertices[i] + t;
    caster.add_mesh(local, part.faces);
  }
  return comfort_from_hits(caster.hits(), rc, w);
}

CostModel::CostModel(const geom::Scene& scene, const CostWeights& weights, const ComfortRayConfig& rays)
    : scene_(&scene), weights_(weights), rays_(rays) {
  weights_.validate();
  rays_.validate();
}

double CostModel::comfort(const Pose& food_pose) const {
  return cost_comfort_pose(food_pose, *scene_, rays_, weights_);
}

double CostModel::efficiency(const Pose& food_pose) const {
  return efficiency_from_volumes(volume_inside_mouth(scene_->food(), food_pose, scene_->mouth()),
                                 scene_->food_volume());
}

double CostModel::edge(const Pose& p, const Pose& q) const {
  const double d = distance(p, q);
  if (!weights_.uses_comfort() || d == 0.0 || weights_.gamma_C == 0.0) return d;
  // Interpolating from the lexicographically smaller pose keeps edge(p, q) == edge(q, p) bitwise.
  const bool swap = pose_key(q) < pose_key(p);
  const Pose mid = swap ? geom::interpolate(q, p, 0.5) : geom::interpolate(p, q, 0.5);
  return comfort_weighted_edge(d, comfort(mid), weights_.gamma_C);
}

GoalTerms CostModel::goal_terms(const Pose& goal) const { return {efficiency(goal), comfort(goal)}; }

double CostModel::goal_penalty(const GoalTerms& terms) const {
  double c = 0.0;
  if (weights_.uses_efficiency()) c += weights_.beta_E * terms.efficiency;
  if (weights_.uses_comfort()) c += weights_.beta_C * terms.comfort;
  return c;
}

double edge_cost(const Pose& p, const Pose& q, const geom::Scene& scene, const CostWeights& w,
                 const ComfortRayConfig& rc) {
  return CostModel(scene, w, rc).edge(p, q);
}

double heuristic_cost(const Pose& p, const Pose& goal, const geom::Scene& scene, const CostWeights& w,
                      const ComfortRayConfig& rc) {
  const CostModel model(scene, w, rc);
  double h = model.distance(p, goal);
  if (w.uses_efficiency()) h += w.beta_E * model.efficiency(goal);
  if (w.uses_comfort()) h += w.beta_C * model.comfort(goal);
  return h;
}

}  // namespace feedplan::costs
