#include "feedplan/geom/scene.hpp"

namespace feedplan::geom {

namespace {
const MouthModel& validated(const MouthModel& mouth) {
  mouth.validate();
  return mouth;
}
}  // namespace

Scene::Scene(TriMesh food, const Pose& food_on_fork, const MouthModel& mouth, const ProxyDims& dims)
    : food_(std::move(food)),
      food_on_fork_(food_on_fork),
      mouth_(validated(mouth)),
      dims_(dims),
      proxy_(make_robot_proxy(food_on_fork, dims)),
      collision_(food_, proxy_),
      food_volume_(mesh_volume(food_)) {
  parts_.push_back(food_);
  for (const ProxyBody& body : proxy_.bodies) parts_.push_back(transform_mesh(body.mesh, body.offset));
}

}  // namespace feedplan::geom
