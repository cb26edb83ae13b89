#include <doctest.h>

#include <cmath>
#include <random>

#include "feedplan/costs/costs.hpp"
#include "feedplan/error.hpp"
#include "feedplan/geom/primitives.hpp"
#include "support/geom_oracles.hpp"

using namespace feedplan;
using namespace feedplan::costs;
using geom::Pose;
using doctest::Approx;

namespace {

geom::Scene carrot_scene() {
  return geom::Scene(geom::make_food_mesh(geom::FoodSpec{}), Pose::from_translation({0, 0.165, 0}),
                     geom::MouthModel{});
}

/// Coaxial food pose with the far end `depth` behind the face plane.
Pose coaxial_insert(double half_length, double depth) {
  return Pose({0, 0, half_length - depth}, testing::into_mouth());
}

}  // namespace

TEST_CASE("pose_distance examples") {
  const Pose p = Pose::from_rotation_vector({0.1, 0.2, 0.3}, {0.2, 0.1, 0.0});
  CHECK(pose_distance(p, p) == 0.0);
  const Pose q = Pose(p.translation() + Eigen::Vector3d(0.003, 0.004, 0.0), p.rotation());
  CHECK(pose_distance(p, q) == Approx(0.005).epsilon(1e-12));
  const Pose r = Pose::from_rotation_vector({0, 0, 0}, {0, 0.5, 0});
  CHECK(pose_distance(Pose{}, r, 0.1) == Approx(0.05).epsilon(1e-12));
}

TEST_CASE("pose_distance is a metric") {
  std::mt19937_64 rng(21);
  for (int i = 0; i < 200; ++i) {
    const Pose a = testing::random_pose(rng, 0.2), b = testing::random_pose(rng, 0.2),
               c = testing::random_pose(rng, 0.2);
    CHECK(pose_distance(a, b) == Approx(pose_distance(b, a)).epsilon(1e-12));
    CHECK(pose_distance(a, c) <= pose_distance(a, b) + pose_distance(b, c) + 1e-12);
    CHECK(pose_distance(a, b) > 0.0);
  }
}

TEST_CASE("cost_efficiency examples") {
  const geom::TriMesh food = geom::make_food_mesh(geom::FoodSpec{});
  const geom::MouthModel mouth;
  const double half = 0.5 * geom::CarrotDims{}.length;
  CHECK(cost_efficiency(coaxial_insert(half, 0.055), food, mouth) == 0.0);
  CHECK(cost_efficiency(coaxial_insert(half, -0.01), food, mouth) == 1.0);
  CHECK(efficiency_from_volumes(1.0, 8.0) == Approx(0.5).epsilon(1e-15));
  // Prism volume is linear in the inserted length, so an eighth inserted is exact.
  CHECK(cost_efficiency(coaxial_insert(half, 2 * half / 8), food, mouth) == Approx(0.5).epsilon(1e-9));
  // Beyond depth_in the slab caps what counts as inside.
  geom::FoodSpec longer;
  longer.dims = geom::CarrotDims{0.008, 0.12};
  const geom::TriMesh long_food = geom::make_food_mesh(longer);
  CHECK(cost_efficiency(coaxial_insert(0.06, 0.09), long_food, mouth) ==
        Approx(1.0 - std::cbrt(0.5)).epsilon(1e-9));
}

TEST_CASE("cost_efficiency rejects open meshes") {
  geom::TriMesh food = geom::make_food_mesh(geom::FoodSpec{});
  food.faces.pop_back();
  CHECK_THROWS_AS(cost_efficiency(coaxial_insert(0.025, 0.01), food, geom::MouthModel{}), TopologyError);
}

TEST_CASE("efficiency is monotone in insertion depth") {
  const geom::TriMesh food = geom::make_food_mesh(geom::FoodSpec{});
  double previous = 1.0;
  for (int i = 0; i <= 60; ++i) {
    const double c = cost_efficiency(coaxial_insert(0.025, -0.005 + 0.001 * i), food, geom::MouthModel{});
    CHECK(c >= 0.0);
    CHECK(c <= 1.0);
    CHECK(c <= previous);
    previous = c;
  }
  CHECK(previous == 0.0);
}

TEST_CASE("cost_comfort_spatial examples") {
  CostWeights w;
  CHECK(cost_comfort_spatial({0, 0}, 0.3, w) == 0.0);
  CHECK(cost_comfort_spatial({0, 1}, 1.0, w) == Approx(1.0 - std::exp(-1.5)).epsilon(1e-12));
  CHECK(cost_comfort_spatial({0, 1}, 1.0, w) == Approx(0.7769).epsilon(1e-4));
  w.r_up = 1.0;
  CHECK(cost_comfort_spatial({1, 0}, 1.0, w) == Approx(0.6321).epsilon(1e-4));
}

TEST_CASE("cost_comfort_spatial properties") {
  const CostWeights w;
  std::mt19937_64 rng(22);
  // Offsets up to 1.5 z keep the exponent small enough that 1 - exp stays below 1 in doubles.
  std::uniform_real_distribution<double> u(-1.5, 1.5), zu(0.005, 0.5);
  for (int i = 0; i < 2000; ++i) {
    const double z = zu(rng);
    const Eigen::Vector2d x(z * u(rng), z * u(rng));
    const double c = cost_comfort_spatial(x, z, w);
    CHECK(c >= 0.0);
    CHECK(c < 1.0);
    CHECK(c == cost_comfort_spatial({-x.x(), x.y()}, z, w));
    const double d = std::abs(x.y()) + 1e-3 * z;
    CHECK(cost_comfort_spatial({0, d}, z, w) > cost_comfort_spatial({0, -d}, z, w));
    if (std::abs(x.x()) > 1e-3 * z) {
      const Eigen::Vector2d wider(x.x() * 1.1, x.y());
      CHECK(cost_comfort_spatial(wider, z, w) > c);
    }
    if (c > 1e-12 && c < 1.0 - 1e-12) CHECK(cost_comfort_spatial(x, z * 1.1, w) < c);
  }
  CHECK(cost_comfort_spatial({1e-6, 0}, 1.0, w) > 0.0);
}

TEST_CASE("comfort from ray hits") {
  CostWeights w;
  ComfortRayConfig rc;
  CHECK(comfort_from_hits({}, rc, w) == 0.0);
  CHECK(comfort_from_hits({{0, 0, 0.1}, {0, 0, 0.3}}, rc, w) == 0.0);

  // A 16x16 grid over a 32 x 32 square puts one ray at (1, 1); with alpha = 1/2
  // that ray sees the same quadratic form as x = (1, 0), z = 1 with alpha = 1.
  w.alpha = 0.5;
  w.r_up = 1.0;
  rc.extent = 32.0;
  rc.z_max = 2.0;
  geom::TriMesh patch;
  patch.vertices = {{0.5, 0.5, 1.0}, {1.5, 0.5, 1.0}, {1.0, 1.5, 1.0}};
  patch.faces = {{0, 1, 2}};
  const auto hits = geom::raycast_grid({patch}, geom::MouthModel{}, 16, 16, rc.extent, rc.z_max);
  REQUIRE(hits.size() == 1u);
  CHECK(comfort_from_hits(hits, rc, w) == Approx((1.0 - std::exp(-1.0)) / 256.0).epsilon(1e-12));
  CHECK(comfort_from_hits(hits, rc, w) == Approx(0.00247).epsilon(1e-2));
}

TEST_CASE("comfort of a pose") {
  const geom::Scene scene = carrot_scene();
  const CostModel model(scene, CostWeights{});
  const Pose far({0, 0, 0.45}, testing::into_mouth());
  const Pose near({0, 0, 0.0}, testing::into_mouth());
  const double c_far = model.comfort(far);
  const double c_near = model.comfort(near);
  CHECK(c_far >= 0.0);
  CHECK(c_near > c_far);
  CHECK(c_near < 1.0);
  // Tilting the approach pushes the end effector off the mouth axis.
  const Pose tilted({0, 0, 0.0}, Eigen::Quaterniond(Eigen::AngleAxisd(0.6, Eigen::Vector3d::UnitX())) *
                                      testing::into_mouth());
  CHECK(model.comfort(tilted) > c_near);
}

TEST_CASE("edge_cost examples") {
  const geom::Scene scene = carrot_scene();
  const Pose p({0.01, 0, 0.1}, testing::into_mouth());
  const Pose q({0.0, 0.02, 0.05}, testing::into_mouth());
  for (CostMode mode : {CostMode::distance, CostMode::efficiency, CostMode::comfort, CostMode::combined}) {
    CostWeights w;
    w.mode = mode;
    CHECK(edge_cost(p, p, scene, w) == 0.0);
  }
  CostWeights comfort;
  comfort.mode = CostMode::comfort;
  comfort.gamma_C = 0.0;
  CHECK(edge_cost(p, q, scene, comfort) == pose_distance(p, q));
  CHECK(comfort_weighted_edge(0.1, 0.2, 10.0) == Approx(0.3).epsilon(1e-15));

  comfort.gamma_C = 10.0;
  const CostModel model(scene, comfort);
  CHECK(model.edge(p, q) == Approx(comfort_weighted_edge(pose_distance(p, q),
                                                         model.comfort(geom::interpolate(p, q, 0.5)), 10.0)));
  CHECK(model.edge(p, q) > pose_distance(p, q));
}

TEST_CASE("edge_cost is symmetric") {
  const geom::Scene scene = carrot_scene();
  std::mt19937_64 rng(23);
  for (CostMode mode : {CostMode::distance, CostMode::efficiency, CostMode::comfort, CostMode::combined}) {
    CostWeights w;
    w.mode = mode;
    const CostModel model(scene, w);
    for (int i = 0; i < 50; ++i) {
      const Pose a = Pose(testing::random_pose(rng, 0.1).translation() + Eigen::Vector3d(0, 0, 0.15),
                          testing::random_rotation(rng));
      const Pose b = Pose(a.translation() + testing::random_pose(rng, 0.02).translation(), a.rotation());
      CHECK(model.edge(a, b) == model.edge(b, a));
    }
  }
}

TEST_CASE("heuristic_cost examples") {
  const geom::Scene scene = carrot_scene();
  const Pose goal({0, 0, 0.0}, testing::into_mouth());
  const Pose p({0.05, 0, 0.0}, testing::into_mouth());
  CostWeights w;
  w.mode = CostMode::distance;
  CHECK(heuristic_cost(goal, goal, scene, w) == 0.0);

  w.mode = CostMode::combined;
  const CostModel model(scene, w);
  CHECK(model.heuristic(p, goal, GoalTerms{0.5, 0.1}) == Approx(1.55).epsilon(1e-12));

  CostWeights zero = w;
  zero.beta_E = zero.beta_C = 0.0;
  CostWeights dist = w;
  dist.mode = CostMode::distance;
  CHECK(heuristic_cost(p, goal, scene, zero) == heuristic_cost(p, goal, scene, dist));
}

TEST_CASE("combined heuristic dominates distance") {
  const geom::Scene scene = carrot_scene();
  std::mt19937_64 rng(24);
  CostWeights comb, dist;
  dist.mode = CostMode::distance;
  for (int i = 0; i < 30; ++i) {
    const Pose p = testing::random_pose(rng, 0.2);
    const Pose g(testing::random_pose(rng, 0.02).translation(), testing::into_mouth());
    CHECK(heuristic_cost(p, g, scene, comb) >= heuristic_cost(p, g, scene, dist));
  }
}

TEST_CASE("invalid weights") {
  CostWeights w;
  w.r_up = 0.0;
  CHECK_THROWS_AS(w.validate(), InvalidSpecError);
  w = CostWeights{};
  w.beta_C = -1.0;
  CHECK_THROWS_AS(w.validate(), InvalidSpecError);
  ComfortRayConfig rc;
  rc.grid_n = 1;
  rc.grid_m = 3;
  CHECK_THROWS_AS(rc.validate(), InvalidSpecError);
  CHECK(cost_mode_from_string("comfort") == CostMode::comfort);
  CHECK_THROWS_AS(cost_mode_from_string("fast"), InvalidSpecError);
}
