#include <doctest.h>

#include <cmath>
#include <numbers>
#include <sstream>

#include "feedplan/error.hpp"
#include "feedplan/geom/collision.hpp"
#include "feedplan/geom/obj_io.hpp"
#include "feedplan/geom/primitives.hpp"
#include "feedplan/geom/raycast.hpp"
#include "feedplan/geom/scene.hpp"
#include "feedplan/geom/slice.hpp"
#include "support/geom_oracles.hpp"

using namespace feedplan;
using namespace feedplan::geom;
using doctest::Approx;

namespace {
constexpr double kPi = std::numbers::pi;

TriMesh unit_cube() { return make_box({1.0, 1.0, 1.0}); }

TriMesh wall(double z, double half) {
  TriMesh m;
  m.vertices = {{-half, -half, z}, {half, -half, z}, {half, half, z}, {-half, half, z}};
  m.faces = {{0, 1, 2}, {0, 2, 3}};
  return m;
}
}  // namespace

TEST_CASE("pose composition and inverse") {
  std::mt19937_64 rng(7);
  for (int i = 0; i < 100; ++i) {
    const Pose p = testing::random_pose(rng, 1.0);
    CHECK(std::abs(p.rotation().norm() - 1.0) < 1e-9);
    const Pose id = p * p.inverse();
    CHECK(id.translation().norm() < 1e-9);
    CHECK(rotation_angle(id.rotation(), Eigen::Quaterniond::Identity()) < 1e-9);
  }
}

TEST_CASE("pose interpolation endpoints and midpoint") {
  const Pose a({0, 0, 0}, Eigen::Quaterniond::Identity());
  const Pose b = Pose::from_rotation_vector({0.2, 0, 0}, {0, 0, 1.0});
  CHECK(interpolate(a, b, 0.0) == a);
  CHECK(interpolate(a, b, 1.0) == b);
  const Pose mid = interpolate(a, b, 0.5);
  CHECK(mid.translation().x() == Approx(0.1));
  CHECK(rotation_angle(mid.rotation(), a.rotation()) == Approx(0.5));
}

TEST_CASE("carrot mesh volume matches the cylinder") {
  FoodSpec spec;
  spec.dims = CarrotDims{0.005, 0.05};
  const TriMesh m = make_food_mesh(spec);
  CHECK(is_closed(m));
  CHECK(signed_volume(m) > 0.0);
  const double v = kPi * 0.005 * 0.005 * 0.05;
  CHECK(std::abs(mesh_volume(m) - v) / v < 0.02);
  CHECK(volume_centroid(m).norm() < 1e-12);
}

TEST_CASE("every food primitive is closed and outward wound") {
  for (auto kind : {FoodKind::carrot, FoodKind::cantaloupe, FoodKind::celery, FoodKind::strawberry}) {
    for (int seg : {8, 17, 32, 64}) {
      FoodSpec spec = FoodSpec::default_for(kind);
      spec.segments = seg;
      const TriMesh m = make_food_mesh(spec);
      CAPTURE(to_string(kind));
      CHECK(is_closed(m));
      CHECK(signed_volume(m) > 0.0);
      CHECK(volume_centroid(m).norm() < 1e-9);
    }
  }
}

TEST_CASE("celery with full wall is a half cylinder") {
  const double r = 0.012, h = 0.05;
  FoodSpec spec;
  spec.dims = CeleryDims{r, r, h};
  const double v = 0.5 * kPi * r * r * h;
  CHECK(std::abs(mesh_volume(make_food_mesh(spec)) - v) / v < 0.02);
}

TEST_CASE("curved primitives stay within half a percent at default tessellation") {
  FoodSpec carrot;
  carrot.dims = CarrotDims{0.01, 0.1};
  const double vc = kPi * 0.01 * 0.01 * 0.1;
  CHECK(std::abs(mesh_volume(make_food_mesh(carrot)) - vc) / vc < 0.005);

  FoodSpec celery;
  celery.dims = CeleryDims{0.012, 0.004, 0.05};
  const double vt = 0.5 * kPi * (0.012 * 0.012 - 0.008 * 0.008) * 0.05;
  CHECK(std::abs(mesh_volume(make_food_mesh(celery)) - vt) / vt < 0.005);

  FoodSpec melon;
  melon.dims = CantaloupeDims{0.035, 0.02, 0.02, 0.04};
  CHECK(mesh_volume(make_food_mesh(melon)) == Approx(0.5 * (0.035 + 0.02) * 0.02 * 0.04).epsilon(1e-12));
}

TEST_CASE("invalid food specs are rejected") {
  FoodSpec spec;
  spec.dims = CarrotDims{-0.01, 0.05};
  CHECK_THROWS_AS(make_food_mesh(spec), InvalidSpecError);
  spec.dims = CeleryDims{0.01, 0.02, 0.05};
  CHECK_THROWS_AS(make_food_mesh(spec), InvalidSpecError);
  spec = FoodSpec{};
  spec.segments = 4;
  CHECK_THROWS_AS(make_food_mesh(spec), InvalidSpecError);
  CHECK_THROWS_AS(food_kind_from_string("banana"), InvalidSpecError);
}

TEST_CASE("transform_mesh") {
  const TriMesh cube = unit_cube();
  CHECK(transform_mesh(cube, Pose::identity()).vertices == cube.vertices);
  const TriMesh moved = transform_mesh(cube, Pose::from_translation({1, 2, 3}));
  CHECK((volume_centroid(moved) - Eigen::Vector3d(1, 2, 3)).norm() < 1e-12);
  CHECK(moved.faces == cube.faces);
}

TEST_CASE("mesh_volume") {
  CHECK(mesh_volume(unit_cube()) == Approx(1.0).epsilon(1e-12));
  const double v = kPi * 0.01 * 0.01 * 0.1;
  CHECK(std::abs(mesh_volume(make_cylinder(0.01, 0.1, 64, false)) - v) / v < 0.005);

  TriMesh open = unit_cube();
  open.faces.pop_back();
  CHECK_THROWS_AS(mesh_volume(open), TopologyError);
  TriMesh bad = unit_cube();
  bad.faces[0][0] = 99;
  CHECK_THROWS_AS(validate_indices(bad), TopologyError);
}

TEST_CASE("slice_mesh_by_plane") {
  const TriMesh cube = unit_cube();
  SUBCASE("plane below the mesh") {
    const SliceResult r = slice_mesh_by_plane(cube, {{0, 0, -5}, {0, 0, 1}});
    CHECK(r.inside.empty());
    CHECK(mesh_volume(r.outside) == Approx(1.0));
  }
  SUBCASE("plane through the centroid") {
    for (const Eigen::Vector3d n : {Eigen::Vector3d::UnitX(), Eigen::Vector3d::UnitY(), Eigen::Vector3d::UnitZ()}) {
      const SliceResult r = slice_mesh_by_plane(cube, {{0, 0, 0}, n});
      CHECK(is_closed(r.inside));
      CHECK(is_closed(r.outside));
      CHECK(std::abs(mesh_volume(r.inside) - 0.5) < 1e-9);
      CHECK(std::abs(mesh_volume(r.outside) - 0.5) < 1e-9);
      CHECK(bounding_box(r.inside).max.dot(n) <= 1e-12);
    }
  }
  SUBCASE("zero normal") {
    CHECK_THROWS_AS(slice_mesh_by_plane(cube, {{0, 0, 0}, {0, 0, 0}}), InvalidPlaneError);
  }
  SUBCASE("non-convex celery cut across the channel") {
    const TriMesh celery = make_food_mesh(FoodSpec::default_for(FoodKind::celery));
    const SliceResult r = slice_mesh_by_plane(celery, {{0, 0, 0.003}, {0, 0, 1}});
    CHECK(is_closed(r.inside));
    CHECK(is_closed(r.outside));
    CHECK(std::abs(mesh_volume(r.inside) + mesh_volume(r.outside) - mesh_volume(celery)) <
          1e-6 * mesh_volume(celery));
  }
}

TEST_CASE("projection check on a thin coaxial carrot") {
  MouthModel mouth;
  FoodSpec spec;
  spec.dims = CarrotDims{0.3 * std::min(mouth.semi_axis_x, mouth.semi_axis_y), 0.05};
  const TriMesh food = make_food_mesh(spec);
  const RobotProxy proxy = make_robot_proxy(Pose::from_translation({0, 0.165, 0}));
  // Fork +y into the mouth, food tip 1 cm behind the face plane.
  const Pose inserted({0, 0, 0.025 - 0.01}, testing::into_mouth());
  CHECK(projection_collision_check(food, inserted, proxy, mouth) == Verdict::free);
}

TEST_CASE("projection check on a crosswise carrot") {
  MouthModel mouth;
  FoodSpec spec;
  spec.dims = CarrotDims{0.005, 2 * std::max(mouth.semi_axis_x, mouth.semi_axis_y) * 3};
  const TriMesh food = make_food_mesh(spec);
  const RobotProxy proxy = make_robot_proxy(Pose::from_translation({0, 0.165, 0}));
  // Long axis along the mouth x axis, centered on the face plane.
  const Pose across({0, 0, 0}, Eigen::Quaterniond(Eigen::AngleAxisd(kPi / 2, Eigen::Vector3d::UnitZ())));
  CHECK(projection_collision_check(food, across, proxy, mouth) == Verdict::collision);
}

TEST_CASE("end effector may not cross the face plane") {
  MouthModel mouth;
  mouth.semi_axis_x = mouth.semi_axis_y = 1.0;
  mouth.depth_in = 1.0;
  FoodSpec spec;
  const TriMesh food = make_food_mesh(spec);
  const RobotProxy proxy = make_robot_proxy(Pose::from_translation({0, 0.165, 0}));
  CHECK(projection_collision_check(food, Pose({0, 0, -0.05}, testing::into_mouth()), proxy, mouth) ==
        Verdict::free);
  CHECK(projection_collision_check(food, Pose({0, 0, -0.2}, testing::into_mouth()), proxy, mouth) ==
        Verdict::collision);
}

TEST_CASE("raycast_grid examples") {
  MouthModel mouth;
  CHECK(raycast_grid({}, mouth, 16, 16, 0.4, 0.5).empty());

  const auto hits = raycast_grid({wall(0.3, 1.0)}, mouth, 16, 12, 0.4, 0.5);
  CHECK(hits.size() == 16u * 12u);
  for (const auto& h : hits) CHECK(std::abs(h.z() - 0.3) < 1e-9);

  const auto stacked = raycast_grid({wall(0.4, 1.0), wall(0.2, 1.0)}, mouth, 8, 8, 0.4, 0.5);
  CHECK(stacked.size() == 64u);
  for (const auto& h : stacked) CHECK(std::abs(h.z() - 0.2) < 1e-9);

  CHECK(raycast_grid({wall(0.6, 1.0)}, mouth, 4, 4, 0.4, 0.5).empty());
  CHECK(raycast_grid({wall(-0.1, 1.0)}, mouth, 4, 4, 0.4, 0.5).empty());
}

TEST_CASE("raycast_grid in a posed mouth frame") {
  MouthModel mouth;
  mouth.pose = Pose::from_rotation_vector({0.1, 0.2, 0.3}, {0.3, -0.2, 0.5});
  const TriMesh w = transform_mesh(wall(0.25, 1.0), mouth.pose);
  const auto hits = raycast_grid({w}, mouth, 5, 5, 0.4, 0.5);
  CHECK(hits.size() == 25u);
  for (const auto& h : hits) CHECK(std::abs(h.z() - 0.25) < 1e-9);
}

TEST_CASE("obj round trip") {
  const TriMesh m = make_food_mesh(FoodSpec::default_for(FoodKind::strawberry));
  std::stringstream ss;
  write_obj(ss, m);
  const TriMesh back = read_obj(ss);
  CHECK(back.faces == m.faces);
  REQUIRE(back.vertices.size() == m.vertices.size());
  for (std::size_t i = 0; i < m.vertices.size(); ++i) CHECK(back.vertices[i] == m.vertices[i]);

  std::stringstream quad("v 0 0 0\nv 1 0 0\nv 1 1 0\nv 0 1 0\nf 1 2 3 4\n");
  CHECK_THROWS_AS(read_obj(quad), TopologyError);
  std::stringstream tagged("# comment\nv 0 0 0\nv 1 0 0\nv 0 1 0\nvn 0 0 1\nf 1//1 2//1 3//1\n");
  CHECK(read_obj(tagged).faces.size() == 1u);
}

TEST_CASE("scene bundles collision and parts") {
  const Scene scene(make_food_mesh(FoodSpec{}), Pose::from_translation({0, 0.165, 0}), MouthModel{});
  CHECK(scene.rigid_parts().size() == 4u);
  CHECK(scene.food_volume() == Approx(mesh_volume(scene.food())));
  CHECK(scene.is_free(Pose({0, 0, 0.3}, testing::into_mouth())));
  MouthModel bad;
  bad.depth_in = 0.0;
  CHECK_THROWS_AS(Scene(make_food_mesh(FoodSpec{}), Pose{}, bad), InvalidSpecError);
}
