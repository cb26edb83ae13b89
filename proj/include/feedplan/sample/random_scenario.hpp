#pragma once

#include <cstdint>
#include <numbers>
#include <optional>

#include "feedplan/geom/primitives.hpp"
#include "feedplan/sample/scenario.hpp"

namespace feedplan::sample {

/// Ranges for randomized benchmark scenarios. Start offsets are in the mouth
/// frame and place the food centroid in front of the face.
struct RandomScenarioSpec {
  std::optional<geom::FoodKind> kind;  // any of the four when unset
  double scale_min = 0.8;
  double scale_max = 1.2;
  Eigen::Vector3d start_min{-0.05, -0.10, 0.18};
  Eigen::Vector3d start_max{0.05, 0.0, 0.28};
  double start_tilt_max = 0.5;  // radians away from the into-mouth direction
  geom::MouthModel mouth;
  GoalDistribution goals;
  geom::ProxyDims proxy;
  double skewer_y = 0.165;  // food centroid along the fork
  /// Angle between the food long axis and the fork. pi/2 skewers crosswise,
  /// so deep insertion needs a tilted fork.
  double skewer_angle = std::numbers::pi / 2;
};

/// Food kind and scale, roll of the skewered food about the fork, and a tilted start
/// pose, all drawn from `seed`. Start poses that collide are redrawn.
Scenario random_scenario(std::uint64_t seed, const RandomScenarioSpec& spec = {});

}  // namespace feedplan::sample
