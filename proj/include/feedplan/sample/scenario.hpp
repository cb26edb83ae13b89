#pragma once

#include "feedplan/sample/goal_sampler.hpp"

namespace feedplan::sample {

/// One planning query: the scene, where the food starts, and where it may end.
struct Scenario {
  geom::Scene scene;
  Pose start;
  GoalDistribution goals;
};

}  // namespace feedplan::sample
