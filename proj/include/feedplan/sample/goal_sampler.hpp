#pragma once

#include <cstdint>
#include <numbers>
#include <random>
#include <vector>

#include "feedplan/error.hpp"
#include "feedplan/geom/scene.hpp"

namespace feedplan::sample {

using geom::Pose;
using Rng = std::mt19937_64;

/// Admissible final poses, expressed in the mouth frame. Orientations are
/// fork orientations whose fork axis lies within `cone_half_angle` of the
/// into-mouth direction (-z), spun about the fork axis; offsets place the food
/// centroid relative to the mouth center.
struct GoalDistribution {
  double cone_half_angle = std::numbers::pi / 4;
  Eigen::Vector3d offset_min{-0.02, -0.02, -0.04};
  Eigen::Vector3d offset_max{0.02, 0.02, 0.01};
  double spin_min = -std::numbers::pi;
  double spin_max = std::numbers::pi;

  void validate() const;
};

struct SampleBudget {
  int target_n = 150;
  int batch_size = 64;
  double timeout_s = 10.0;
  std::uint64_t seed = 1;
  /// Hard cap on batches, so that a budget ends the same way on every machine.
  int max_batches = 200;

  void validate() const;
};

/// Fork orientation pointing the fork's +y axis into the mouth (-z).
Eigen::Quaterniond canonical_fork_rotation();

/// Mouth-frame sample: translation = food centroid offset, rotation = fork
/// orientation. Draws exactly six uniforms from `rng`.
Pose sample_goal(const GoalDistribution& dist, Rng& rng);

/// Angle between the sample's fork axis and the into-mouth direction.
double approach_angle(const Pose& sample);

/// World food pose for a mouth-frame sample.
Pose goal_food_pose(const Pose& sample, const geom::Scene& scene);

/// True if a world food pose lies in the support of `dist`.
bool in_distribution(const Pose& food_pose, const geom::Scene& scene, const GoalDistribution& dist,
                     double tol = 1e-9);

struct SampleStats {
  long attempts = 0;
  long accepted = 0;
  int batches = 0;
  bool timed_out = false;
  double elapsed_s = 0.0;
};

class InfeasibleGoalError : public Error {
 public:
  InfeasibleGoalError(const std::string& what, const SampleStats& stats) : Error(what), stats_(stats) {}
  const SampleStats& stats() const { return stats_; }

 private:
  SampleStats stats_;
};

struct GoalSet {
  std::vector<Pose> goals;  // world food poses, in candidate order
  SampleStats stats;
};

/// Batches of B candidates until target_n pass the projection check, the
/// batch cap is reached, or the timeout expires. Candidates are generated and
/// accepted in a fixed order, so the output depends only on the seed unless
/// the timeout fires. Throws InfeasibleGoalError if nothing passes.
GoalSet sample_collision_free_goals(const geom::Scene& scene, const GoalDistribution& dist,
                                    const SampleBudget& budget);

}  // namespace feedplan::sample
