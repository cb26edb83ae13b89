#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "feedplan/plan/pipeline.hpp"

namespace feedplan::bite {

using geom::Pose;

struct BiteResult {
  double consumed_volume = 0.0;  // m^3, >= 0
  geom::TriMesh remaining;       // same frame as the input food mesh, closed or empty
  int bite_index = 0;
};

/// Everything of the posed food behind the face plane is eaten; the rest,
/// capped at the cut, is what stays on the fork. Valid goals keep the eaten
/// part inside the mouth slab. Throws TopologyError from slicing.
BiteResult simulate_bite(const geom::TriMesh& food, const Pose& goal, const geom::MouthModel& mouth,
                         int bite_index = 0);

/// Translates the mesh so its volume centroid sits at the origin, i.e. at the
/// skewer point of the unchanged food-on-fork transform.
geom::TriMesh reanchor(const geom::TriMesh& mesh);

struct MultibiteConfig {
  plan::PipelineConfig pipeline;
  double stop_fraction = 0.05;  // stop once remaining / initial <= this
  int max_bites = 10;
  double min_progress = 0.01;  // fraction of the current volume a bite must take

  void validate() const;
};

enum class StopReason { consumed, no_trajectory, infeasible_goal, no_progress, max_bites };

std::string to_string(StopReason r);

struct BiteStep {
  plan::Trajectory trajectory;
  BiteResult bite;
  std::uint64_t seed = 0;           // pipeline seed that produced this bite
  bool efficiency_boosted = false;  // accepted on the retry with doubled beta_E
  double remaining_fraction = 0.0;  // after this bite, relative to the initial volume
};

struct MultibiteResult {
  std::vector<BiteStep> bites;
  double initial_volume = 0.0;
  double remaining_volume = 0.0;
  StopReason stop = StopReason::consumed;
  bool partial = false;  // stopped before reaching stop_fraction

  double consumed_fraction() const { return 1.0 - remaining_volume / initial_volume; }
};

/// Pipeline seed of bite `index` under a multi-bite base seed.
std::uint64_t bite_seed(std::uint64_t base, int index);

/// Scenario for the next bite: same fork, start and goal distribution with the
/// re-anchored remaining mesh.
sample::Scenario next_scenario(const sample::Scenario& scenario, const geom::TriMesh& remaining);

/// Greedy plan, bite, re-plan loop. Bite i plans with bite_seed(pipeline.seed, i).
/// A bite taking less than min_progress of the current volume is re-planned
/// once with beta_E doubled; a second miss stops with `partial`. Throws
/// InfeasibleGoalError or NoTrajectoryError when the first bite cannot be
/// planned; later failures end the loop.
MultibiteResult multibite_plan(const sample::Scenario& scenario, const MultibiteConfig& cfg);

}  // namespace feedplan::bite
