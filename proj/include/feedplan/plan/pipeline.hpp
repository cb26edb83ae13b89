#pragma once

#include <optional>
#include <vector>

#include "feedplan/plan/smoothing.hpp"
#include "feedplan/sample/kmedoids.hpp"
#include "feedplan/sample/scenario.hpp"

namespace feedplan::plan {

struct PipelineConfig {
  costs::CostWeights weights;
  costs::ComfortRayConfig rays;
  sample::SampleBudget budget;
  PlannerConfig planner;
  int k = 15;  // goal clusters
  /// Sampling, clustering, planning and smoothing seeds all derive from this.
  std::uint64_t seed = 1;

  void validate() const;
};

struct PhaseTimings {
  double sample_s = 0.0;
  double cluster_s = 0.0;
  double goal_terms_s = 0.0;
  double plan_s = 0.0;
  double smooth_s = 0.0;
};

struct PlanOutcome {
  sample::GoalSet samples;
  sample::KMedoidsResult clusters;
  std::vector<Pose> goals;                   // medoids, in cluster order
  std::vector<costs::GoalTerms> goal_terms;  // per medoid
  HbirrtResult search;
  std::vector<std::optional<Trajectory>> smoothed;  // per medoid
  std::vector<Trajectory> candidates;               // reached goals only, goal order
  std::optional<Trajectory> selected;
  PhaseTimings timings;
};

/// Samples goals, clusters them, plans to every medoid, smooths, and picks
/// the cheapest trajectory. `selected` is empty when no goal was reached.
/// Throws InfeasibleGoalError and InvalidStartError from the stages below.
PlanOutcome plan_bite(const sample::Scenario& scenario, const PipelineConfig& cfg);

}  // namespace feedplan::plan
