#include "feedplan/plan/pipeline.hpp"

#include <chrono>

#include "feedplan/seed.hpp"

namespace feedplan::plan {

namespace {

class Stopwatch {
 public:
  double lap() {
    const auto now = std::chrono::steady_clock::now();
    const double s = std::chrono::duration<double>(now - last_).count();
    last_ = now;
    return s;
  }

 private:
  std::chrono::steady_clock::time_point last_ = std::chrono::steady_clock::now();
};

enum Stream : std::uint64_t { kSample = 1, kCluster = 2, kPlan = 3, kSmooth = 4 };

}  // namespace

void PipelineConfig::validate() const {
  weights.validate();
  rays.validate();
  budget.validate();
  planner.validate();
  if (k < 1) throw InvalidSpecError("k must be >= 1");
}

PlanOutcome plan_bite(const sample::Scenario& scenario, const PipelineConfig& cfg) {
  cfg.validate();
  PlanOutcome out;
  Stopwatch clock;
  const costs::CostModel model(scenario.scene, cfg.weights, cfg.rays);
  if (!scenario.scene.is_free(scenario.start)) throw InvalidStartError("start pose is in collision");

  sample::SampleBudget budget = cfg.budget;
  budget.seed = derive_seed(cfg.seed, kSample);
  out.samples = sample::sample_collision_free_goals(scenario.scene, scenario.goals, budget);
  out.timings.sample_s = clock.lap();

  out.clusters = sample::cluster_kmedoids(out.samples.goals, cfg.k, cfg.weights.w_rot, derive_seed(cfg.seed, kCluster));
  out.goals = out.clusters.medoids;
  out.timings.cluster_s = clock.lap();

  for (const Pose& g : out.goals) out.goal_terms.push_back(model.goal_terms(g));
  out.timings.goal_terms_s = clock.lap();

  PlannerConfig pc = cfg.planner;
  pc.seed = derive_seed(cfg.seed, kPlan);
  out.search = hbirrt_plan(model, scenario.start, out.goals, out.goal_terms, pc);
  out.timings.plan_s = clock.lap();

  out.smoothed.resize(out.goals.size());
  for (std::size_t i = 0; i < out.goals.size(); ++i) {
    if (!out.search.trajectories[i]) continue;
    out.smoothed[i] = smooth_path(*out.search.trajectories[i], model, pc, derive_seed(cfg.seed, kSmooth, i));
    out.candidates.push_back(*out.smoothed[i]);
  }
  out.timings.smooth_s = clock.lap();

  if (!out.candidates.empty()) out.selected = select_trajectory(out.candidates);
  return out;
}

}  // namespace feedplan::plan
