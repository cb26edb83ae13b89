#include "feedplan/cli/report.hpp"

namespace feedplan::cli {

namespace {

Json weights_json(const costs::CostWeights& w) {
  return Json{{"mode", std::string(costs::to_string(w.mode))},
              {"alpha", w.alpha},
              {"r_up", w.r_up},
              {"r_down", w.r_down},
              {"r_side", w.r_side},
              {"beta_E", w.beta_E},
              {"beta_C", w.beta_C},
              {"gamma_C", w.gamma_C},
              {"w_rot", w.w_rot}};
}

Json scenario_json(const ScenarioConfig& cfg, const sample::Scenario& scenario) {
  return Json{{"food", std::string(geom::to_string(cfg.food.kind()))},
              {"food_volume", scenario.scene.food_volume()},
              {"start", pose_json(scenario.start)},
              {"mouth_pose", pose_json(scenario.scene.mouth().pose)}};
}

}  // namespace

Json pose_json(const Pose& p) {
  const Eigen::Vector3d t = p.translation();
  const Eigen::Vector3d r = p.rotation_vector();
  return Json::array({t.x(), t.y(), t.z(), r.x(), r.y(), r.z()});
}

Json trajectory_json(const plan::Trajectory& traj, const costs::CostModel& model, bool with_waypoints) {
  double distance = 0.0;
  for (std::size_t i = 0; i + 1 < traj.waypoints.size(); ++i)
    distance += model.distance(traj.waypoints[i], traj.waypoints[i + 1]);
  Json out{{"goal_index", traj.goal_index},
           {"waypoint_count", traj.waypoints.size()},
           {"distance", distance},
           {"path_comfort", plan::path_mean_comfort(traj, model)},
           {"goal_comfort", traj.goal_terms.comfort},
           {"efficiency", traj.goal_terms.efficiency},
           {"path_cost", traj.path_cost},
           {"goal_penalty", traj.goal_penalty},
           {"total_cost", traj.total_cost}};
  if (with_waypoints) {
    Json w = Json::array();
    for (const Pose& p : traj.waypoints) w.push_back(pose_json(p));
    out["waypoints"] = std::move(w);
  }
  return out;
}

Json plan_report(const ScenarioConfig& cfg, const sample::Scenario& scenario, const plan::PlanOutcome& outcome) {
  const costs::CostModel model(scenario.scene, cfg.weights, cfg.rays);
  Json report{{"command", "plan"}, {"seed", cfg.seed}, {"weights", weights_json(cfg.weights)}};
  report["scenario"] = scenario_json(cfg, scenario);

  const auto& st = outcome.samples.stats;
  report["sampling"] = Json{{"goal_count", outcome.samples.goals.size()},
                           {"attempts", st.attempts},
                           {"batches", st.batches},
                           {"timed_out", st.timed_out}};

  const auto& cl = outcome.clusters;
  Json medoids = Json::array();
  for (std::size_t i = 0; i < outcome.goals.size(); ++i) {
    medoids.push_back(Json{{"sample_index", cl.medoid_indices[i]},
                           {"pose", pose_json(outcome.goals[i])},
                           {"efficiency", outcome.goal_terms[i].efficiency},
                           {"comfort", outcome.goal_terms[i].comfort}});
  }
  report["clustering"] = Json{{"k", cl.medoids.size()},
                              {"requested_k", cl.requested_k},
                              {"total_cost", cl.total_cost},
                              {"swap_iterations", cl.swap_iterations}};
  report["medoids"] = std::move(medoids);

  Json goals = Json::array();
  for (std::size_t i = 0; i < outcome.goals.size(); ++i) {
    Json g{{"goal_index", i}, {"reached", outcome.smoothed[i].has_value()},
           {"connected_at", outcome.search.connected_at[i]}};
    if (outcome.smoothed[i]) g["trajectory"] = trajectory_json(*outcome.smoothed[i], model, false);
    goals.push_back(std::move(g));
  }
  report["goals"] = std::move(goals);
  report["selected"] = outcome.selected ? trajectory_json(*outcome.selected, model, true) : Json(nullptr);

  const auto& ps = outcome.search.stats;
  report["planner"] = Json{{"iterations", ps.iterations},
                           {"start_nodes", ps.start_nodes},
                           {"goal_nodes", ps.goal_nodes},
                           {"rejected_edges", ps.rejected_edges},
                           {"quality_clamps", ps.quality_clamps},
                           {"straight_line_hits", ps.straight_line_hits}};

  const auto& t = outcome.timings;
  report["timings"] = Json{{"sample_s", t.sample_s},
                           {"cluster_s", t.cluster_s},
                           {"goal_terms_s", t.goal_terms_s},
                           {"plan_s", t.plan_s},
                           {"smooth_s", t.smooth_s},
                           {"total_s", t.sample_s + t.cluster_s + t.goal_terms_s + t.plan_s + t.smooth_s}};
  return report;
}

Json multibite_report(const ScenarioConfig& cfg, const sample::Scenario& scenario, const bite::MultibiteResult& result,
                      double elapsed_s) {
  Json report{{"command", "multibite"}, {"seed", cfg.seed}, {"weights", weights_json(cfg.weights)}};
  report["scenario"] = scenario_json(cfg, scenario);
  report["stop_fraction"] = cfg.stop_fraction;
  report["initial_volume"] = result.initial_volume;
  report["remaining_volume"] = result.remaining_volume;
  report["consumed_fraction"] = result.consumed_fraction();
  report["bite_count"] = result.bites.size();
  report["stop"] = bite::to_string(result.stop);
  report["partial"] = result.partial;

  // Each bite is costed against the scene it was planned in.
  Json bites = Json::array();
  sample::Scenario current = scenario;
  for (std::size_t i = 0; i < result.bites.size(); ++i) {
    const bite::BiteStep& b = result.bites[i];
    const costs::CostModel model(current.scene, cfg.weights, cfg.rays);
    bites.push_back(Json{{"index", i},
                         {"seed", b.seed},
                         {"efficiency_boosted", b.efficiency_boosted},
                         {"volume_before", current.scene.food_volume()},
                         {"consumed_volume", b.bite.consumed_volume},
                         {"remaining_volume", geom::mesh_volume(b.bite.remaining)},
                         {"remaining_fraction", b.remaining_fraction},
                         {"trajectory", trajectory_json(b.trajectory, model, true)}});
    if (i + 1 < result.bites.size()) current = bite::next_scenario(current, b.bite.remaining);
  }
  report["bites"] = std::move(bites);
  report["timings"] = Json{{"total_s", elapsed_s}};
  return report;
}

std::string dump_report(Json report, bool with_timings) {
  if (!with_timings) report.erase("timings");
  return report.dump(2) + "\n";
}

}  // namespace feedplan::cli
