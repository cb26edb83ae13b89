#include "feedplan/plan/smoothing.hpp"

#include <random>

namespace feedplan::plan {

Trajectory smooth_path(const Trajectory& traj, const costs::CostModel& model, const PlannerConfig& cfg,
                       std::uint64_t seed) {
  Trajectory out = traj;
  std::vector<Pose>& w = out.waypoints;
  std::vector<double>& e = out.edge_costs;
  const double w_rot = model.weights().w_rot;
  Rng rng(seed);

  for (int it = 0; it < cfg.smoothing_iters; ++it) {
    const int n = static_cast<int>(w.size());
    if (n < 3) break;
    std::uniform_int_distribution<int> pick(0, n - 1);
    int i = pick(rng), j = pick(rng);
    if (i > j) std::swap(i, j);
    if (j - i < 2) continue;

    double old_cost = 0.0;
    for (int k = i; k < j; ++k) old_cost += e[k];
    // Path length lower-bounds every mode's edge cost.
    if (model.distance(w[i], w[j]) > old_cost) continue;

    const std::vector<Pose> seg = discretize(w[i], w[j], cfg.step_eps, w_rot);
    std::vector<double> seg_cost;
    double new_cost = 0.0;
    bool ok = true;
    for (std::size_t k = 1; k < seg.size() && ok; ++k) {
      const EdgeEnd end = k + 1 == seg.size() ? EdgeEnd::known_free : EdgeEnd::check;
      if (!edge_is_free(model.scene(), seg[k - 1], seg[k], cfg.edge_check_resolution, w_rot, cfg.clearance, end)) {
        ok = false;
        break;
      }
      seg_cost.push_back(model.edge(seg[k - 1], seg[k]));
      new_cost += seg_cost.back();
      ok = new_cost <= old_cost;
    }
    if (!ok || new_cost > old_cost) continue;

    std::vector<Pose> nw(w.begin(), w.begin() + i);
    nw.insert(nw.end(), seg.begin(), seg.end());
    nw.insert(nw.end(), w.begin() + j + 1, w.end());
    std::vector<double> ne(e.begin(), e.begin() + i);
    ne.insert(ne.end(), seg_cost.begin(), seg_cost.end());
    ne.insert(ne.end(), e.begin() + j, e.end());
    w = std::move(nw);
    e = std::move(ne);
  }

  out.path_cost = 0.0;
  for (double c : e) out.path_cost += c;
  out.total_cost = out.path_cost + out.goal_penalty;
  return out;
}

}  // namespace feedplan::plan
