#pragma once

#include <cstdint>
#include <optional>
#include <random>
#include <vector>

#include "feedplan/plan/trajectory.hpp"

namespace feedplan::plan {

using Rng = std::mt19937_64;

struct PlannerConfig {
  double step_eps = 0.01;
  int knn_k = 8;
  int max_iters = 5000;
  double edge_check_resolution = 0.005;
  double clearance = 0.001;        // margin kept by every new sample; start and goals are exempt
  double goal_connect_radius = 0.005;
  int smoothing_iters = 200;
  double m_floor = 0.1;
  std::uint64_t seed = 1;
  double goal_bias = 0.1;          // chance of sampling the opposing root
  double sample_margin = 0.05;     // padding of the translation sampling box
  double rotation_jitter = 0.3;    // radians, around the start-goal slerp
  bool straight_line_first = true;  // try the direct edge to each goal before growing trees
  bool keep_trees = false;          // copy the final trees into the result

  void validate() const;
};

struct TreeNode {
  Pose pose;
  int parent = -1;
  double g = 0.0;    // edge-cost sum from the tree root
  double h = 0.0;    // heuristic toward the opposing root
  double c = 0.0;    // g + h
  double m_q = 1.0;  // quality, refreshed whenever the node is a candidate
};

/// Search tree rooted at a start or goal pose. `c_star` and `c_max` bound the
/// node totals used for quality weighting.
struct Tree {
  std::vector<TreeNode> nodes;
  int goal_index = -1;  // -1 for the start tree
  double c_star = 0.0;
  double c_max = 0.0;

  std::size_t size() const { return nodes.size(); }
  std::vector<Pose> path_to_root(int node) const;
};

/// Softmax over -cost / tau across unconnected trees. Without an explicit tau,
/// tau = 0.5 * median of their costs (uniform when that median is 0).
/// Returns -1 if all are connected.
int select_goal_tree(const std::vector<double>& goal_costs, const std::vector<bool>& connected, Rng& rng,
                     std::optional<double> tau = std::nullopt);

/// Index drawn with probability proportional to max(m_q, m_floor).
int select_by_quality(const std::vector<double>& m_q, double m_floor, Rng& rng);

/// Indices of the k nearest nodes to `q` (ties broken by index).
std::vector<int> nearest_k(const Tree& tree, const Pose& q, int k, double w_rot);

/// Pose at most `step` from `from` along the geodesic toward `to`.
Pose steer(const Pose& from, const Pose& to, double step, double w_rot);

struct PlannerStats {
  int iterations = 0;
  long start_nodes = 0;
  long goal_nodes = 0;
  long rejected_edges = 0;
  long quality_clamps = 0;
  int straight_line_hits = 0;
};

struct HbirrtResult {
  std::vector<std::optional<Trajectory>> trajectories;  // one slot per goal
  std::vector<int> connected_at;                        // iteration, -1 if unreached
  PlannerStats stats;
  std::optional<Tree> start_tree;  // only with keep_trees
  std::vector<Tree> goal_trees;
};

/// Bidirectional search from `start` to every goal at once: one start tree
/// and one tree per goal. Throws InvalidStartError if the start collides.
/// Deterministic for a fixed config seed.
HbirrtResult hbirrt_plan(const costs::CostModel& model, const Pose& start, const std::vector<Pose>& goals,
                         const std::vector<costs::GoalTerms>& goal_terms, const PlannerConfig& cfg);

}  // namespace feedplan::plan
