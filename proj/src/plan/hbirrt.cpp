#include "feedplan/plan/hbirrt.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "feedplan/error.hpp"
#include "feedplan/plan/quality.hpp"

namespace feedplan::plan {

void PlannerConfig::validate() const {
  if (!(step_eps > 0.0 && edge_check_resolution > 0.0 && goal_connect_radius > 0.0)) {
    throw InvalidSpecError("planner step, edge resolution and connect radius must be > 0");
  }
  if (knn_k < 1) throw InvalidSpecError("knn_k must be >= 1");
  if (max_iters < 0 || smoothing_iters < 0) throw InvalidSpecError("iteration counts must be >= 0");
  if (!(m_floor > 0.0 && m_floor <= 1.0)) throw InvalidSpecError("m_floor must be in (0, 1]");
  if (!(goal_bias >= 0.0 && goal_bias <= 1.0)) throw InvalidSpecError("goal_bias must be in [0, 1]");
  if (!(sample_margin >= 0.0 && rotation_jitter >= 0.0)) throw InvalidSpecError("sampling spreads must be >= 0");
  if (!(clearance >= 0.0)) throw InvalidSpecError("clearance must be >= 0");
}

std::vector<Pose> Tree::path_to_root(int node) const {
  std::vector<Pose> out;
  for (int i = node; i >= 0; i = nodes[i].parent) out.push_back(nodes[i].pose);
  return out;
}

int select_goal_tree(const std::vector<double>& goal_costs, const std::vector<bool>& connected, Rng& rng,
                     std::optional<double> tau_override) {
  std::vector<int> open;
  for (std::size_t i = 0; i < goal_costs.size(); ++i) {
    if (!connected[i]) open.push_back(static_cast<int>(i));
  }
  if (open.empty()) return -1;
  if (open.size() == 1) return open.front();

  std::vector<double> c;
  for (int i : open) c.push_back(goal_costs[i]);
  std::vector<double> sorted = c;
  std::sort(sorted.begin(), sorted.end());
  const std::size_t m = sorted.size();
  const double median = m % 2 ? sorted[m / 2] : 0.5 * (sorted[m / 2 - 1] + sorted[m / 2]);
  const double tau = tau_override ? *tau_override : 0.5 * median;

  std::vector<double> w(c.size(), 1.0);
  if (tau > 0.0) {
    const double lo = sorted.front();
    for (std::size_t i = 0; i < c.size(); ++i) w[i] = std::exp(-(c[i] - lo) / tau);
  }
  std::discrete_distribution<int> pick(w.begin(), w.end());
  return open[pick(rng)];
}

int select_by_quality(const std::vector<double>& m_q, double m_floor, Rng& rng) {
  std::vector<double> w;
  w.reserve(m_q.size());
  for (double q : m_q) w.push_back(std::max(q, m_floor));
  std::discrete_distribution<int> pick(w.begin(), w.end());
  return pick(rng);
}

std::vector<int> nearest_k(const Tree& tree, const Pose& q, int k, double w_rot) {
  const int n = static_cast<int>(tree.size());
  std::vector<std::pair<double, int>> d;
  d.reserve(n);
  for (int i = 0; i < n; ++i) d.emplace_back(costs::pose_distance(tree.nodes[i].pose, q, w_rot), i);
  const int kk = std::min(k, n);
  std::partial_sort(d.begin(), d.begin() + kk, d.end());
  std::vector<int> out;
  for (int i = 0; i < kk; ++i) out.push_back(d[i].second);
  return out;
}

Pose steer(const Pose& from, const Pose& to, double step, double w_rot) {
  const double d = costs::pose_distance(from, to, w_rot);
  if (d <= step) return to;
  return geom::interpolate(from, to, step / d);
}

namespace {

class Search {
 public:
  Search(const costs::CostModel& model, const Pose& start, const std::vector<Pose>& goals,
         const std::vector<costs::GoalTerms>& terms, const PlannerConfig& cfg)
      : model_(model), start_(start), goals_(goals), terms_(terms), cfg_(cfg), rng_(cfg.seed) {
    const double w = model.weights().w_rot;
    w_rot_ = w;
    for (const auto& t : terms) penalty_.push_back(model.goal_penalty(t));
    for (std::size_t i = 0; i < goals.size(); ++i) {
      goal_cost_.push_back(model.heuristic(start, goals[i], terms[i]));
    }
    start_cmax_ = goal_cost_;

    start_tree_.nodes.push_back({start, -1, 0.0, 0.0, 0.0, 1.0});
    for (std::size_t i = 0; i < goals.size(); ++i) {
      Tree t;
      t.goal_index = static_cast<int>(i);
      const double h = model.distance(goals[i], start);
      t.nodes.push_back({goals[i], -1, 0.0, h, h, 1.0});
      t.c_star = t.c_max = h;
      goal_trees_.push_back(std::move(t));
    }

    box_min_ = box_max_ = start.translation();
    for (const Pose& g : goals) {
      box_min_ = box_min_.cwiseMin(g.translation());
      box_max_ = box_max_.cwiseMax(g.translation());
    }
    box_min_.array() -= cfg.sample_margin;
    box_max_.array() += cfg.sample_margin;
  }

  HbirrtResult run(const std::vector<bool>& skip) {
    HbirrtResult res;
    res.trajectories.resize(goals_.size());
    res.connected_at.assign(goals_.size(), -1);
    std::vector<bool> connected = skip;

    int iter = 0;
    for (; iter < cfg_.max_iters; ++iter) {
      const int gi = select_goal_tree(goal_cost_, connected, rng_);
      if (gi < 0) break;
      Tree& goal_tree = goal_trees_[gi];
      const bool start_first = start_tree_.size() <= goal_tree.size();
      Tree& a = start_first ? start_tree_ : goal_tree;
      Tree& b = start_first ? goal_tree : start_tree_;
      const Pose q = random_sample(gi, start_first);

      int a_node = -1, b_node = -1;
      if (connect(a, b, gi, q, a_node, b_node)) {
        const int s_node = start_first ? a_node : b_node;
        const int g_node = start_first ? b_node : a_node;
        std::vector<Pose> path = start_tree_.path_to_root(s_node);
        std::reverse(path.begin(), path.end());
        const std::vector<Pose> tail = goal_tree.path_to_root(g_node);
        // The connect step can end on the same pose in both trees.
        std::size_t from = (costs::pose_distance(path.back(), tail.front(), w_rot_) == 0.0) ? 1 : 0;
        path.insert(path.end(), tail.begin() + from, tail.end());
        res.trajectories[gi] = make_trajectory(std::move(path), model_, terms_for(gi), gi);
        res.connected_at[gi] = iter;
        connected[gi] = true;
      }
    }
    res.stats = stats_;
    res.stats.iterations = iter;
    res.stats.start_nodes = static_cast<long>(start_tree_.size());
    for (const Tree& t : goal_trees_) res.stats.goal_nodes += static_cast<long>(t.size());
    if (cfg_.keep_trees) {
      res.start_tree = start_tree_;
      res.goal_trees = goal_trees_;
    }
    return res;
  }

 private:
  const costs::GoalTerms& terms_for(int gi) const { return terms_[gi]; }

  Pose random_sample(int gi, bool start_first) {
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    const double u_bias = unit(rng_);
    if (u_bias < cfg_.goal_bias) return start_first ? goals_[gi] : start_;
    Eigen::Vector3d t;
    for (int i = 0; i < 3; ++i) t[i] = box_min_[i] + unit(rng_) * (box_max_[i] - box_min_[i]);
    const double s = unit(rng_);
    const Eigen::Quaterniond base = start_.rotation().slerp(s, goals_[gi].rotation());
    // Uniform direction, angle uniform in [0, jitter].
    const double z = 2.0 * unit(rng_) - 1.0, az = 2.0 * std::numbers::pi * unit(rng_);
    const double r = std::sqrt(std::max(0.0, 1.0 - z * z));
    const Eigen::Vector3d axis(r * std::cos(az), r * std::sin(az), z);
    const double angle = cfg_.rotation_jitter * unit(rng_);
    return Pose(t, Eigen::Quaterniond(Eigen::AngleAxisd(angle, axis)) * base);
  }

  // Heuristic of a node toward the opposing root of the (start, goal gi) pair.
  double node_h(const Tree& tree, const Pose& p, int gi) const {
    if (tree.goal_index < 0) return model_.distance(p, goals_[gi]) + penalty_[gi];
    return model_.distance(p, start_);
  }

  double c_star(const Tree& tree, int gi) const { return tree.goal_index < 0 ? goal_cost_[gi] : tree.c_star; }
  double c_max(const Tree& tree, int gi) const { return tree.goal_index < 0 ? start_cmax_[gi] : tree.c_max; }

  int add_node(Tree& tree, int parent, const Pose& p, int gi) {
    TreeNode n;
    n.pose = p;
    n.parent = parent;
    n.g = tree.nodes[parent].g + model_.edge(tree.nodes[parent].pose, p);
    n.h = node_h(tree, p, gi);
    n.c = n.g + n.h;
    if (tree.goal_index < 0) {
      for (std::size_t i = 0; i < goals_.size(); ++i) {
        const double ci = n.g + (static_cast<int>(i) == gi ? n.h : node_h(tree, p, static_cast<int>(i)));
        start_cmax_[i] = std::max(start_cmax_[i], ci);
      }
    } else {
      tree.c_max = std::max(tree.c_max, n.c);
    }
    bool clamped = false;
    n.m_q = node_quality(n.c, c_star(tree, gi), c_max(tree, gi), &clamped);
    stats_.quality_clamps += clamped;
    tree.nodes.push_back(n);
    return static_cast<int>(tree.nodes.size()) - 1;
  }

  int choose_node(Tree& tree, const Pose& q, int gi) {
    const std::vector<int> cand = nearest_k(tree, q, cfg_.knn_k, w_rot_);
    std::vector<double> mq;
    for (int i : cand) {
      TreeNode& n = tree.nodes[i];
      n.h = node_h(tree, n.pose, gi);
      n.c = n.g + n.h;
      bool clamped = false;
      n.m_q = node_quality(n.c, c_star(tree, gi), c_max(tree, gi), &clamped);
      stats_.quality_clamps += clamped;
      mq.push_back(n.m_q);
    }
    return cand[select_by_quality(mq, cfg_.m_floor, rng_)];
  }

  bool connect(Tree& a, Tree& b, int gi, const Pose& q, int& a_node, int& b_node) {
    const geom::Scene& scene = model_.scene();
    const int from = choose_node(a, q, gi);
    const Pose& from_pose = a.nodes[from].pose;
    if (model_.distance(from_pose, q) == 0.0) return false;
    const Pose next = steer(from_pose, q, cfg_.step_eps, w_rot_);
    if (!edge_is_free(scene, from_pose, next, cfg_.edge_check_resolution, w_rot_, cfg_.clearance)) {
      ++stats_.rejected_edges;
      return false;
    }
    a_node = add_node(a, from, next, gi);

    b_node = nearest_k(b, next, 1, w_rot_).front();
    while (true) {
      const Pose cur = b.nodes[b_node].pose;
      const double d = model_.distance(cur, next);
      if (d <= cfg_.goal_connect_radius) {
        if (d > 0.0 && !edge_is_free(scene, cur, next, cfg_.edge_check_resolution, w_rot_, cfg_.clearance,
                                     EdgeEnd::known_free)) {
          return false;
        }
        return true;
      }
      const Pose step = steer(cur, next, cfg_.step_eps, w_rot_);
      if (!edge_is_free(scene, cur, step, cfg_.edge_check_resolution, w_rot_, cfg_.clearance)) {
        ++stats_.rejected_edges;
        return false;
      }
      b_node = add_node(b, b_node, step, gi);
    }
  }

  const costs::CostModel& model_;
  Pose start_;
  std::vector<Pose> goals_;
  std::vector<costs::GoalTerms> terms_;
  PlannerConfig cfg_;
  Rng rng_;
  double w_rot_ = 0.1;
  std::vector<double> penalty_;
  std::vector<double> goal_cost_;
  std::vector<double> start_cmax_;
  Tree start_tree_;
  std::vector<Tree> goal_trees_;
  Eigen::Vector3d box_min_, box_max_;
  PlannerStats stats_;
};

}  // namespace

HbirrtResult hbirrt_plan(const costs::CostModel& model, const Pose& start, const std::vector<Pose>& goals,
                         const std::vector<costs::GoalTerms>& goal_terms, const PlannerConfig& cfg) {
  cfg.validate();
  if (goal_terms.size() != goals.size()) throw InvalidSpecError("one goal-term entry per goal is required");
  const geom::Scene& scene = model.scene();
  if (!scene.is_free(start)) throw InvalidStartError("start pose is in collision");

  const double w_rot = model.weights().w_rot;
  std::vector<bool> done(goals.size(), false);
  std::vector<std::optional<Trajectory>> direct(goals.size());
  int hits = 0;
  for (std::size_t i = 0; i < goals.size(); ++i) {
    if (!scene.is_free(goals[i])) {
      done[i] = true;  // stays absent
      continue;
    }
    const double d = model.distance(start, goals[i]);
    if (d <= cfg.goal_connect_radius) {
      direct[i] = make_trajectory({start}, model, goal_terms[i], static_cast<int>(i));
    } else if (cfg.straight_line_first && edge_is_free(scene, start, goals[i], cfg.edge_check_resolution, w_rot,
                                                              cfg.clearance, EdgeEnd::known_free)) {
      direct[i] = make_trajectory(discretize(start, goals[i], cfg.step_eps, w_rot), model, goal_terms[i],
                                  static_cast<int>(i));
    }
    if (direct[i]) {
      done[i] = true;
      ++hits;
    }
  }

  Search search(model, start, goals, goal_terms, cfg);
  HbirrtResult res = search.run(done);
  for (std::size_t i = 0; i < goals.size(); ++i) {
    if (direct[i]) {
      res.trajectories[i] = std::move(direct[i]);
      res.connected_at[i] = 0;
    }
  }
  res.stats.straight_line_hits = hits;
  return res;
}

}  // namespace feedplan::plan
