#pragma once

#include <cstdint>
#include <vector>

#include <Eigen/Core>

#include "feedplan/geom/pose.hpp"

namespace feedplan::sample {

struct KMedoidsResult {
  std::vector<int> medoid_indices;       // into the input list
  std::vector<geom::Pose> medoids;       // copies of the input poses
  std::vector<int> assignment;           // medoid slot per input point
  double total_cost = 0.0;               // sum of distances to the assigned medoid
  double build_cost = 0.0;               // same, after the greedy build phase
  int swap_iterations = 0;
  int requested_k = 0;
  bool k_reduced = false;                // requested k exceeded the input size
};

/// PAM on a symmetric distance matrix. The build phase adds medoids greedily
/// while they lower the total cost, so duplicate points can yield fewer than k
/// medoids. The swap phase applies the best improving swap until none is left
/// or `max_iters` is reached. Extra restarts run the swap phase from seeded
/// random medoid sets and the cheapest result wins; the seed also fixes the
/// candidate order used to break ties.
KMedoidsResult kmedoids(const Eigen::MatrixXd& dist, int k, std::uint64_t seed, int max_iters = 100,
                        int restarts = 4);

KMedoidsResult cluster_kmedoids(const std::vector<geom::Pose>& poses, int k, double w_rot, std::uint64_t seed,
                                int restarts = 4);

}  // namespace feedplan::sample
