#include "feedplan/sample/kmedoids.hpp"

#include <algorithm>
#include <limits>
#include <numeric>
#include <random>

#include "feedplan/costs/costs.hpp"
#include "feedplan/error.hpp"

namespace feedplan::sample {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

double assignment_cost(const Eigen::MatrixXd& d, const std::vector<int>& medoids, std::vector<int>* assign) {
  double total = 0.0;
  for (int i = 0; i < d.rows(); ++i) {
    double best = kInf;
    int slot = 0;
    for (int m = 0; m < static_cast<int>(medoids.size()); ++m) {
      if (d(i, medoids[m]) < best) {
        best = d(i, medoids[m]);
        slot = m;
      }
    }
    total += best;
    if (assign) (*assign)[i] = slot;
  }
  return total;
}

std::vector<int> build(const Eigen::MatrixXd& d, int k, const std::vector<int>& order) {
  const int n = static_cast<int>(d.rows());
  std::vector<int> medoids;
  std::vector<char> taken(n, 0);
  std::vector<double> nearest(n, kInf);
  for (int step = 0; step < k; ++step) {
    int best = -1;
    double best_gain = 0.0;
    for (int c : order) {
      if (taken[c]) continue;
      double gain = 0.0;
      if (medoids.empty()) {
        gain = -d.row(c).sum();
      } else {
        for (int i = 0; i < n; ++i) gain += std::max(0.0, nearest[i] - d(i, c));
      }
      if (best < 0 || gain > best_gain) {
        best = c;
        best_gain = gain;
      }
    }
    // Past the first medoid, only strictly useful additions are kept.
    if (!medoids.empty() && !(best_gain > 0.0)) break;
    medoids.push_back(best);
    taken[best] = 1;
    for (int i = 0; i < n; ++i) nearest[i] = std::min(nearest[i], d(i, best));
  }
  return medoids;
}

/// Best-improvement swaps. Returns the number of swaps applied.
int swap_phase(const Eigen::MatrixXd& d, std::vector<int>& medoids, const std::vector<int>& order, int max_iters) {
  const int n = static_cast<int>(d.rows());
  const int k = static_cast<int>(medoids.size());
  std::vector<double> d1(n), d2(n);
  std::vector<int> s1(n);
  std::vector<char> taken(n, 0);
  for (int m : medoids) taken[m] = 1;

  int iters = 0;
  while (iters < max_iters) {
    double cost = 0.0;
    for (int i = 0; i < n; ++i) {
      d1[i] = d2[i] = kInf;
      for (int m = 0; m < k; ++m) {
        const double v = d(i, medoids[m]);
        if (v < d1[i]) {
          d2[i] = d1[i];
          d1[i] = v;
          s1[i] = m;
        } else if (v < d2[i]) {
          d2[i] = v;
        }
      }
      cost += d1[i];
    }
    const double tol = 1e-12 * std::max(1.0, cost);
    double best_delta = -tol;
    int best_slot = -1, best_cand = -1;
    for (int slot = 0; slot < k; ++slot) {
      for (int c : order) {
        if (taken[c]) continue;
        double delta = 0.0;
        for (int i = 0; i < n; ++i) {
          const double dc = d(i, c);
          delta += (s1[i] == slot ? std::min(d2[i], dc) : std::min(d1[i], dc)) - d1[i];
        }
        if (delta < best_delta) {
          best_delta = delta;
          best_slot = slot;
          best_cand = c;
        }
      }
    }
    if (best_slot < 0) break;
    taken[medoids[best_slot]] = 0;
    taken[best_cand] = 1;
    medoids[best_slot] = best_cand;
    ++iters;
  }
  return iters;
}

}  // namespace

KMedoidsResult kmedoids(const Eigen::MatrixXd& d, int k, std::uint64_t seed, int max_iters, int restarts) {
  const int n = static_cast<int>(d.rows());
  if (n == 0 || d.cols() != n) throw InvalidSpecError("k-medoids needs a non-empty square distance matrix");
  if (k < 1) throw InvalidSpecError("k must be >= 1");
  if (restarts < 1) throw InvalidSpecError("k-medoids restarts must be >= 1");

  KMedoidsResult res;
  res.requested_k = k;
  if (k > n) {
    k = n;
    res.k_reduced = true;
  }

  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::mt19937_64 rng(seed);
  std::shuffle(order.begin(), order.end(), rng);

  std::vector<int> best = build(d, k, order);
  res.build_cost = assignment_cost(d, best, nullptr);
  res.swap_iterations = swap_phase(d, best, order, max_iters);
  double best_cost = assignment_cost(d, best, nullptr);

  // Further starts from random medoid sets of the size the build settled on.
  const int kk = static_cast<int>(best.size());
  for (int r = 1; r < restarts && kk < n; ++r) {
    std::vector<int> pick = order;
    std::shuffle(pick.begin(), pick.end(), rng);
    pick.resize(kk);
    const int iters = swap_phase(d, pick, order, max_iters);
    const double c = assignment_cost(d, pick, nullptr);
    if (c < best_cost) {
      best = pick;
      best_cost = c;
      res.swap_iterations = iters;
    }
  }

  res.medoid_indices = best;
  res.assignment.assign(n, 0);
  res.total_cost = assignment_cost(d, best, &res.assignment);
  return res;
}

KMedoidsResult cluster_kmedoids(const std::vector<geom::Pose>& poses, int k, double w_rot, std::uint64_t seed,
                                int restarts) {
  const int n = static_cast<int>(poses.size());
  Eigen::MatrixXd d(n, n);
  for (int i = 0; i < n; ++i) {
    d(i, i) = 0.0;
    for (int j = i + 1; j < n; ++j) d(i, j) = d(j, i) = costs::pose_distance(poses[i], poses[j], w_rot);
  }
  KMedoidsResult res = kmedoids(d, k, seed, 100, restarts);
  for (int i : res.medoid_indices) res.medoids.push_back(poses[i]);
  return res;
}

}  // namespace feedplan::sample
