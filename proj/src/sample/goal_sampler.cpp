#include "feedplan/sample/goal_sampler.hpp"

#include <chrono>
#include <cmath>

namespace feedplan::sample {

namespace {
constexpr double kPi = std::numbers::pi;
}

void GoalDistribution::validate() const {
  if (!(cone_half_angle > 0.0 && cone_half_angle <= kPi / 2)) {
    throw InvalidSpecError("cone_half_angle must be in (0, pi/2]");
  }
  for (int i = 0; i < 3; ++i) {
    if (!(offset_min[i] <= offset_max[i])) throw InvalidSpecError("offset_min must not exceed offset_max");
  }
  if (!(spin_min <= spin_max)) throw InvalidSpecError("spin_min must not exceed spin_max");
}

void SampleBudget::validate() const {
  if (target_n < 1) throw InvalidSpecError("target_n must be >= 1");
  if (batch_size < 1) throw InvalidSpecError("batch_size must be >= 1");
  if (!(timeout_s > 0.0)) throw InvalidSpecError("timeout must be > 0");
  if (max_batches < 1) throw InvalidSpecError("max_batches must be >= 1");
}

Eigen::Quaterniond canonical_fork_rotation() {
  return Eigen::Quaterniond(Eigen::AngleAxisd(-kPi / 2, Eigen::Vector3d::UnitX()));
}

Pose sample_goal(const GoalDistribution& dist, Rng& rng) {
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  const double u_cos = unit(rng), u_az = unit(rng), u_spin = unit(rng);
  const double ux = unit(rng), uy = unit(rng), uz = unit(rng);

  // Uniform over the spherical cap: cos(theta) uniform on [cos(cone), 1].
  const double cos_theta = 1.0 - u_cos * (1.0 - std::cos(dist.cone_half_angle));
  const double theta = std::acos(std::clamp(cos_theta, -1.0, 1.0));
  const double az = 2.0 * kPi * u_az;
  const double spin = dist.spin_min + u_spin * (dist.spin_max - dist.spin_min);

  const Eigen::Quaterniond tilt(Eigen::AngleAxisd(theta, Eigen::Vector3d(std::cos(az), std::sin(az), 0.0)));
  const Eigen::Quaterniond r = tilt * canonical_fork_rotation() * Eigen::AngleAxisd(spin, Eigen::Vector3d::UnitY());
  const Eigen::Vector3d t(ux, uy, uz);
  return Pose(dist.offset_min + t.cwiseProduct(dist.offset_max - dist.offset_min), r);
}

double approach_angle(const Pose& sample) {
  const Eigen::Vector3d axis = sample.rotate(Eigen::Vector3d::UnitY());
  return std::acos(std::clamp(-axis.z(), -1.0, 1.0));
}

Pose goal_food_pose(const Pose& sample, const geom::Scene& scene) {
  const Pose food_in_mouth(sample.translation(), sample.rotation() * scene.food_on_fork().rotation());
  return scene.mouth().pose * food_in_mouth;
}

bool in_distribution(const Pose& food_pose, const geom::Scene& scene, const GoalDistribution& dist,
                     double tol) {
  const Pose in_mouth = scene.mouth().pose.inverse() * food_pose;
  const Pose fork(in_mouth.translation(), in_mouth.rotation() * scene.food_on_fork().rotation().inverse());
  if (approach_angle(fork) > dist.cone_half_angle + tol) return false;
  for (int i = 0; i < 3; ++i) {
    const double v = in_mouth.translation()[i];
    if (v < dist.offset_min[i] - tol || v > dist.offset_max[i] + tol) return false;
  }
  return true;
}

GoalSet sample_collision_free_goals(const geom::Scene& scene, const GoalDistribution& dist,
                                    const SampleBudget& budget) {
  dist.validate();
  budget.validate();
  const auto t0 = std::chrono::steady_clock::now();
  Rng rng(budget.seed);
  GoalSet out;
  SampleStats& st = out.stats;
  while (static_cast<int>(out.goals.size()) < budget.target_n && st.batches < budget.max_batches) {
    for (int i = 0; i < budget.batch_size; ++i) {
      const Pose goal = goal_food_pose(sample_goal(dist, rng), scene);
      ++st.attempts;
      if (scene.is_free(goal)) out.goals.push_back(goal);
    }
    ++st.batches;
    st.elapsed_s = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (st.elapsed_s > budget.timeout_s) {
      st.timed_out = true;
      break;
    }
  }
  st.accepted = static_cast<long>(out.goals.size());
  if (out.goals.empty()) {
    throw InfeasibleGoalError("no collision-free goal pose after " + std::to_string(st.attempts) + " attempts",
                              st);
  }
  return out;
}

}  // namespace feedplan::sample
