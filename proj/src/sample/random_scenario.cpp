#include "feedplan/sample/random_scenario.hpp"

#include <numbers>

namespace feedplan::sample {

Scenario random_scenario(std::uint64_t seed, const RandomScenarioSpec& spec) {
  Rng rng(seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  auto between = [&](double lo, double hi) { return lo + unit(rng) * (hi - lo); };

  constexpr geom::FoodKind kinds[] = {geom::FoodKind::carrot, geom::FoodKind::cantaloupe, geom::FoodKind::celery,
                                      geom::FoodKind::strawberry};
  const double u_kind = unit(rng);
  const geom::FoodKind kind = spec.kind ? *spec.kind : kinds[std::min(3, static_cast<int>(4.0 * u_kind))];
  const geom::FoodSpec food = geom::FoodSpec::default_for(kind).scaled(between(spec.scale_min, spec.scale_max));

  // Food long axis at skewer_angle from the fork, rolled about the fork.
  const double roll = between(-std::numbers::pi, std::numbers::pi);
  const Pose food_on_fork({0.0, spec.skewer_y, 0.0},
                          Eigen::AngleAxisd(roll, Eigen::Vector3d::UnitY()) *
                              Eigen::AngleAxisd(spec.skewer_angle, Eigen::Vector3d::UnitX()));
  geom::Scene scene(geom::make_food_mesh(food), food_on_fork, spec.mouth, spec.proxy);

  Pose start;
  for (int attempt = 0;; ++attempt) {
    Eigen::Vector3d t;
    for (int i = 0; i < 3; ++i) t[i] = between(spec.start_min[i], spec.start_max[i]);
    const double tilt = spec.start_tilt_max * std::sqrt(unit(rng));
    const double az = between(0.0, 2.0 * std::numbers::pi);
    const Eigen::Quaterniond fork =
        Eigen::AngleAxisd(tilt, Eigen::Vector3d(std::cos(az), std::sin(az), 0.0)) * canonical_fork_rotation();
    start = spec.mouth.pose * Pose(t, fork * food_on_fork.rotation());
    if (scene.is_free(start) || attempt >= 100) break;
  }
  return Scenario{std::move(scene), start, spec.goals};
}

}  // namespace feedplan::sample
