#pragma once

#include <cstdint>
#include <numbers>
#include <string>
#include <vector>

#include "feedplan/bite/bite.hpp"
#include "feedplan/cli/toml_lite.hpp"
#include "feedplan/ftrt/calibration.hpp"
#include "feedplan/sample/random_scenario.hpp"

namespace feedplan::cli {

using geom::Pose;

/// Rigid transform as written in configs: translation in meters and a
/// rotation vector (axis times angle, radians).
struct PoseConfig {
  Eigen::Vector3d translation = Eigen::Vector3d::Zero();
  Eigen::Vector3d rotation_vector = Eigen::Vector3d::Zero();

  Pose pose() const { return Pose::from_rotation_vector(translation, rotation_vector); }
};

struct CalibConfig {
  double noise_sigma = 0.0;  // N, on every force component
  ftrt::PayloadParams truth{0.05, {0.1, -0.2, 0.3}, {0.01, 0.0, -0.02}};
  Eigen::Vector3d ee_to_sensor_rotation = Eigen::Vector3d::Zero();  // rotation vector
  double torque_radius = 0.18;
  double gravity = 9.81;

  ftrt::SensorModel sensor() const;
};

struct SweepConfig {
  std::vector<double> beta_E{0.1, 0.5, 2.0, 8.0};
  std::vector<double> beta_C{0.0, 2.5, 10.0, 40.0};
  std::vector<double> gamma_C;  // empty: every cell uses gamma_C = beta_C
  int scenarios_per_cell = 50;
  std::uint64_t base_seed = 1;
  std::string food = "random";  // or a food kind
  double scale_min = 0.8;
  double scale_max = 1.2;
  Eigen::Vector3d start_min{-0.05, -0.10, 0.18};
  Eigen::Vector3d start_max{0.05, 0.0, 0.28};
  double start_tilt_max = 0.5;
  double skewer_angle = std::numbers::pi / 2;  // food long axis vs fork
};

/// Everything a run needs. Missing keys keep these defaults; cost weights and
/// K follow the published parameter table.
struct ScenarioConfig {
  std::uint64_t seed = 1;
  geom::FoodSpec food;
  double food_scale = 1.0;
  PoseConfig pose_on_fork{{0.0, 0.165, 0.0}, Eigen::Vector3d::Zero()};
  PoseConfig start{{0.0, -0.05, 0.3}, {0.2 - std::numbers::pi / 2, 0.0, 0.0}};
  geom::MouthModel mouth;
  PoseConfig mouth_pose;
  geom::ProxyDims proxy;
  sample::GoalDistribution goals;
  costs::CostWeights weights;
  costs::ComfortRayConfig rays;
  sample::SampleBudget budget;
  plan::PlannerConfig planner;
  int k = 15;
  double stop_fraction = 0.05;
  int max_bites = 10;
  double min_progress = 0.01;
  CalibConfig calib;
  SweepConfig sweep;

  /// Throws ConfigError.
  void validate() const;

  sample::Scenario scenario() const;
  plan::PipelineConfig pipeline() const;
  bite::MultibiteConfig multibite() const;
  sample::RandomScenarioSpec random_spec() const;
};

/// Reads TOML, or JSON when the file name ends in ".json" or the text starts
/// with '{'. JSON objects map onto the same dotted paths.
TomlDocument read_config_text(const std::string& text, const std::string& source);
TomlDocument read_config_file(const std::string& path);

/// Defaults overlaid with the document. Unknown keys, wrong types and invalid
/// values raise ConfigError anchored at the offending line.
ScenarioConfig load_config(const TomlDocument& doc);

/// Full effective config as TOML; load_config(parse_toml(to_toml(c))) == c.
std::string to_toml(const ScenarioConfig& c);

}  // namespace feedplan::cli
