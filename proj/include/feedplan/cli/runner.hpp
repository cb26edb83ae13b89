#pragma once

#include <cstdint>
#include <exception>

#include "feedplan/cli/report.hpp"

namespace feedplan::cli {

/// Process exit codes. Stable: scripts depend on them.
enum ExitCode : int {
  kExitOk = 0,
  kExitFailure = 1,
  kExitConfig = 2,
  kExitInfeasibleGoal = 3,
  kExitInvalidStart = 4,
  kExitNoTrajectory = 5,
};

ExitCode exit_code_for(const std::exception& e);

struct RunResult {
  Json report;
  ExitCode code = kExitOk;  // kExitNoTrajectory when no goal was reached
};

/// Samples, clusters, plans and selects for the configured scenario. Throws
/// InfeasibleGoalError and InvalidStartError.
RunResult run_scenario(const ScenarioConfig& cfg);
RunResult run_scenario(const ScenarioConfig& cfg, const sample::Scenario& scenario);

RunResult run_multibite(const ScenarioConfig& cfg);

/// Synthetic calibration: readings at the default orientation cycle with
/// N(0, noise_sigma) on every force component, then the least-squares fit.
/// Error bounds are 3 standard deviations of the predicted covariance.
struct CalibDemo {
  ftrt::PayloadParams truth;
  ftrt::CalibrationResult fit;
  Eigen::Matrix<double, 7, 1> abs_error;
  Eigen::Matrix<double, 7, 1> bound;  // zero when noise_sigma is zero
  bool within_bounds = true;
};

CalibDemo calibration_demo(const CalibConfig& cfg, std::uint64_t seed);
Json calib_report(const CalibConfig& cfg, std::uint64_t seed, const CalibDemo& demo);

}  // namespace feedplan::cli
