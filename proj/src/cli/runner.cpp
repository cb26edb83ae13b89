#include "feedplan/cli/runner.hpp"

#include <chrono>
#include <cmath>
#include <random>

namespace feedplan::cli {

ExitCode exit_code_for(const std::exception& e) {
  if (dynamic_cast<const ConfigError*>(&e)) return kExitConfig;
  if (dynamic_cast<const sample::InfeasibleGoalError*>(&e)) return kExitInfeasibleGoal;
  if (dynamic_cast<const InvalidStartError*>(&e)) return kExitInvalidStart;
  if (dynamic_cast<const NoTrajectoryError*>(&e)) return kExitNoTrajectory;
  return kExitFailure;
}

RunResult run_scenario(const ScenarioConfig& cfg) { return run_scenario(cfg, cfg.scenario()); }

RunResult run_scenario(const ScenarioConfig& cfg, const sample::Scenario& scenario) {
  const plan::PlanOutcome outcome = plan::plan_bite(scenario, cfg.pipeline());
  RunResult r;
  r.report = plan_report(cfg, scenario, outcome);
  r.code = outcome.selected ? kExitOk : kExitNoTrajectory;
  return r;
}

RunResult run_multibite(const ScenarioConfig& cfg) {
  const sample::Scenario scenario = cfg.scenario();
  const auto t0 = std::chrono::steady_clock::now();
  const bite::MultibiteResult result = bite::multibite_plan(scenario, cfg.multibite());
  const double elapsed = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return RunResult{multibite_report(cfg, scenario, result, elapsed), kExitOk};
}

// Parameters the noise cannot reach have a zero bound; allow round-off there.
constexpr double kRoundoff = 1e-12;

CalibDemo calibration_demo(const CalibConfig& cfg, std::uint64_t seed) {
  const ftrt::SensorModel model = cfg.sensor();
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> unit(0.0, 1.0);

  std::vector<ftrt::FTSample> samples;
  double t = 0.0;
  for (const auto& q : ftrt::default_calibration_orientations()) {
    ftrt::FTSample s = ftrt::synthetic_reading(q, cfg.truth, model);
    s.t = t;
    t += 1.0;
    if (cfg.noise_sigma > 0.0)
      for (int i = 0; i < 3; ++i) s.force[i] += cfg.noise_sigma * unit(rng);
    samples.push_back(s);
  }

  CalibDemo d;
  d.truth = cfg.truth;
  d.fit = ftrt::solve_calibration(samples, model);
  d.abs_error = (d.fit.params.as_vector() - cfg.truth.as_vector()).cwiseAbs();
  d.bound.setZero();
  if (cfg.noise_sigma > 0.0) {
    const auto cov = ftrt::parameter_covariance(ftrt::build_calibration_system(samples, model), cfg.noise_sigma, 0.0);
    for (int k = 0; k < 7; ++k) d.bound[k] = 3.0 * std::sqrt(cov(k, k));
    d.within_bounds = (d.abs_error.array() <= d.bound.array() + kRoundoff).all();
  }
  return d;
}

Json calib_report(const CalibConfig& cfg, std::uint64_t seed, const CalibDemo& d) {
  auto params = [](const ftrt::PayloadParams& p) {
    return Json{{"mass", p.mass},
                {"force_bias", {p.force_bias.x(), p.force_bias.y(), p.force_bias.z()}},
                {"torque_bias", {p.torque_bias.x(), p.torque_bias.y(), p.torque_bias.z()}}};
  };
  auto seven = [](const Eigen::Matrix<double, 7, 1>& v) {
    Json a = Json::array();
    for (int k = 0; k < 7; ++k) a.push_back(v[k]);
    return a;
  };
  Json report{{"command", "calib"},
              {"seed", seed},
              {"noise_sigma", cfg.noise_sigma},
              {"samples", ftrt::default_calibration_orientations().size()},
              {"truth", params(d.truth)},
              {"estimate", params(d.fit.params)},
              {"abs_error", seven(d.abs_error)},
              {"max_abs_error", d.abs_error.maxCoeff()}};
  report["three_sigma_bound"] = cfg.noise_sigma > 0.0 ? seven(d.bound) : Json(nullptr);
  report["within_bounds"] = d.within_bounds;
  report["residual_rms"] = d.fit.residual_rms;
  report["condition_number"] = std::isfinite(d.fit.condition_number) ? Json(d.fit.condition_number) : Json(nullptr);
  report["ill_conditioned"] = d.fit.ill_conditioned;
  report["mass_clamped"] = d.fit.mass_clamped;
  return report;
}

}  // namespace feedplan::cli
