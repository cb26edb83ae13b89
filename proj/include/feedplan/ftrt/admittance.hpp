#pragma once

#include <Eigen/Core>

namespace feedplan::ftrt {

/// Zero on [-f_th, f_th], f - f_th above, f + f_th below. Continuous and odd.
double deadband_error(double f, double f_th);

/// Applied per axis.
Eigen::Vector3d deadband_error(const Eigen::Vector3d& f, double f_th);

struct PidGains {
  double kp = 0.02;     // m/s per N
  double ki = 0.001;    // m/s per N s
  double kd = 0.0005;   // m/s per N/s
};

struct PidState {
  PidGains gains;
  double f_th = 0.25;   // N
  double dt = 0.01;     // s
  double i_max = 0.05;  // m/s, bound on |ki * integral| per axis
  Eigen::Vector3d integral = Eigen::Vector3d::Zero();    // N s
  Eigen::Vector3d prev_error = Eigen::Vector3d::Zero();  // N; zero history before the first step

  void validate() const;
};

/// Rectangle-rule integral, backward-difference derivative, per axis. The
/// integral is clamped so that |ki * integral| <= i_max.
Eigen::Vector3d pid_step(PidState& state, const Eigen::Vector3d& error);

struct ControlTick {
  Eigen::Vector3d velocity = Eigen::Vector3d::Zero();  // m/s, linear only
  Eigen::Vector3d error = Eigen::Vector3d::Zero();     // N, after the deadband
  bool admittance = false;  // the force loop overrode trajectory following
};

/// Single-owner force-reactive stepper. Each tick runs the PID on the
/// deadbanded force; any nonzero error replaces the trajectory velocity with
/// the PID output for that tick.
class AdmittanceController {
 public:
  explicit AdmittanceController(const PidState& initial);

  ControlTick step(const Eigen::Vector3d& external_force, const Eigen::Vector3d& trajectory_velocity);
  const PidState& state() const { return state_; }

 private:
  PidState state_;
};

}  // namespace feedplan::ftrt
