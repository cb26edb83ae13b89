#include "feedplan/ftrt/admittance.hpp"

#include <algorithm>
#include <cmath>

#include "feedplan/error.hpp"

namespace feedplan::ftrt {

double deadband_error(double f, double f_th) { return std::min(f + f_th, std::max(f - f_th, 0.0)); }

Eigen::Vector3d deadband_error(const Eigen::Vector3d& f, double f_th) {
  return {deadband_error(f.x(), f_th), deadband_error(f.y(), f_th), deadband_error(f.z(), f_th)};
}

void PidState::validate() const {
  if (!(f_th > 0.0)) throw InvalidSpecError("force threshold must be > 0");
  if (!(dt > 0.0)) throw InvalidSpecError("dt must be > 0");
  if (!(i_max >= 0.0)) throw InvalidSpecError("i_max must be >= 0");
  if (!std::isfinite(gains.kp) || !std::isfinite(gains.ki) || !std::isfinite(gains.kd)) {
    throw InvalidSpecError("PID gains must be finite");
  }
}

Eigen::Vector3d pid_step(PidState& s, const Eigen::Vector3d& error) {
  s.integral += error * s.dt;
  if (s.gains.ki != 0.0) {
    const double bound = s.i_max / std::abs(s.gains.ki);
    s.integral = s.integral.cwiseMax(-bound).cwiseMin(bound);
  }
  const Eigen::Vector3d derivative = (error - s.prev_error) / s.dt;
  s.prev_error = error;
  return s.gains.kp * error + s.gains.ki * s.integral + s.gains.kd * derivative;
}

AdmittanceController::AdmittanceController(const PidState& initial) : state_(initial) { state_.validate(); }

ControlTick AdmittanceController::step(const Eigen::Vector3d& external_force,
                                       const Eigen::Vector3d& trajectory_velocity) {
  ControlTick tick;
  tick.error = deadband_error(external_force, state_.f_th);
  const Eigen::Vector3d v = pid_step(state_, tick.error);
  tick.admittance = !tick.error.isZero(0.0);
  tick.velocity = tick.admittance ? v : trajectory_velocity;
  return tick;
}

}  // namespace feedplan::ftrt
