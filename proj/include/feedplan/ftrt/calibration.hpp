#pragma once

#include <iosfwd>
#include <vector>

#include <Eigen/Dense>

namespace feedplan::ftrt {

/// One raw sensor reading. `orientation` rotates end-effector coordinates
/// into world coordinates; its inverse is the world -> end-effector map.
struct FTSample {
  double t = 0.0;  // s, log timestamp only
  Eigen::Quaterniond orientation = Eigen::Quaterniond::Identity();
  Eigen::Vector3d force = Eigen::Vector3d::Zero();   // N, sensor frame
  Eigen::Vector3d torque = Eigen::Vector3d::Zero();  // N m, sensor frame
};

/// Known quantities of the gravity model. The food hangs at `torque_radius`
/// along end-effector +y; gravity is -z in the world.
struct SensorModel {
  Eigen::Matrix3d ee_to_sensor = Eigen::Matrix3d::Identity();
  double torque_radius = 0.18;  // m
  double gravity = 9.81;        // m/s^2

  void validate() const;
};

/// Unknowns x = (m, f_b, t_b).
struct PayloadParams {
  double mass = 0.0;
  Eigen::Vector3d force_bias = Eigen::Vector3d::Zero();
  Eigen::Vector3d torque_bias = Eigen::Vector3d::Zero();

  Eigen::Matrix<double, 7, 1> as_vector() const;
};

/// Rows 6i..6i+2 are the force balance of sample i, rows 6i+3..6i+5 its
/// torque balance.
struct LinearSystem {
  Eigen::MatrixXd a;  // 6n x 7
  Eigen::VectorXd b;  // 6n
};

/// Throws InsufficientDataError for fewer than 3 samples.
LinearSystem build_calibration_system(const std::vector<FTSample>& samples, const SensorModel& model);

struct CalibrationResult {
  PayloadParams params;
  double residual_rms = 0.0;      // over all 6n equations
  double condition_number = 0.0;  // sigma_max / sigma_min of A, infinite when rank deficient
  bool ill_conditioned = false;   // condition_number > 1e8
  bool mass_clamped = false;      // solved mass was negative; biases re-fit with m = 0
};

constexpr double kIllConditioned = 1e8;

/// Minimum-norm least squares.
CalibrationResult solve_calibration(const std::vector<FTSample>& samples, const SensorModel& model);

/// Covariance of the least-squares estimate for independent zero-mean noise
/// of `sigma_force` on every force component and `sigma_torque` on every
/// torque component. Requires A to have full column rank.
Eigen::Matrix<double, 7, 7> parameter_covariance(const LinearSystem& sys, double sigma_force, double sigma_torque);

struct Wrench {
  Eigen::Vector3d force = Eigen::Vector3d::Zero();
  Eigen::Vector3d torque = Eigen::Vector3d::Zero();
};

/// Forward model: the reading produced by payload `p` at `orientation` with an
/// extra external wrench given in world coordinates.
FTSample synthetic_reading(const Eigen::Quaterniond& orientation, const PayloadParams& p, const SensorModel& model,
                           const Wrench& external_world = {});

/// Inverse of synthetic_reading for a calibrated payload: removes biases and
/// the predicted gravity wrench and returns the external wrench in world
/// coordinates.
Wrench compensate_wrench(const FTSample& reading, const PayloadParams& p, const SensorModel& model);

/// Six orientations: +-45 and +-90 degrees about end-effector x, +-45 about y.
std::vector<Eigen::Quaterniond> default_calibration_orientations();

/// CSV columns t,qw,qx,qy,qz,fx,fy,fz,tx,ty,tz with a header row.
void write_samples_csv(std::ostream& out, const std::vector<FTSample>& samples);
/// Throws InvalidSpecError naming the offending line.
std::vector<FTSample> read_samples_csv(std::istream& in);

}  // namespace feedplan::ftrt
