#include "feedplan/ftrt/calibration.hpp"

#include <cmath>
#include <istream>
#include <limits>
#include <numbers>
#include <ostream>
#include <sstream>
#include <string>

#include "feedplan/error.hpp"

namespace feedplan::ftrt {

namespace {

Eigen::Matrix3d world_to_ee(const FTSample& s) { return s.orientation.normalized().toRotationMatrix().transpose(); }

Eigen::Vector3d lever(const SensorModel& m) { return {0.0, m.torque_radius, 0.0}; }

Eigen::Vector3d gravity(const SensorModel& m) { return {0.0, 0.0, -m.gravity}; }

double rms(const Eigen::VectorXd& r) { return std::sqrt(r.squaredNorm() / static_cast<double>(r.size())); }

}  // namespace

void SensorModel::validate() const {
  if (!ee_to_sensor.allFinite() || !(ee_to_sensor.transpose() * ee_to_sensor).isIdentity(1e-9) ||
      ee_to_sensor.determinant() < 0.0) {
    throw InvalidSpecError("ee_to_sensor must be a rotation matrix");
  }
  if (!std::isfinite(torque_radius)) throw InvalidSpecError("torque_radius must be finite");
  if (!(gravity > 0.0)) throw InvalidSpecError("gravity must be > 0");
}

Eigen::Matrix<double, 7, 1> PayloadParams::as_vector() const {
  Eigen::Matrix<double, 7, 1> x;
  x << mass, force_bias, torque_bias;
  return x;
}

LinearSystem build_calibration_system(const std::vector<FTSample>& samples, const SensorModel& model) {
  model.validate();
  if (samples.size() < 3) throw InsufficientDataError("calibration needs at least 3 samples");
  const auto n = static_cast<Eigen::Index>(samples.size());
  LinearSystem sys{Eigen::MatrixXd::Zero(6 * n, 7), Eigen::VectorXd::Zero(6 * n)};
  const Eigen::Matrix3d& s = model.ee_to_sensor;
  for (Eigen::Index i = 0; i < n; ++i) {
    const FTSample& smp = samples[static_cast<std::size_t>(i)];
    const Eigen::Vector3d g_ee = world_to_ee(smp) * gravity(model);
    // f_i = m S W_i g - f_b
    sys.a.block<3, 1>(6 * i, 0) = s * g_ee;
    sys.a.block<3, 3>(6 * i, 1) = -Eigen::Matrix3d::Identity();
    sys.b.segment<3>(6 * i) = smp.force;
    // t_i = m S (r x W_i g) - t_b
    sys.a.block<3, 1>(6 * i + 3, 0) = s * lever(model).cross(g_ee);
    sys.a.block<3, 3>(6 * i + 3, 4) = -Eigen::Matrix3d::Identity();
    sys.b.segment<3>(6 * i + 3) = smp.torque;
  }
  return sys;
}

CalibrationResult solve_calibration(const std::vector<FTSample>& samples, const SensorModel& model) {
  const LinearSystem sys = build_calibration_system(samples, model);
  CalibrationResult out;

  const Eigen::JacobiSVD<Eigen::MatrixXd> svd(sys.a);
  const auto& sv = svd.singularValues();
  out.condition_number = sv(sv.size() - 1) > 0.0 ? sv(0) / sv(sv.size() - 1) : std::numeric_limits<double>::infinity();
  out.ill_conditioned = !(out.condition_number <= kIllConditioned);

  const Eigen::VectorXd x = sys.a.completeOrthogonalDecomposition().solve(sys.b);
  out.params.mass = x(0);
  out.params.force_bias = x.segment<3>(1);
  out.params.torque_bias = x.segment<3>(4);

  if (out.params.mass < 0.0) {
    // With m = 0 the bias columns are decoupled identity blocks: the fit is the mean reading.
    out.mass_clamped = true;
    out.params.mass = 0.0;
    Eigen::Vector3d f = Eigen::Vector3d::Zero(), t = Eigen::Vector3d::Zero();
    for (const FTSample& s : samples) {
      f += s.force;
      t += s.torque;
    }
    out.params.force_bias = -f / static_cast<double>(samples.size());
    out.params.torque_bias = -t / static_cast<double>(samples.size());
  }
  out.residual_rms = rms(sys.a * out.params.as_vector() - sys.b);
  return out;
}

Eigen::Matrix<double, 7, 7> parameter_covariance(const LinearSystem& sys, double sigma_force, double sigma_torque) {
  const Eigen::Index rows = sys.a.rows();
  Eigen::VectorXd var(rows);
  for (Eigen::Index i = 0; i < rows; ++i) var(i) = (i % 6) < 3 ? sigma_force * sigma_force : sigma_torque * sigma_torque;
  const Eigen::Matrix<double, 7, 7> ata = sys.a.transpose() * sys.a;
  const Eigen::Matrix<double, 7, 7> inv = ata.ldlt().solve(Eigen::Matrix<double, 7, 7>::Identity());
  const Eigen::Matrix<double, 7, 7> meat = sys.a.transpose() * var.asDiagonal() * sys.a;
  return inv * meat * inv;
}

FTSample synthetic_reading(const Eigen::Quaterniond& orientation, const PayloadParams& p, const SensorModel& model,
                           const Wrench& external_world) {
  FTSample s;
  s.orientation = orientation.normalized();
  const Eigen::Matrix3d w = world_to_ee(s);
  const Eigen::Vector3d load_ee = w * (p.mass * gravity(model));
  s.force = model.ee_to_sensor * (load_ee + w * external_world.force) - p.force_bias;
  s.torque = model.ee_to_sensor * (lever(model).cross(load_ee) + w * external_world.torque) - p.torque_bias;
  return s;
}

Wrench compensate_wrench(const FTSample& reading, const PayloadParams& p, const SensorModel& model) {
  const Eigen::Matrix3d w = world_to_ee(reading);
  const Eigen::Vector3d load_ee = w * (p.mass * gravity(model));
  const Eigen::Matrix3d to_ee = model.ee_to_sensor.transpose();
  Wrench out;
  out.force = w.transpose() * (to_ee * (reading.force + p.force_bias) - load_ee);
  out.torque = w.transpose() * (to_ee * (reading.torque + p.torque_bias) - lever(model).cross(load_ee));
  return out;
}

std::vector<Eigen::Quaterniond> default_calibration_orientations() {
  using std::numbers::pi;
  const Eigen::Vector3d x = Eigen::Vector3d::UnitX(), y = Eigen::Vector3d::UnitY();
  return {
      Eigen::Quaterniond(Eigen::AngleAxisd(pi / 4, x)),  Eigen::Quaterniond(Eigen::AngleAxisd(-pi / 4, x)),
      Eigen::Quaterniond(Eigen::AngleAxisd(pi / 2, x)),  Eigen::Quaterniond(Eigen::AngleAxisd(-pi / 2, x)),
      Eigen::Quaterniond(Eigen::AngleAxisd(pi / 4, y)),  Eigen::Quaterniond(Eigen::AngleAxisd(-pi / 4, y)),
  };
}

void write_samples_csv(std::ostream& out, const std::vector<FTSample>& samples) {
  out << "t,qw,qx,qy,qz,fx,fy,fz,tx,ty,tz\n";
  const auto old = out.precision(17);
  for (const FTSample& s : samples) {
    const auto& q = s.orientation;
    out << s.t << ',' << q.w() << ',' << q.x() << ',' << q.y() << ',' << q.z() << ',' << s.force.x() << ','
        << s.force.y() << ',' << s.force.z() << ',' << s.torque.x() << ',' << s.torque.y() << ',' << s.torque.z()
        << '\n';
  }
  out.precision(old);
}

std::vector<FTSample> read_samples_csv(std::istream& in) {
  std::vector<FTSample> out;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || (line_no == 1 && line.rfind("t,", 0) == 0)) continue;
    std::stringstream ss(line);
    std::string cell;
    double v[11];
    int n = 0;
    while (std::getline(ss, cell, ',')) {
      if (n == 11) break;
      std::size_t used = 0;
      try {
        v[n] = std::stod(cell, &used);
      } catch (const std::exception&) {
        used = 0;
      }
      if (used == 0) throw InvalidSpecError("line " + std::to_string(line_no) + ": bad number '" + cell + "'");
      ++n;
    }
    if (n != 11 || ss.good()) throw InvalidSpecError("line " + std::to_string(line_no) + ": expected 11 columns");
    FTSample s;
    s.t = v[0];
    s.orientation = Eigen::Quaterniond(v[1], v[2], v[3], v[4]);
    if (std::abs(s.orientation.norm() - 1.0) > 1e-9) {
      throw InvalidSpecError("line " + std::to_string(line_no) + ": quaternion is not normalized");
    }
    s.force = {v[5], v[6], v[7]};
    s.torque = {v[8], v[9], v[10]};
    out.push_back(s);
  }
  return out;
}

}  // namespace feedplan::ftrt
