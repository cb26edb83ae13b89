#include <doctest.h>

#include <cmath>
#include <random>
#include <sstream>

#include <Eigen/Geometry>

#include "feedplan/error.hpp"
#include "feedplan/ftrt/admittance.hpp"
#include "feedplan/ftrt/calibration.hpp"
#include "support/ftrt_oracles.hpp"

using namespace feedplan;
using namespace feedplan::ftrt;
using doctest::Approx;
using testing::oracle_reading;
using testing::random_orientation;
using testing::random_params;

namespace {

SensorModel tilted_sensor() {
  SensorModel m;
  m.ee_to_sensor = Eigen::AngleAxisd(0.3, Eigen::Vector3d(1, 2, 3).normalized()).toRotationMatrix();
  return m;
}

}  // namespace

TEST_CASE("calibration system layout") {
  SensorModel model;
  std::vector<FTSample> samples(3);
  const LinearSystem sys = build_calibration_system(samples, model);
  CHECK(sys.a.rows() == 18);
  CHECK(sys.a.cols() == 7);
  // Identity orientation: m (0, 0, -g) - f_b = f_i.
  CHECK(sys.a(2, 0) == -model.gravity);
  CHECK(sys.a(0, 0) == 0.0);
  CHECK(sys.a.block<3, 3>(0, 1) == -Eigen::Matrix3d::Identity());
  CHECK(sys.a.block<3, 3>(0, 4).isZero(0.0));
  // Torque of the hanging load: (0, r, 0) x (0, 0, -g) = (-r g, 0, 0).
  CHECK(sys.a(3, 0) == Approx(-model.torque_radius * model.gravity));
  CHECK(sys.a.block<3, 3>(3, 4) == -Eigen::Matrix3d::Identity());

  samples.pop_back();
  CHECK_THROWS_AS(build_calibration_system(samples, model), InsufficientDataError);
}

TEST_CASE("three generic orientations give full rank") {
  std::mt19937_64 rng(91);
  const SensorModel model = tilted_sensor();
  for (int trial = 0; trial < 20; ++trial) {
    std::vector<FTSample> samples;
    for (int i = 0; i < 3; ++i) samples.push_back(FTSample{0.0, random_orientation(rng), Eigen::Vector3d::Zero(), Eigen::Vector3d::Zero()});
    const auto sv = Eigen::JacobiSVD<Eigen::MatrixXd>(build_calibration_system(samples, model).a).singularValues();
    CHECK(sv(6) > 1e-6 * sv(0));
  }
}

TEST_CASE("forward model matches the balance equations") {
  std::mt19937_64 rng(92);
  const SensorModel model = tilted_sensor();
  for (int i = 0; i < 100; ++i) {
    const PayloadParams p = random_params(rng);
    const Eigen::Quaterniond q = random_orientation(rng);
    const FTSample a = synthetic_reading(q, p, model);
    const FTSample b = oracle_reading(q, p.mass, p.force_bias, p.torque_bias, model.ee_to_sensor,
                                      model.torque_radius, model.gravity);
    CHECK((a.force - b.force).norm() < 1e-12);
    CHECK((a.torque - b.torque).norm() < 1e-12);
  }
}

TEST_CASE("noiseless calibration recovers the payload") {
  const SensorModel model;
  SUBCASE("reference payload") {
    PayloadParams truth;
    truth.mass = 0.05;
    truth.force_bias = {0.1, -0.2, 0.3};
    truth.torque_bias = {0.01, 0.0, -0.02};
    std::mt19937_64 rng(93);
    std::vector<FTSample> samples;
    for (int i = 0; i < 6; ++i) samples.push_back(synthetic_reading(random_orientation(rng), truth, model));
    const CalibrationResult r = solve_calibration(samples, model);
    CHECK((r.params.as_vector() - truth.as_vector()).cwiseAbs().maxCoeff() < 1e-9);
    CHECK(r.residual_rms < 1e-9);
    CHECK_FALSE(r.ill_conditioned);
    CHECK_FALSE(r.mass_clamped);
  }
  SUBCASE("null payload") {
    std::vector<FTSample> samples;
    for (const auto& q : default_calibration_orientations()) samples.push_back(FTSample{0.0, q, Eigen::Vector3d::Zero(), Eigen::Vector3d::Zero()});
    const CalibrationResult r = solve_calibration(samples, model);
    CHECK(r.params.as_vector().cwiseAbs().maxCoeff() < 1e-12);
    CHECK(r.residual_rms < 1e-12);
  }
  SUBCASE("random payloads and sensor mounts") {
    std::mt19937_64 rng(94);
    const SensorModel tilted = tilted_sensor();
    for (int trial = 0; trial < 100; ++trial) {
      const PayloadParams truth = random_params(rng);
      std::vector<FTSample> samples;
      for (int i = 0; i < 3 + trial % 5; ++i) samples.push_back(synthetic_reading(random_orientation(rng), truth, tilted));
      const CalibrationResult r = solve_calibration(samples, tilted);
      CHECK((r.params.as_vector() - truth.as_vector()).cwiseAbs().maxCoeff() < 1e-9);
      CHECK(r.residual_rms < 1e-9);
    }
  }
}

TEST_CASE("noisy calibration stays inside the predicted spread") {
  const SensorModel model;
  PayloadParams truth;
  truth.mass = 0.05;
  truth.force_bias = {0.1, -0.2, 0.3};
  truth.torque_bias = {0.01, 0.0, -0.02};
  const double sigma = 0.01;
  int inside = 0;
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> noise(0.0, sigma);
    std::vector<FTSample> samples;
    for (const auto& q : default_calibration_orientations()) {
      FTSample s = synthetic_reading(q, truth, model);
      s.force += Eigen::Vector3d(noise(rng), noise(rng), noise(rng));
      samples.push_back(s);
    }
    const CalibrationResult r = solve_calibration(samples, model);
    const auto cov = parameter_covariance(build_calibration_system(samples, model), sigma, 0.0);
    const auto err = (r.params.as_vector() - truth.as_vector()).cwiseAbs();
    bool ok = true;
    for (int k = 0; k < 7; ++k) ok = ok && err(k) <= 3.0 * std::sqrt(cov(k, k)) + 1e-15;
    inside += ok;
  }
  CHECK(inside >= 95);
}

TEST_CASE("calibration flags") {
  const SensorModel model;
  SUBCASE("negative mass is clamped") {
    PayloadParams truth;
    truth.mass = -0.05;
    truth.force_bias = {0.1, 0.0, 0.0};
    std::vector<FTSample> samples;
    for (const auto& q : default_calibration_orientations()) samples.push_back(synthetic_reading(q, truth, model));
    const CalibrationResult r = solve_calibration(samples, model);
    CHECK(r.mass_clamped);
    CHECK(r.params.mass == 0.0);
    CHECK(r.residual_rms > 0.0);
  }
  SUBCASE("a single orientation is ill-conditioned") {
    std::vector<FTSample> samples(4, synthetic_reading(Eigen::Quaterniond::Identity(), PayloadParams{0.1, Eigen::Vector3d::Zero(), Eigen::Vector3d::Zero()}, model));
    const CalibrationResult r = solve_calibration(samples, model);
    CHECK(r.ill_conditioned);
    CHECK(r.condition_number > kIllConditioned);
    CHECK(r.residual_rms < 1e-9);
  }
}

TEST_CASE("wrench compensation") {
  std::mt19937_64 rng(95);
  const SensorModel model = tilted_sensor();
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  for (int i = 0; i < 100; ++i) {
    const PayloadParams p = random_params(rng);
    const Eigen::Quaterniond q = random_orientation(rng);
    const Wrench none = compensate_wrench(synthetic_reading(q, p, model), p, model);
    CHECK(none.force.norm() < 1e-9);
    CHECK(none.torque.norm() < 1e-9);

    const Wrench ext{{u(rng), u(rng), u(rng)}, {0.1 * u(rng), 0.1 * u(rng), 0.1 * u(rng)}};
    const Wrench back = compensate_wrench(synthetic_reading(q, p, model, ext), p, model);
    CHECK((back.force - ext.force).norm() < 1e-9);
    CHECK((back.torque - ext.torque).norm() < 1e-9);
  }
  const PayloadParams p{0.05, {0.1, -0.2, 0.3}, {0.01, 0.0, -0.02}};
  const Wrench push{{0.0, 0.0, 0.5}, Eigen::Vector3d::Zero()};
  for (const auto& q : default_calibration_orientations()) {
    const Wrench w = compensate_wrench(synthetic_reading(q, p, model, push), p, model);
    CHECK((w.force - Eigen::Vector3d(0, 0, 0.5)).norm() < 1e-9);
  }
}

TEST_CASE("sample CSV round trip") {
  std::mt19937_64 rng(96);
  std::vector<FTSample> samples;
  for (int i = 0; i < 5; ++i) {
    FTSample s = synthetic_reading(random_orientation(rng), random_params(rng), SensorModel{});
    s.t = 0.1 * i;
    samples.push_back(s);
  }
  std::stringstream ss;
  write_samples_csv(ss, samples);
  const std::vector<FTSample> back = read_samples_csv(ss);
  REQUIRE(back.size() == samples.size());
  for (std::size_t i = 0; i < samples.size(); ++i) {
    CHECK(back[i].t == samples[i].t);
    CHECK(back[i].orientation.coeffs() == samples[i].orientation.coeffs());
    CHECK(back[i].force == samples[i].force);
    CHECK(back[i].torque == samples[i].torque);
  }
  std::stringstream bad("t,qw,qx,qy,qz,fx,fy,fz,tx,ty,tz\n0,1,0,0,0,1,2,3,4,5\n");
  CHECK_THROWS_WITH_AS(read_samples_csv(bad), doctest::Contains("line 2"), InvalidSpecError);
  std::stringstream unnormalized("0,2,0,0,0,1,2,3,4,5,6\n");
  CHECK_THROWS_AS(read_samples_csv(unnormalized), InvalidSpecError);
}

TEST_CASE("deadband examples and properties") {
  CHECK(deadband_error(0.1, 0.25) == 0.0);
  CHECK(deadband_error(0.5, 0.25) == 0.25);
  CHECK(deadband_error(-0.5, 0.25) == -0.25);
  CHECK(deadband_error(0.25, 0.25) == 0.0);
  CHECK(deadband_error(-0.25, 0.25) == 0.0);

  double prev = deadband_error(-2.0, 0.25);
  for (int i = 1; i <= 40000; ++i) {
    const double f = -2.0 + 1e-4 * i;
    const double e = deadband_error(f, 0.25);
    CHECK(std::abs(e - prev) <= 1e-4 + 1e-12);
    CHECK(e == -deadband_error(-f, 0.25));
    if (std::abs(f) <= 0.25) CHECK(e == 0.0);
    prev = e;
  }
  CHECK(deadband_error(Eigen::Vector3d(0.1, 0.5, -0.5), 0.25) == Eigen::Vector3d(0.0, 0.25, -0.25));
}

TEST_CASE("PID closed forms") {
  SUBCASE("zero history, zero error") {
    PidState s;
    CHECK(pid_step(s, Eigen::Vector3d::Zero()).isZero(0.0));
  }
  SUBCASE("pure P") {
    PidState s;
    s.gains = {1.0, 0.0, 0.0};
    CHECK((pid_step(s, {0.25, 0, 0}) - Eigen::Vector3d(0.25, 0, 0)).norm() < 1e-12);
  }
  SUBCASE("pure I, rectangle rule") {
    PidState s;
    s.gains = {0.0, 0.3, 0.0};
    s.i_max = 1e9;
    const Eigen::Vector3d e(0.4, -0.1, 0.2);
    Eigen::Vector3d v;
    for (int n = 1; n <= 50; ++n) {
      v = pid_step(s, e);
      CHECK((v - s.gains.ki * n * s.dt * e).norm() < 1e-12);
    }
  }
  SUBCASE("pure D, backward difference") {
    PidState s;
    s.gains = {0.0, 0.0, 0.5};
    CHECK((pid_step(s, {1, 0, 0}) - Eigen::Vector3d(0.5 / s.dt, 0, 0)).norm() < 1e-12);
    CHECK((pid_step(s, {1, 0, 0})).norm() < 1e-12);
  }
  SUBCASE("integral clamp") {
    PidState s;
    s.gains = {0.0, 1.0, 0.0};
    s.i_max = 0.05;
    Eigen::Vector3d v;
    for (int n = 0; n < 1000; ++n) v = pid_step(s, {1.0, -1.0, 0.0});
    CHECK(v.x() == Approx(0.05));
    CHECK(v.y() == Approx(-0.05));
    CHECK(v.z() == 0.0);
  }
  SUBCASE("linear in error while the clamp is inactive") {
    std::mt19937_64 rng(97);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    for (int i = 0; i < 100; ++i) {
      PidState base;
      base.integral = {u(rng), u(rng), u(rng)};
      base.prev_error = {u(rng), u(rng), u(rng)};
      base.i_max = 1e9;
      const Eigen::Vector3d e1(u(rng), u(rng), u(rng)), e2(u(rng), u(rng), u(rng));
      const double a = u(rng), b = u(rng);
      auto at = [&](const Eigen::Vector3d& e) {
        PidState s = base;
        return pid_step(s, e);
      };
      const Eigen::Vector3d zero = at(Eigen::Vector3d::Zero());
      const Eigen::Vector3d lhs = at(a * e1 + b * e2) - zero;
      const Eigen::Vector3d rhs = a * (at(e1) - zero) + b * (at(e2) - zero);
      CHECK((lhs - rhs).norm() < 1e-12);
    }
  }
  SUBCASE("state validation") {
    PidState s;
    s.f_th = 0.0;
    CHECK_THROWS_AS(s.validate(), InvalidSpecError);
    s = PidState{};
    s.dt = 0.0;
    CHECK_THROWS_AS(s.validate(), InvalidSpecError);
  }
}

TEST_CASE("admittance overrides trajectory following outside the band") {
  AdmittanceController c(PidState{});
  const Eigen::Vector3d traj(0.01, 0.0, -0.02);
  const ControlTick quiet = c.step({0.1, -0.2, 0.0}, traj);
  CHECK_FALSE(quiet.admittance);
  CHECK(quiet.velocity == traj);
  CHECK(quiet.error.isZero(0.0));

  const ControlTick push = c.step({0.0, 0.0, 1.25}, traj);
  CHECK(push.admittance);
  CHECK(push.error == Eigen::Vector3d(0, 0, 1.0));
  // About 2 cm/s for a 1 N violation with the default gains.
  CHECK(push.velocity.z() > 0.015);
  CHECK(push.velocity.z() < 0.08);
  CHECK(push.velocity.x() == 0.0);
}
