#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "mmblimp/analysis.hpp"
#include "mmblimp/errors.hpp"

using namespace mmb;
using namespace mmb::analysis;

namespace {

// Closed-form equilibrium from the cotangent form of the balance equations,
// independent of the bisection in the library.
double phi_from_cot(double cot_phi) { return std::atan(1.0 / cot_phi); }

double rigid_oracle(double th, const ArmStudyParams& p) {
  const double kl = p.h / p.L, km = p.m_a2 / p.m_a;
  return phi_from_cot(-1.0 / std::tan(th) - (1.0 + km) * kl / std::sin(th));
}

double continuum_oracle(double th, const ArmStudyParams& p) {
  const double chord = 2.0 * p.L / std::abs(th) * std::sin(std::abs(th) / 2.0);
  const double kl = p.h / chord;
  return phi_from_cot(-1.0 / std::tan(th) - kl * th / (std::sin(th) * std::sin(th)));
}

TrajectoryLog line_log(double speed, int n, double dt) {
  TrajectoryLog log;
  log.dt = dt;
  for (int i = 0; i < n; ++i) {
    LogRecord r;
    r.t = i * dt;
    r.state.p = Vec3(speed * r.t, 0.0, 0.0);
    r.state.v = Vec3(speed, 0.0, 0.0);
    r.energy = 3.0 * r.t;  // 3 W
    log.records.push_back(r);
  }
  return log;
}

}  // namespace

TEST(GainStudy, LinearGainsOfTheReferenceGeometry) {
  const ArmStudyParams p;  // L 0.40, h 0.30, 30 g and 15 g
  const LinearGains k = linear_gains(p);
  EXPECT_NEAR(k.K_cont, 4.0 / 7.0, 1e-15);
  EXPECT_NEAR(k.K_rig, 8.0 / 17.0, 1e-15);
  EXPECT_NEAR(k.K_cont, 0.57, 0.005);
  EXPECT_NEAR(k.K_rig, 0.47, 0.005);
  EXPECT_NEAR(100.0 * k.ratio(), 82.0, 1.0);
  EXPECT_NEAR(100.0 * k.improvement(), 21.3, 0.5);
  EXPECT_NEAR(rad2deg(k.K_cont * deg2rad(60.0)), 34.2, 0.1);
  EXPECT_NEAR(rad2deg(k.K_rig * deg2rad(60.0)), 28.2, 0.1);
}

TEST(GainStudy, ExactEquilibriumMatchesClosedForm) {
  const ArmStudyParams p;
  for (double deg = -60.0; deg <= 60.0; deg += 7.5) {
    if (deg == 0.0) continue;
    const double th = deg2rad(deg);
    const double pr = equilibrium_exact(th, p, ArmKind::Rigid);
    const double pc = equilibrium_exact(th, p, ArmKind::Continuum);
    EXPECT_NEAR(pr, rigid_oracle(th, p), 1e-12) << deg;
    EXPECT_NEAR(pc, continuum_oracle(th, p), 1e-12) << deg;
    EXPECT_LT(std::abs(constraint_residual(th, pr, p, ArmKind::Rigid)), 1e-10);
    EXPECT_LT(std::abs(constraint_residual(th, pc, p, ArmKind::Continuum)), 1e-10);
  }
}

// Values worked by hand from the cotangent form.
TEST(GainStudy, SixtyDegreeValues) {
  const ArmStudyParams p;
  EXPECT_NEAR(rad2deg(equilibrium_exact(deg2rad(60.0), p, ArmKind::Rigid)), -28.055, 0.001);
  EXPECT_NEAR(rad2deg(equilibrium_exact(deg2rad(60.0), p, ArmKind::Continuum)), -30.853, 0.001);
}

TEST(GainStudy, SmallAngleLimit) {
  const ArmStudyParams p;
  EXPECT_NEAR(equilibrium_exact(0.0, p, ArmKind::Rigid), 0.0, 1e-14);
  EXPECT_NEAR(equilibrium_exact(0.0, p, ArmKind::Continuum), 0.0, 1e-14);
  EXPECT_NEAR(equilibrium_exact(1e-6, p, ArmKind::Continuum) / 1e-6, -linear_gains(p).K_cont,
              1e-6);
}

TEST(GainStudy, OutsideTheRangeThrows) {
  const ArmStudyParams p;
  EXPECT_THROW(equilibrium_exact(deg2rad(61.0), p, ArmKind::Rigid), NoRoot);
  EXPECT_THROW(equilibrium_exact(deg2rad(-75.0), p, ArmKind::Continuum), NoRoot);
}

TEST(GainStudy, ChordLength) {
  EXPECT_DOUBLE_EQ(chord_length(0.0, 0.4), 0.4);
  EXPECT_NEAR(chord_length(kPi, 0.4), 0.8 / kPi, 1e-15);  // half circle: diameter
  EXPECT_DOUBLE_EQ(chord_length(-0.3, 0.4), chord_length(0.3, 0.4));
}

TEST(GainStudy, LinearizationErrorSweep) {
  const ArmStudyParams p;
  const SweepResult s = approximation_error_sweep(p, 241);
  EXPECT_LE(rad2deg(s.max_err_rigid), 4.0);
  EXPECT_LE(rad2deg(s.max_err_continuum), 4.0);
  const SweepResult s10 = approximation_error_sweep(p, 41, deg2rad(10.0));
  EXPECT_LT(rad2deg(s10.max_err_rigid), 0.3);
  EXPECT_LT(rad2deg(s10.max_err_continuum), 0.3);
  EXPECT_THROW(approximation_error_sweep(p, 5), std::invalid_argument);
}

TEST(CumRmse, ZeroAndConstantError) {
  const std::vector<double> zero(50, 0.0);
  for (double v : cum_rmse(zero, {0.0}, 0.1)) EXPECT_EQ(v, 0.0);
  const std::vector<double> c(50, 0.2);
  const auto out = cum_rmse(c, {0.0}, 0.1);
  for (std::size_t k = 0; k < out.size(); ++k) EXPECT_NEAR(out[k], 0.2 * 0.1 * (k + 1), 1e-14);
  const auto plain = cum_rmse(c, {0.0}, 0.1, false);
  EXPECT_NEAR(plain.back(), 0.2, 1e-15);
}

TEST(CumRmse, StepDisturbanceByResumming) {
  std::vector<double> x(200), ref(200);
  for (int k = 0; k < 200; ++k) {
    ref[k] = 0.05 * std::sin(0.1 * k);
    x[k] = ref[k] + (k >= 70 && k < 120 ? 0.3 : 0.01 * std::cos(0.3 * k));
  }
  const double dt = 0.02;
  const auto out = cum_rmse(x, ref, dt);
  for (std::size_t k = 0; k < x.size(); ++k) {
    double total = 0.0;
    for (std::size_t j = 0; j <= k; ++j) {
      double ss = 0.0;
      for (std::size_t i = 0; i <= j; ++i) ss += (x[i] - ref[i]) * (x[i] - ref[i]);
      total += std::sqrt(ss / (j + 1)) * dt;
    }
    EXPECT_NEAR(out[k], total, 1e-12);
  }
}

TEST(CumRmse, Errors) {
  EXPECT_THROW(cum_rmse({}, {0.0}, 0.1), EmptySeries);
  EXPECT_THROW(cum_rmse({1.0, 2.0, 3.0}, {0.0, 1.0}, 0.1), std::invalid_argument);
}

TEST(Curvature, CircleAndLine) {
  TrajectoryLog circle;
  circle.dt = 0.05;
  const double R = 2.0, w = 0.25;
  for (int i = 0; i < 800; ++i) {
    LogRecord r;
    r.t = i * circle.dt;
    r.state.p = Vec3(R * std::cos(w * r.t), R * std::sin(w * r.t), 0.1 * r.t);
    circle.records.push_back(r);
  }
  const auto k = discrete_curvature(circle);
  ASSERT_FALSE(k.empty());
  for (double v : k) EXPECT_NEAR(v, 1.0 / R, 1e-9);
  for (double v : discrete_curvature(line_log(0.5, 100, 0.1))) EXPECT_NEAR(v, 0.0, 1e-12);
}

TEST(Metrics, StraightLine) {
  const TrajectoryLog log = line_log(0.5, 101, 0.1);
  const MetricsReport m = trajectory_metrics(log);
  EXPECT_NEAR(m.duration, 10.0, 1e-12);
  EXPECT_NEAR(m.path_length, 5.0, 1e-12);
  EXPECT_NEAR(m.mean_speed, 0.5, 1e-12);
  EXPECT_NEAR(m.horizontal_speed_std, 0.0, 1e-12);
  EXPECT_NEAR(m.curvature_std, 0.0, 1e-12);
  EXPECT_NEAR(m.power_rate, 3.0 / 7.4 * 1000.0 / 60.0, 1e-9);
  EXPECT_NEAR(m.specific_energy, 30.0 / 3.6 / 5.0, 1e-9);
  for (double v : {m.duration, m.path_length, m.horizontal_speed_std, m.vertical_speed_std,
                   m.curvature_mean, m.curvature_std, m.power_rate, m.specific_energy})
    EXPECT_GE(v, 0.0);
}

TEST(Metrics, DegenerateInputs) {
  EXPECT_THROW(trajectory_metrics(line_log(0.5, 2, 0.1)), DegenerateTrajectory);
  EXPECT_THROW(trajectory_metrics(line_log(0.0, 50, 0.1)), DegenerateTrajectory);
}

TEST(Repeatability, RecoversGaussianSpread) {
  std::mt19937_64 rng(99);
  const double sigma = deg2rad(0.1);
  std::normal_distribution<double> n(0.0, sigma);
  const std::vector<Vec2> targets{Vec2(0, 0), Vec2(-0.2, 0), Vec2(0, 0.2)};
  std::vector<std::vector<Vec2>> runs(100);
  for (auto& run : runs)
    for (const Vec2& t : targets) run.push_back(t + Vec2(n(rng), n(rng)));
  const auto stats = repeatability_stats(runs);
  ASSERT_EQ(stats.size(), 3u);
  for (const auto& s : stats) {
    EXPECT_GE(s.sigma_theta, 0.08 * sigma / 0.1);
    EXPECT_LE(s.sigma_theta, 0.12 * sigma / 0.1);
    EXPECT_GE(s.sigma_phi, 0.8 * sigma);
    EXPECT_LE(s.sigma_phi, 1.2 * sigma);
    EXPECT_GE(s.ellipse.a, s.ellipse.b);
  }
  // about 95% of the samples fall inside the ellipse
  int inside = 0;
  for (const auto& run : runs) inside += stats[1].contains(run[1]);
  EXPECT_GE(inside, 88);
  EXPECT_LE(inside, 100);
}

TEST(Repeatability, NeedsTwoRuns) {
  EXPECT_THROW(repeatability_stats({{Vec2::Zero()}}), InsufficientRuns);
}

TEST(AeroScale, CalibrationReproducesTheDefault) {
  VehicleParams p;
  const double scale = calibrate_aero_scale(p, 8.0 * kGramForce, 0.5);
  EXPECT_NEAR(scale, aero::AeroModel{}.scale, 1e-4);
  EXPECT_NEAR(steady_airspeed(p, 8.0 * kGramForce), 0.5, 1e-3);
  EXPECT_THROW(calibrate_aero_scale(p, 8.0 * kGramForce, 50.0), CalibrationError);
}
