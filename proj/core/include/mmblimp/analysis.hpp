#pragma once

#include <vector>

#include "mmblimp/dynamics.hpp"
#include "mmblimp/log.hpp"
#include "mmblimp/math.hpp"
#include "mmblimp/power.hpp"

namespace mmb::analysis {

enum class ArmKind { Rigid, Continuum };

struct ArmStudyParams {
  double L = 0.40;
  double h = 0.30;
  double m_a = 0.030;
  double m_a2 = 0.015;  // joint actuator mass of the rigid arm

  double k_m() const { return m_a2 / m_a; }
  double k_l_rigid() const { return h / L; }
  // h over the chord of the bent arm.
  double k_l_continuum(double theta) const;
  void validate() const;
};

double chord_length(double theta, double L);

// Residual of the balance equation; zero at the equilibrium roll angle.
double constraint_residual(double theta, double phi, const ArmStudyParams& p, ArmKind kind);

// Exact equilibrium roll angle for arm rotation theta (rad), by bisection.
// Throws NoRoot outside the operating range.
double equilibrium_exact(double theta, const ArmStudyParams& p, ArmKind kind);

struct LinearGains {
  double K_cont = 0.0;
  double K_rig = 0.0;
  double ratio() const { return K_rig / K_cont; }
  double improvement() const { return K_cont / K_rig - 1.0; }
};

LinearGains linear_gains(const ArmStudyParams& p);

struct SweepResult {
  double max_err_rigid = 0.0;      // rad
  double max_err_continuum = 0.0;  // rad
};

SweepResult approximation_error_sweep(const ArmStudyParams& p, int n_points,
                                      double theta_max = deg2rad(60.0));

// Running RMSE of the error from the start of the series. With sum = true each
// value is accumulated over time (sum of RMSE * dt), otherwise it is returned
// as is. Throws EmptySeries.
std::vector<double> cum_rmse(const std::vector<double>& series,
                             const std::vector<double>& reference, double dt, bool sum = true);

struct MetricsReport {
  double duration = 0.0;      // s
  double path_length = 0.0;   // m
  double mean_speed = 0.0;    // m/s
  double horizontal_speed_std = 0.0;
  double vertical_speed_std = 0.0;
  double curvature_mean = 0.0;  // 1/m
  double curvature_std = 0.0;
  double power_rate = 0.0;       // mAh/min
  double specific_energy = 0.0;  // mWh/m
};

// Curvature from circles through points spaced `spacing` seconds apart on the
// horizontal projection.
std::vector<double> discrete_curvature(const TrajectoryLog& log, double spacing = 0.5);

// Throws DegenerateTrajectory for fewer than 3 samples or a path shorter
// than min_path.
MetricsReport trajectory_metrics(const TrajectoryLog& log, double voltage = 7.4,
                                 double min_path = 1e-6);

struct Ellipse {
  double a = 0.0;      // semi-major, same unit as the samples
  double b = 0.0;      // semi-minor
  double angle = 0.0;  // of the major axis from the first coordinate, rad
};

// Fraction of the bivariate normal inside the ellipse.
inline constexpr double kEllipseChi2 = 5.991;

struct WaypointStats {
  Vec2 mean = Vec2::Zero();  // (theta, phi)
  double sigma_theta = 0.0;
  double sigma_phi = 0.0;
  Eigen::Matrix2d cov = Eigen::Matrix2d::Zero();
  Ellipse ellipse;

  bool contains(const Vec2& x) const;
};

// runs[i][j] is the (theta, phi) attitude of run i at waypoint j.
// Throws InsufficientRuns for fewer than two runs.
std::vector<WaypointStats> repeatability_stats(const std::vector<std::vector<Vec2>>& runs);

// Steady airspeed reached with constant thrust and a fixed arm, from a
// time-marched run (mean over the last `average` seconds).
double steady_airspeed(const VehicleParams& params, double thrust, const Vec2& q_arm = Vec2::Zero(),
                       double duration = 60.0, double average = 10.0, double dt = 0.005);

// Bisection on the aero scale (0.5 rho A) so that the steady airspeed at
// `thrust` equals `target_speed`. Throws CalibrationError if the target is
// not bracketed by [lo, hi].
double calibrate_aero_scale(VehicleParams params, double thrust, double target_speed,
                            double lo = 0.05, double hi = 5.0, double tol = 1e-5);

}  // namespace mmb::analysis
