#include "mmblimp/analysis.hpp"

#include <algorithm>
#include <numeric>
#include <string>

#include "mmblimp/errors.hpp"

namespace mmb::analysis {
namespace {

constexpr double kOperatingLimit = deg2rad(60.0);

double sample_std(const std::vector<double>& x) {
  if (x.size() < 2) return 0.0;
  const double mean = std::accumulate(x.begin(), x.end(), 0.0) / x.size();
  double ss = 0.0;
  for (double v : x) ss += (v - mean) * (v - mean);
  return std::sqrt(ss / (x.size() - 1));
}

double mean_of(const std::vector<double>& x) {
  return x.empty() ? 0.0 : std::accumulate(x.begin(), x.end(), 0.0) / x.size();
}

}  // namespace

double chord_length(double theta, double L) {
  const double t = std::abs(theta);
  if (t < 1e-8) return L * (1.0 - t * t / 24.0);
  return 2.0 * L / t * std::sin(t / 2.0);
}

double ArmStudyParams::k_l_continuum(double theta) const { return h / chord_length(theta, L); }

void ArmStudyParams::validate() const {
  std::vector<std::string> bad;
  if (!(L > 0.0)) bad.push_back("L must be > 0");
  if (!(h > 0.0)) bad.push_back("h must be > 0");
  if (!(m_a > 0.0)) bad.push_back("m_a must be > 0");
  if (!(m_a2 > 0.0)) bad.push_back("m_a2 must be > 0");
  if (!bad.empty()) throw ValidationError(bad);
}

double constraint_residual(double theta, double phi, const ArmStudyParams& p, ArmKind kind) {
  if (kind == ArmKind::Rigid) {
    return std::sin(theta + phi) + (1.0 + p.k_m()) * p.k_l_rigid() * std::sin(phi);
  }
  // Continuum form divided by theta so that theta = 0 stays well posed.
  const double sinc = std::abs(theta) < 1e-8 ? 1.0 - theta * theta / 6.0 : std::sin(theta) / theta;
  return sinc * std::sin(theta + phi) + p.k_l_continuum(theta) * std::sin(phi);
}

double equilibrium_exact(double theta, const ArmStudyParams& p, ArmKind kind) {
  if (!(std::abs(theta) <= kOperatingLimit + 1e-12)) {
    throw NoRoot("arm rotation outside the operating range of +-60 deg");
  }
  double lo = -deg2rad(89.9), hi = deg2rad(89.9);
  double flo = constraint_residual(theta, lo, p, kind);
  const double fhi = constraint_residual(theta, hi, p, kind);
  if (flo == 0.0) return lo;
  if (fhi == 0.0) return hi;
  if ((flo < 0.0) == (fhi < 0.0)) throw NoRoot("balance equation has no sign change");
  for (int i = 0; i < 200 && hi - lo > 1e-15; ++i) {
    const double mid = 0.5 * (lo + hi);
    const double fm = constraint_residual(theta, mid, p, kind);
    if (fm == 0.0) return mid;
    if ((fm < 0.0) == (flo < 0.0)) {
      lo = mid;
      flo = fm;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

LinearGains linear_gains(const ArmStudyParams& p) {
  LinearGains g;
  g.K_cont = 1.0 / (1.0 + p.h / p.L);
  g.K_rig = 1.0 / (1.0 + (1.0 + p.k_m()) * p.k_l_rigid());
  return g;
}

SweepResult approximation_error_sweep(const ArmStudyParams& p, int n_points, double theta_max) {
  if (n_points < 10) throw std::invalid_argument("approximation_error_sweep: n_points < 10");
  const LinearGains k = linear_gains(p);
  SweepResult r;
  for (int i = 0; i < n_points; ++i) {
    const double th = -theta_max + 2.0 * theta_max * i / (n_points - 1);
    const double er = std::abs(equilibrium_exact(th, p, ArmKind::Rigid) + k.K_rig * th);
    const double ec = std::abs(equilibrium_exact(th, p, ArmKind::Continuum) + k.K_cont * th);
    r.max_err_rigid = std::max(r.max_err_rigid, er);
    r.max_err_continuum = std::max(r.max_err_continuum, ec);
  }
  return r;
}

std::vector<double> cum_rmse(const std::vector<double>& series,
                             const std::vector<double>& reference, double dt, bool sum) {
  if (series.empty()) throw EmptySeries("cum_rmse: empty series");
  if (reference.size() != series.size() && reference.size() != 1) {
    throw std::invalid_argument("cum_rmse: reference length mismatch");
  }
  std::vector<double> out(series.size());
  double ss = 0.0, acc = 0.0;
  for (std::size_t k = 0; k < series.size(); ++k) {
    const double e = series[k] - (reference.size() == 1 ? reference[0] : reference[k]);
    ss += e * e;
    const double rmse = std::sqrt(ss / static_cast<double>(k + 1));
    acc += rmse * dt;
    out[k] = sum ? acc : rmse;
  }
  return out;
}

std::vector<double> discrete_curvature(const TrajectoryLog& log, double spacing) {
  std::vector<double> kappa;
  const auto& r = log.records;
  if (r.size() < 3 || !(log.dt > 0.0)) return kappa;
  const std::size_t n = r.size();
  std::size_t k = static_cast<std::size_t>(std::lround(spacing / log.dt));
  k = std::clamp<std::size_t>(k, 1, (n - 1) / 2);
  for (std::size_t i = k; i + k < n; ++i) {
    const Vec2 a = r[i - k].state.p.head<2>();
    const Vec2 b = r[i].state.p.head<2>();
    const Vec2 c = r[i + k].state.p.head<2>();
    const double ab = (b - a).norm(), bc = (c - b).norm(), ca = (a - c).norm();
    const double cross = (b - a).x() * (c - a).y() - (b - a).y() * (c - a).x();
    const double denom = ab * bc * ca;
    kappa.push_back(denom > 1e-15 ? 2.0 * std::abs(cross) / denom : 0.0);
  }
  return kappa;
}

MetricsReport trajectory_metrics(const TrajectoryLog& log, double voltage, double min_path) {
  const auto& r = log.records;
  if (r.size() < 3) throw DegenerateTrajectory("trajectory needs at least 3 samples");
  MetricsReport m;
  m.duration = r.back().t - r.front().t;
  std::vector<double> hs, vs;
  hs.reserve(r.size());
  vs.reserve(r.size());
  for (std::size_t i = 0; i < r.size(); ++i) {
    if (i > 0) m.path_length += (r[i].state.p - r[i - 1].state.p).norm();
    hs.push_back(r[i].state.v.head<2>().norm());
    vs.push_back(r[i].state.v.z());
  }
  if (!(m.path_length >= min_path)) {
    throw DegenerateTrajectory("path length below " + std::to_string(min_path) + " m");
  }
  m.mean_speed = m.duration > 0.0 ? m.path_length / m.duration : 0.0;
  m.horizontal_speed_std = sample_std(hs);
  m.vertical_speed_std = sample_std(vs);
  const std::vector<double> kappa = discrete_curvature(log);
  m.curvature_mean = mean_of(kappa);
  m.curvature_std = sample_std(kappa);
  const double energy = r.back().energy - r.front().energy;
  if (m.duration > 0.0) m.power_rate = power::mah_per_min(energy / m.duration, voltage);
  m.specific_energy = power::mwh_per_m(energy, m.path_length);
  return m;
}

bool WaypointStats::contains(const Vec2& x) const {
  const Eigen::Matrix2d inv = cov.inverse();
  const Vec2 d = x - mean;
  return d.dot(inv * d) <= kEllipseChi2;
}

std::vector<WaypointStats> repeatability_stats(const std::vector<std::vector<Vec2>>& runs) {
  if (runs.size() < 2) throw InsufficientRuns("repeatability needs at least two runs");
  const std::size_t nw = runs.front().size();
  for (const auto& run : runs) {
    if (run.size() != nw) throw std::invalid_argument("runs have different waypoint counts");
  }
  const double n = static_cast<double>(runs.size());
  std::vector<WaypointStats> out(nw);
  for (std::size_t j = 0; j < nw; ++j) {
    WaypointStats& w = out[j];
    for (const auto& run : runs) w.mean += run[j];
    w.mean /= n;
    for (const auto& run : runs) {
      const Vec2 d = run[j] - w.mean;
      w.cov += d * d.transpose();
    }
    w.cov /= (n - 1.0);
    w.sigma_theta = std::sqrt(w.cov(0, 0));
    w.sigma_phi = std::sqrt(w.cov(1, 1));
    Eigen::SelfAdjointEigenSolver<Eigen::Matrix2d> es(w.cov);
    const Vec2 ev = es.eigenvalues().cwiseMax(0.0);  // ascending
    w.ellipse.a = std::sqrt(kEllipseChi2 * ev(1));
    w.ellipse.b = std::sqrt(kEllipseChi2 * ev(0));
    const Vec2 major = es.eigenvectors().col(1);
    w.ellipse.angle = std::atan2(major.y(), major.x());
  }
  return out;
}

double steady_airspeed(const VehicleParams& params, double thrust, const Vec2& q_arm,
                       double duration, double average, double dt) {
  Environment env;
  BodyState s;
  s.q_arm = q_arm;
  ActuationCommand cmd;
  cmd.F = thrust;
  const long n = std::lround(duration / dt);
  const long n_avg = std::lround(average / dt);
  double sum = 0.0;
  for (long i = 0; i < n; ++i) {
    s = dynamics::step(s, cmd, params, env, dt, i * dt);
    if (i >= n - n_avg) sum += s.v.norm();
  }
  return sum / static_cast<double>(n_avg);
}

double calibrate_aero_scale(VehicleParams params, double thrust, double target_speed, double lo,
                            double hi, double tol) {
  // Speed falls monotonically as the scale grows.
  auto speed = [&](double scale) {
    params.aero.scale = scale;
    return steady_airspeed(params, thrust);
  };
  double f_lo = speed(lo) - target_speed;
  const double f_hi = speed(hi) - target_speed;
  if (!(f_lo > 0.0 && f_hi < 0.0)) {
    throw CalibrationError("target speed is not reachable within the scale bracket");
  }
  while (hi - lo > tol * std::max(1.0, lo)) {
    const double mid = 0.5 * (lo + hi);
    const double f = speed(mid) - target_speed;
    if (f > 0.0) {
      lo = mid;
      f_lo = f;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

}  // namespace mmb::analysis
