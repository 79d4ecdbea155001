#include "mmblimp/control.hpp"

#include <string>
#include <vector>

#include "mmblimp/errors.hpp"

namespace mmb::control {
namespace {

double pid(const PidGains& g, double e, double integral, double e_dot) {
  return g.kp * e + g.ki * integral + g.kd * e_dot;
}

double sign_of(double x) { return x < 0.0 ? -1.0 : 1.0; }

}  // namespace

void ControlGains::validate() const {
  std::vector<std::string> bad;
  if (!(pitch.kp > 0.0)) bad.push_back("controller.pitch kp must be > 0");
  if (!(pitch.kd > 0.0)) bad.push_back("controller.pitch kd must be > 0");
  if (!(lambda > 0.0)) bad.push_back("controller.lambda must be > 0");
  if (!(epsilon > 0.0)) bad.push_back("controller.epsilon must be > 0");
  if (!(rho_theta >= 0.0)) bad.push_back("controller.rho_theta must be >= 0");
  if (!(D_theta >= 0.0)) bad.push_back("controller.D_theta must be >= 0");
  if (!(yaw_roll_limit > 0.0 && yaw_roll_limit < kPi / 2.0)) {
    bad.push_back("controller.yaw_roll_limit must be in (0, 90) deg");
  }
  for (double s : {pitch_sense, roll_sense, yaw_sense}) {
    if (s != 1.0 && s != -1.0) {
      bad.push_back("controller sense values must be +1 or -1");
      break;
    }
  }
  for (const PidGains* g : {&roll, &pitch, &yaw, &inner_x, &inner_y}) {
    if (g->kp < 0.0 || g->ki < 0.0 || g->kd < 0.0) {
      bad.push_back("controller gains must be non-negative");
      break;
    }
  }
  if (!bad.empty()) throw ValidationError(bad);
}

DualLoopController::DualLoopController(ControlGains gains, arm::ArmSpec spec)
    : gains_(gains), spec_(spec) {
  gains_.validate();
  spec_.validate();
}

void DualLoopController::reset() {
  int_roll_ = int_pitch_ = int_yaw_ = 0.0;
  int_inner_.setZero();
  prev_inner_err_.setZero();
  has_prev_ = false;
}

OuterOutput DualLoopController::outer_attitude_law(const Vec3& eta, const Vec3& eta_ref,
                                                   const Vec3& eta_rate, double dt,
                                                   bool control_yaw) {
  const ControlGains& g = gains_;
  OuterOutput out;
  out.roll_ref = eta_ref.x();

  if (control_yaw) {
    const double e = wrap_pi(eta.z() - eta_ref.z());
    const double lim = g.yaw_roll_limit;
    const double trial = int_yaw_ + e * dt;
    double u = -g.yaw_sense * pid(g.yaw, e, trial, eta_rate.z());
    if (std::abs(u) > lim) {
      // Integrate only while it pulls the setpoint back inside the bound.
      if (-g.yaw_sense * e * sign_of(u) < 0.0) int_yaw_ = trial;
      u = clamp_abs(u, lim);
    } else {
      int_yaw_ = trial;
    }
    out.roll_ref += u;
  }

  const double e_phi = eta.x() - out.roll_ref;
  const double e_theta = eta.y() - eta_ref.y();
  const double trial_roll = int_roll_ + e_phi * dt;
  const double trial_pitch = int_pitch_ + e_theta * dt;

  Vec2 d(-g.pitch_sense * pid(g.pitch, e_theta, trial_pitch, eta_rate.y()),
         -g.roll_sense * pid(g.roll, e_phi, trial_roll, eta_rate.x()));
  const double lim = spec_.max_bend();
  const double n = d.norm();
  if (n > lim) {
    out.saturated = true;
    // Hold an integrator when its error would push further out.
    if (-g.pitch_sense * e_theta * d.x() < 0.0) int_pitch_ = trial_pitch;
    if (-g.roll_sense * e_phi * d.y() < 0.0) int_roll_ = trial_roll;
    d *= lim / n;
  } else {
    int_pitch_ = trial_pitch;
    int_roll_ = trial_roll;
  }
  out.delta_ref = d;
  return out;
}

InnerOutput DualLoopController::inner_arm_law(const Vec2& q, const Vec2& q_ref, double dt) {
  InnerOutput out;
  const Vec2 e = q_ref - q;
  const Vec2 de = has_prev_ && dt > 0.0 ? Vec2((e - prev_inner_err_) / dt) : Vec2::Zero();
  prev_inner_err_ = e;
  has_prev_ = true;

  const Vec2 trial = int_inner_ + e * dt;
  const Vec2 rate(pid(gains_.inner_x, e.x(), trial.x(), de.x()),
                  pid(gains_.inner_y, e.y(), trial.y(), de.y()));
  Vec2 w = arm::motors_from_q_rates(rate, spec_);
  const double lim = spec_.motor_limit;
  for (int i = 0; i < 2; ++i) {
    if (std::abs(w[i]) > lim) {
      out.saturated = true;
      w[i] = clamp_abs(w[i], lim);
    } else {
      int_inner_[i] = trial[i];
    }
  }
  out.omega_in = w;
  out.ddelta = arm::q_rates_from_motors(w, spec_);
  return out;
}

Vec2 outer_pd(const Vec3& eta, const Vec3& eta_ref, const Vec3& eta_rate, const ControlGains& g,
              double limit) {
  const double e_theta = eta.y() - eta_ref.y();
  const double e_phi = eta.x() - eta_ref.x();
  Vec2 d(-g.pitch_sense * (g.pitch.kp * e_theta + g.pitch.kd * eta_rate.y()),
         -g.roll_sense * (g.roll.kp * e_phi + g.roll.kd * eta_rate.x()));
  const double n = d.norm();
  if (n > limit) d *= limit / n;
  return d;
}

double default_envelope(const arm::ArmSpec& spec) {
  return spec.max_bend() * spec.k() * spec.r_reel * spec.motor_limit;
}

GainReport gain_condition(const ControlGains& gains, const VehicleParams& params,
                          double envelope) {
  const double ma = params.ma, L = params.arm.L, d = params.arm.d, g = params.g;
  const double kp = gains.pitch.kp, kd = gains.pitch.kd;
  GainReport r;
  r.envelope = envelope;
  r.lambda_threshold = ma * L * L / (d * d) * envelope / kp;
  r.lambda_margin = gains.lambda - r.lambda_threshold;
  const double damping = gains.D_theta + ma * g * L * kd / (2.0 * d) + gains.lambda * kd / 2.0;
  r.damping_margin = damping - gains.rho_theta / 2.0;
  r.a = damping - gains.epsilon / 2.0;
  r.b = gains.lambda * kp / 2.0;
  r.uub_radius = std::abs(gains.rho_theta) / std::sqrt(gains.epsilon * gains.lambda * kp);
  return r;
}

GainReport gain_condition(const ControlGains& gains, const VehicleParams& params) {
  return gain_condition(gains, params, default_envelope(params.arm));
}

LyapunovSample lyapunov_diagnostics(double e, double e_dot, double delta_x,
                                    const ControlGains& gains, const VehicleParams& params) {
  const double L = params.arm.L, d = params.arm.d, h = params.arm.h;
  LyapunovSample s;
  s.J_yy_eff = params.J(1, 1) +
               params.ma * (L * L * delta_x * delta_x / (4.0 * d * d) + (h + L) * (h + L));
  s.V = 0.5 * s.J_yy_eff * e_dot * e_dot + 0.5 * gains.pitch.kp * e * e +
        0.25 * gains.lambda * delta_x * delta_x;
  const GainReport r = gain_condition(gains, params);
  s.V_dot_bound = -r.a * e_dot * e_dot - r.b * e * e +
                  gains.rho_theta * gains.rho_theta / (2.0 * gains.epsilon);
  return s;
}

LyapunovSample lyapunov_diagnostics(const BodyState& s, const Vec3& eta_ref,
                                    const ControlGains& gains, const VehicleParams& params,
                                    double dx_hold) {
  const Vec3 rates = dynamics::euler_rate_matrix(s.eta) * s.omega;
  return lyapunov_diagnostics(s.eta.y() - eta_ref.y(), rates.y(), s.q_arm.x() - dx_hold, gains,
                              params);
}

double pitch_hold_offset(const VehicleParams& params, double theta) {
  // trim pitch falls monotonically as the mass moves forward
  const VehicleParams neutral = with_neutral_buoyancy(params);
  // near the workspace edge the trim can tip past the gimbal guard; treat that
  // as beyond any reachable target
  const auto pitch_at = [&](double dx) {
    try {
      return dynamics::static_trim(neutral, Vec2(dx, 0.0)).eta.y() - theta;
    } catch (const NoTrimFound&) {
      return dx < 0.0 ? kPi : -kPi;
    }
  };
  double lo = -0.999 * params.arm.max_bend(), hi = -lo;
  double f_lo = pitch_at(lo);
  if (f_lo <= 0.0) return lo;
  if (pitch_at(hi) >= 0.0) return hi;
  for (int i = 0; i < 60 && hi - lo > 1e-10; ++i) {
    const double mid = 0.5 * (lo + hi);
    const double f = pitch_at(mid);
    if ((f > 0.0) == (f_lo > 0.0)) {
      lo = mid;
      f_lo = f;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

double OmniThrust::effort() const {
  return std::pow(left.norm(), 1.5) + std::pow(right.norm(), 1.5) +
         std::pow(std::abs(vertical), 1.5);
}

OmniThrust omni_allocate(const OmniSpec& spec, double h, const Vec3& moment_demand,
                         double forward, double up) {
  OmniThrust t;
  const double b = spec.b;
  t.vertical = clamp_abs((moment_demand.y() - h * forward) / spec.x_v, spec.F_max);
  const double pair_up = up - t.vertical;
  t.left = Vec2(forward / 2.0 + moment_demand.z() / (2.0 * b),
                pair_up / 2.0 + moment_demand.x() / (2.0 * b));
  t.right = Vec2(forward / 2.0 - moment_demand.z() / (2.0 * b),
                 pair_up / 2.0 - moment_demand.x() / (2.0 * b));
  for (Vec2* v : {&t.left, &t.right}) {
    (*v)[0] = clamp_abs((*v)[0], spec.F_max);
    (*v)[1] = clamp_abs((*v)[1], spec.F_max);
  }
  const Vec3 pl(0.0, -b, h), pr(0.0, b, h), pv(spec.x_v, 0.0, 0.0);
  const Vec3 fl(t.left[0], 0.0, -t.left[1]);
  const Vec3 fr(t.right[0], 0.0, -t.right[1]);
  const Vec3 fv(0.0, 0.0, -t.vertical);
  t.force = fl + fr + fv;
  t.moment = pl.cross(fl) + pr.cross(fr) + pv.cross(fv);
  return t;
}

double elevator_moment(double deflection, double airspeed, const ElevatorSpec& spec,
                       double scale) {
  const double de = clamp_abs(deflection, spec.max_deflection);
  return scale * airspeed * airspeed * spec.C_M_de * de;
}

BaselineController::BaselineController(BaselineActuator actuator, const VehicleParams& params)
    : act_(actuator),
      net_weight_(params.mass() * params.g - params.Fb),
      h_(params.arm.h) {}

void BaselineController::reset() {
  int_att_.setZero();
  int_alt_ = 0.0;
  int_elev_ = 0.0;
}

OmniThrust BaselineController::omni_command(const BodyState& s, const Vec3& eta_ref,
                                            const Vec3& eta_rate, double z_ref, double forward,
                                            double dt) {
  const OmniSpec& o = act_.omni;
  Vec3 e = s.eta - eta_ref;
  e.z() = wrap_pi(e.z());
  int_att_ += e * dt;
  const Vec3 tau(-pid(o.roll, e.x(), int_att_.x(), eta_rate.x()),
                 -pid(o.pitch, e.y(), int_att_.y(), eta_rate.y()),
                 -pid(o.yaw, e.z(), int_att_.z(), eta_rate.z()));
  const double ez = s.p.z() - z_ref;  // positive when below the target
  int_alt_ += ez * dt;
  const double up = net_weight_ + pid(o.altitude, ez, int_alt_, s.v.z());
  return omni_allocate(o, h_, tau, forward, up);
}

double BaselineController::elevator_command(const Vec3& eta, const Vec3& eta_ref,
                                            const Vec3& eta_rate, double dt) {
  const ElevatorSpec& el = act_.elevator;
  const double e = eta.y() - eta_ref.y();
  const double trial = int_elev_ + e * dt;
  const double u = -sign_of(el.C_M_de) * pid(el.pitch, e, trial, eta_rate.y());
  if (std::abs(u) > el.max_deflection) return clamp_abs(u, el.max_deflection);
  int_elev_ = trial;
  return u;
}

}  // namespace mmb::control
