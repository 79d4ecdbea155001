#include "mmblimp/scenario.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "mmblimp/control.hpp"
#include "mmblimp/errors.hpp"

namespace mmb::harness {
namespace {

template <typename E>
[[noreturn]] void rethrow_at(const E& e, double t) {
  throw E(std::string(e.what()) + " (t = " + std::to_string(t) + " s)");
}

}  // namespace

TrajectoryLog run_scenario(const ScenarioConfig& cfg) {
  cfg.validate();
  const VehicleParams& params = cfg.vehicle;
  const double dt = cfg.sim.dt;
  const int dec = cfg.sim.decimation;
  const long n_steps = std::lround(cfg.sim.duration / dt);

  TrajectoryLog log;
  log.name = cfg.name;
  log.dt = dt * dec;

  Environment env;
  env.wind = cfg.wind;
  env.aero_enabled = cfg.aero_enabled;

  control::DualLoopController ctl(cfg.gains, params.arm);
  control::BaselineController base(cfg.baseline, params);
  const power::PowerModel& pm = cfg.power;

  BodyState s = cfg.initial;
  double energy = 0.0;
  bool claw_closed = false;
  bool clamp_pending = false;  // workspace clamp since the last record
  double hold_theta = std::numeric_limits<double>::quiet_NaN();  // pitch the offset was found for
  double dx_hold = 0.0;

  for (long i = 0; i <= n_steps && n_steps > 0; ++i) {
    const double t = static_cast<double>(i) * dt;
    try {
      const Mat3 P = dynamics::euler_rate_matrix(s.eta);
      const Vec3 eta_rate = P * s.omega;
      Vec3 eta_ref = cfg.reference_at(t);

      ActuationCommand cmd;
      bool saturated = false;
      double omni_effort = 0.0;
      Vec2 motors = Vec2::Zero();
      double de = 0.0;

      auto track_arm = [&](const Vec2& q_ref) {
        const control::InnerOutput in = ctl.inner_arm_law(s.q_arm, q_ref, dt);
        cmd.ddelta = in.ddelta;
        motors = in.omega_in;
        saturated = saturated || in.saturated;
      };

      switch (cfg.mode) {
        case Mode::OpenLoop: {
          const Script::Sample sc = cfg.script.at(t);
          track_arm(sc.delta);
          cmd.F = sc.F;
          de = sc.de;
          break;
        }
        case Mode::ClosedLoop: {
          const control::OuterOutput out =
              ctl.outer_attitude_law(s.eta, eta_ref, eta_rate, dt, cfg.control_yaw);
          saturated = out.saturated;
          eta_ref.x() = out.roll_ref;
          track_arm(out.delta_ref);
          cmd.F = cfg.thrust;
          break;
        }
        case Mode::Omni: {
          const control::OmniThrust th =
              base.omni_command(s, eta_ref, eta_rate, cfg.omni_z_ref, cfg.omni_forward, dt);
          cmd.aux_force = th.force;
          cmd.aux_moment = th.moment;
          omni_effort = th.effort();
          break;
        }
        case Mode::Elevator: {
          de = base.elevator_command(s.eta, eta_ref, eta_rate, dt);
          cmd.F = cfg.thrust;
          if (cfg.script.kind != Script::Kind::None) track_arm(cfg.script.at(t).delta);
          break;
        }
      }
      if (de != 0.0) {
        const double airspeed = (s.v - aero::wind_at(s.p, t, env.wind)).norm();
        cmd.aux_moment.y() +=
            control::elevator_moment(de, airspeed, cfg.baseline.elevator, params.aero.scale);
      }
      cmd.aux_moment.y() += cfg.disturbance.moment(t);

      const double duty =
          (std::abs(motors.x()) + std::abs(motors.y())) / (2.0 * params.arm.motor_limit);
      const double prop_effort = std::pow(std::abs(cmd.F), 1.5);
      const double watts = power::power(pm, prop_effort, omni_effort, duty);

      if (cfg.claw_close_at >= 0.0 && t >= cfg.claw_close_at) claw_closed = true;
      const bool last = i == n_steps || claw_closed;

      if (i % dec == 0 || claw_closed) {
        const dynamics::Evaluation ev = dynamics::evaluate(s, cmd, params, env, t);
        LogRecord r;
        r.t = t;
        r.state = s;
        r.F = cmd.F;
        r.aero_force = ev.aero.force;
        r.aero_moment = ev.aero.moment;
        if (eta_ref.y() != hold_theta) {
          hold_theta = eta_ref.y();
          dx_hold = control::pitch_hold_offset(params, hold_theta);
        }
        r.V_lyap = control::lyapunov_diagnostics(s, eta_ref, cfg.gains, params, dx_hold).V;
        r.power = watts;
        r.energy = energy;
        r.flags.saturated = saturated || clamp_pending;
        clamp_pending = false;
        r.flags.validity = ev.aero.out_of_envelope;
        r.flags.stagnation = env.aero_enabled && ev.aero.stagnant;
        r.flags.claw_closed = claw_closed;
        r.flags.perched = claw_closed;
        r.thrust_effort = prop_effort + omni_effort;
        r.arm_duty = duty;
        r.eta_ref = eta_ref;
        log.records.push_back(r);
      }
      if (last) break;

      dynamics::StepFlags flags;
      s = dynamics::step(s, cmd, params, env, dt, t, &flags);
      energy += watts * dt;
      clamp_pending = clamp_pending || flags.saturated;
    } catch (const GimbalProximity& e) {
      rethrow_at(e, t);
    } catch (const NonFinite& e) {
      rethrow_at(e, t);
    }
  }
  return log;
}

power::ModeSample measure_mode(const ScenarioConfig& cfg) {
  const auto mean_power = [&](double c_prop, double c_omni, double c_arm) {
    ScenarioConfig c = cfg;
    c.power.P_idle = 0.0;
    c.power.c_prop = c_prop;
    c.power.c_omni = c_omni;
    c.power.c_arm = c_arm;
    const TrajectoryLog log = run_scenario(c);
    const double t = log.records.back().t - log.records.front().t;
    return t > 0.0 ? (log.records.back().energy - log.records.front().energy) / t : 0.0;
  };
  power::ModeSample m;
  m.prop_effort = mean_power(1.0, 0.0, 0.0);
  m.omni_effort = mean_power(0.0, 1.0, 0.0);
  m.arm_duty = mean_power(0.0, 0.0, 1.0);
  return m;
}

power::PowerModel calibrate_power(const ScenarioConfig& q_cfg, const ScenarioConfig& omni_cfg,
                                  double q_target, double omni_target) {
  return power::calibrate(q_cfg.power, measure_mode(q_cfg), q_target, measure_mode(omni_cfg),
                          omni_target);
}

}  // namespace mmb::harness
