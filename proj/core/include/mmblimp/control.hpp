#pragma once

#include <array>

#include "mmblimp/dynamics.hpp"
#include "mmblimp/math.hpp"

namespace mmb::control {

struct PidGains {
  double kp = 0.0;
  double ki = 0.0;
  double kd = 0.0;
};

struct ControlGains {
  // Outer loop, attitude error (rad) to arm setpoint (m).
  PidGains roll{0.10, 0.05, 0.06};
  PidGains pitch{0.10, 0.05, 0.06};
  // Yaw error (rad) to roll setpoint (rad).
  PidGains yaw{2.5, 0.2, 1.5};
  // Inner loop, arm error (m) to arm rate (m/s).
  PidGains inner_x{5.0, 0.0, 0.0};
  PidGains inner_y{5.0, 0.0, 0.0};

  // Sign of the steady attitude change per unit arm displacement. Moving the
  // mass forward (delta_x > 0) lowers the nose; moving it to +y rolls right.
  double pitch_sense = -1.0;
  double roll_sense = 1.0;
  // Sign of the yaw rate produced by a positive roll angle in cruise.
  double yaw_sense = 1.0;
  double yaw_roll_limit = deg2rad(20.0);

  double lambda = 1.0;     // weight of the arm energy term in V
  double epsilon = 0.1;    // Young's inequality parameter
  double rho_theta = 0.0;  // pitch disturbance bound, N m
  double D_theta = 0.052;  // pitch damping, N m s/rad

  void validate() const;
};

struct OuterOutput {
  Vec2 delta_ref = Vec2::Zero();
  double roll_ref = 0.0;  // roll setpoint after the yaw channel
  bool saturated = false;
};

struct InnerOutput {
  Vec2 omega_in = Vec2::Zero();  // motor speeds, rad/s
  Vec2 ddelta = Vec2::Zero();    // resulting arm rates, m/s
  bool saturated = false;
};

// Cascaded attitude controller. Holds the integrator state of one trajectory.
class DualLoopController {
 public:
  DualLoopController(ControlGains gains, arm::ArmSpec spec);

  void reset();

  // eta_rate is the Euler angle rate. Set control_yaw to false to leave the
  // roll reference untouched (open-loop heading).
  OuterOutput outer_attitude_law(const Vec3& eta, const Vec3& eta_ref, const Vec3& eta_rate,
                                 double dt, bool control_yaw = true);

  InnerOutput inner_arm_law(const Vec2& q, const Vec2& q_ref, double dt);

  const ControlGains& gains() const { return gains_; }

 private:
  ControlGains gains_;
  arm::ArmSpec spec_;
  double int_roll_ = 0.0, int_pitch_ = 0.0, int_yaw_ = 0.0;
  Vec2 int_inner_ = Vec2::Zero();
  Vec2 prev_inner_err_ = Vec2::Zero();
  bool has_prev_ = false;
};

// Stateless PD form of the outer law (no integrators, no yaw channel).
Vec2 outer_pd(const Vec3& eta, const Vec3& eta_ref, const Vec3& eta_rate, const ControlGains& g,
              double limit);

struct GainReport {
  double lambda_threshold = 0.0;  // lower bound on lambda
  double lambda_margin = 0.0;     // lambda - threshold
  double damping_margin = 0.0;   // D + ma g L kd/(2d) + lambda kd/2 - rho/2
  double a = 0.0;               // coefficients of the bound on dV/dt
  double b = 0.0;
  double uub_radius = 0.0;      // rad
  double envelope = 0.0;        // max |delta_x * ddelta_x| used, m^2/s

  bool satisfied() const { return lambda_margin > 0.0 && damping_margin > 0.0; }
};

// Largest |delta_x * ddelta_x| allowed by the workspace and the motor limit.
double default_envelope(const arm::ArmSpec& spec);

GainReport gain_condition(const ControlGains& gains, const VehicleParams& params,
                          double envelope);
GainReport gain_condition(const ControlGains& gains, const VehicleParams& params);

struct LyapunovSample {
  double V = 0.0;
  double V_dot_bound = 0.0;
  double J_yy_eff = 0.0;
};

// Pitch-only analysis; e and e_dot are the pitch error and its rate.
LyapunovSample lyapunov_diagnostics(double e, double e_dot, double delta_x,
                                    const ControlGains& gains, const VehicleParams& params);
// The state form measures delta_x from dx_hold, the arm offset that holds the
// reference pitch at rest. With dx_hold = 0 this is the bare quadratic.
LyapunovSample lyapunov_diagnostics(const BodyState& s, const Vec3& eta_ref,
                                    const ControlGains& gains, const VehicleParams& params,
                                    double dx_hold = 0.0);

// Arm offset (delta_y = 0) whose static trim has pitch theta. Weight and
// gravity only, buoyancy set neutral. Clamped to the workspace when theta is out of reach.
double pitch_hold_offset(const VehicleParams& params, double theta);

// Baseline actuators used for comparison runs. The arm stays fixed.
struct OmniSpec {
  double b = 0.25;     // lateral offset of the side thrusters, m
  double x_v = 0.30;   // vertical thruster position along body x, m
  double F_max = 0.2;  // per-thruster limit, N
  PidGains roll{0.05, 0.005, 0.05};
  PidGains pitch{0.05, 0.005, 0.05};
  PidGains yaw{0.02, 0.0, 0.04};
  PidGains altitude{0.2, 0.0, 0.4};  // N per m and N per m/s
};

struct ElevatorSpec {
  double C_M_de = -0.03;  // pitch moment coefficient per rad of deflection
  double max_deflection = deg2rad(45.0);
  PidGains pitch{2.0, 0.2, 1.0};  // rad per rad
};

struct BaselineActuator {
  enum class Kind { None, Omni, Elevator };
  Kind kind = Kind::None;
  OmniSpec omni;
  ElevatorSpec elevator;
};

struct OmniThrust {
  Vec2 left = Vec2::Zero();   // (forward, up), N
  Vec2 right = Vec2::Zero();  // (forward, up), N
  double vertical = 0.0;      // up, N
  Vec3 force = Vec3::Zero();  // body axes
  Vec3 moment = Vec3::Zero();

  double effort() const;  // sum of |F_i|^1.5 over the three thrusters
};

// Resolves body moment demands, a forward force and an upward force into
// the three thrusters and returns the resulting body wrench.
OmniThrust omni_allocate(const OmniSpec& spec, double h, const Vec3& moment_demand,
                         double forward, double up);

// Elevator pitch moment; vanishes at zero airspeed.
double elevator_moment(double deflection, double airspeed, const ElevatorSpec& spec,
                       double scale);

class BaselineController {
 public:
  BaselineController(BaselineActuator actuator, const VehicleParams& params);

  void reset();

  // Omni: returns thrust allocation for attitude plus altitude hold at z_ref
  // with the given forward force.
  OmniThrust omni_command(const BodyState& s, const Vec3& eta_ref, const Vec3& eta_rate,
                          double z_ref, double forward, double dt);

  // Elevator: deflection from a pitch PID.
  double elevator_command(const Vec3& eta, const Vec3& eta_ref, const Vec3& eta_rate, double dt);

  const BaselineActuator& actuator() const { return act_; }

 private:
  BaselineActuator act_;
  double net_weight_;
  double h_;
  Vec3 int_att_ = Vec3::Zero();
  double int_alt_ = 0.0;
  double int_elev_ = 0.0;
};

}  // namespace mmb::control
