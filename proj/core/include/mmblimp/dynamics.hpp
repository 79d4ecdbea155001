#pragma once

#include <vector>

#include "mmblimp/aero.hpp"
#include "mmblimp/continuum_arm.hpp"
#include "mmblimp/math.hpp"
#include "mmblimp/wind.hpp"

namespace mmb {

struct VehicleParams {
  double m0 = 0.10869;  // stationary mass incl. envelope and helium, kg
  double ma = 0.09221;  // moving mass at the arm tip, kg
  Vec3 r0 = Vec3::Zero();
  Mat3 J = Vec3(0.035, 0.020, 0.015).asDiagonal();  // about the CB, kg m^2
  double Fb = 194.23 * kGramForce;                  // buoyant lift, N
  double g = 9.81;
  arm::ArmSpec arm;
  aero::AeroModel aero;

  double mass() const { return m0 + ma; }
  double h() const { return arm.h; }
  // Throws ValidationError listing every violated invariant.
  void validate() const;
};

// Returns a copy with Fb set so that weight and lift cancel exactly.
VehicleParams with_neutral_buoyancy(VehicleParams params);

struct BodyState {
  Vec3 p = Vec3::Zero();      // inertial position, z down
  Vec3 eta = Vec3::Zero();    // roll, pitch, yaw
  Vec3 v = Vec3::Zero();      // inertial velocity
  Vec3 omega = Vec3::Zero();  // body rates
  Vec2 q_arm = Vec2::Zero();  // (delta_x, delta_y)
};

struct ActuationCommand {
  double F = 0.0;               // forward thrust, N
  Vec2 ddelta = Vec2::Zero();   // arm rates, m/s
  Vec3 aux_force = Vec3::Zero();   // extra body force (baselines, disturbances)
  Vec3 aux_moment = Vec3::Zero();  // extra body moment about the CB
};

struct StateDerivative {
  Vec3 dp = Vec3::Zero();
  Vec3 deta = Vec3::Zero();
  Vec3 dv = Vec3::Zero();
  Vec3 domega = Vec3::Zero();
  Vec2 dq_arm = Vec2::Zero();

  double norm() const;
};

struct Environment {
  std::vector<aero::WindField> wind;
  bool aero_enabled = true;
};

namespace dynamics {

inline constexpr double kGimbalEps = 1e-3;
inline constexpr double kDtMax = 0.01;

Mat3 rotation_from_euler(const Vec3& eta);
// Throws GimbalProximity near |theta| = pi/2.
Mat3 euler_rate_matrix(const Vec3& eta);

Mat3 effective_inertia(const Mat3& J, double ma, const Vec3& ra);
Vec3 first_moment(const VehicleParams& params, const Vec3& ra);

Mat6 mass_matrix(double mass, const Mat3& J_eff, const Vec3& l_g, const Mat3& R);
Mat6 mass_matrix(const VehicleParams& params, const Mat3& R, const Vec3& ra);
// Throws NumericalConditioning when cond(M) exceeds the bound.
double check_conditioning(const Mat6& M, double bound = 1e8);

struct Evaluation {
  StateDerivative d;
  aero::AeroWrench aero;
  Vec3 wind = Vec3::Zero();
};

Evaluation evaluate(const BodyState& s, const ActuationCommand& cmd, const VehicleParams& params,
                    const Environment& env, double t = 0.0);

StateDerivative derivative(const BodyState& s, const ActuationCommand& cmd,
                           const VehicleParams& params, const Environment& env, double t = 0.0);

struct StepFlags {
  bool saturated = false;
};

// One RK4 step. The command is held for the whole step.
BodyState step(const BodyState& s, const ActuationCommand& cmd, const VehicleParams& params,
               const Environment& env, double dt, double t = 0.0, StepFlags* flags = nullptr);

// Kinetic plus gravitational and buoyant potential energy (fixed arm).
double mechanical_energy(const BodyState& s, const VehicleParams& params);

// Floating equilibrium (v = omega = 0) for a fixed arm shape.
BodyState static_trim(const VehicleParams& params, const Vec2& q_arm);

}  // namespace dynamics
}  // namespace mmb
