#pragma once

#include <array>

#include "mmblimp/math.hpp"

namespace mmb::arm {

// Gear tooth counts of the decoupling train, in the order
// n_x, n_1, n_y, n_5', n_y', n_7', n_8.
using ToothCounts = std::array<int, 7>;

struct ArmSpec {
  double L = 0.30;        // backbone length, m
  double d = 0.04;        // cable to backbone distance, m
  double h = 0.30;        // arm base (and propeller) below the CB, m
  double r_reel = 0.005;  // reel radius, m
  ToothCounts teeth{20, 20, 20, 20, 20, 20, 20};
  double dy_sign = 1.0;       // winding direction of the y channel
  double motor_limit = 6.0;   // |omega_in| limit per motor, rad/s

  // Drive ratio n_x/n_1. Throws ValidationError if the three stage ratios differ.
  double k() const;
  double max_bend() const { return d * kPi / 2.0; }
  void validate() const;
};

struct ArmConfig {
  Vec2 delta = Vec2::Zero();
  double gamma = 0.0;
  double phi_bend = 0.0;
};

struct CableState {
  Vec3 deviations = Vec3::Zero();  // (dl1, dl2, dl3), m
};

// Below this value of |delta|/d the closed forms are replaced by series.
inline constexpr double kSeriesThreshold = 1e-4;

ArmConfig q_to_arc(const Vec2& delta, double d);
Vec2 arc_to_q(double gamma, double phi_bend, double d);

Vec3 tip_from_q(const Vec2& delta, double L, double d);
Mat32 tip_jacobian(const Vec2& delta, double L, double d);

// Position of the moving mass relative to the CB in body axes.
inline Vec3 arm_offset(const Vec2& delta, const ArmSpec& spec) {
  return Vec3(0.0, 0.0, spec.h) + tip_from_q(delta, spec.L, spec.d);
}

CableState cable_deviations(const Vec2& delta);
Vec2 q_from_cables(const CableState& cables);

Vec3 reel_speeds(double omega_in_x, double omega_in_y, const ArmSpec& spec);
Vec2 q_rates_from_motors(const Vec2& omega_in, const ArmSpec& spec);
Vec2 motors_from_q_rates(const Vec2& ddelta, const ArmSpec& spec);

Mat4 se3_transform(double gamma, double phi_bend, double L);

}  // namespace mmb::arm
