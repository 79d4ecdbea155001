#include <gtest/gtest.h>

#include <cmath>

#include "mmblimp/control.hpp"
#include "mmblimp/errors.hpp"

using namespace mmb;
using namespace mmb::control;

TEST(GainCondition, ThresholdExample) {
  VehicleParams p;
  ControlGains g;
  g.pitch = {1.0, 0.0, 0.1};
  const GainReport r = gain_condition(g, p, 3.14e-4);
  // 0.09221 * (0.3 / 0.04)^2 * 3.14e-4 / 1
  EXPECT_NEAR(r.lambda_threshold, 0.09221 * 56.25 * 3.14e-4, 1e-15);
  EXPECT_NEAR(r.lambda_threshold, 1.63e-3, 5e-6);
}

TEST(GainCondition, DoublingKpHalvesTheThreshold) {
  VehicleParams p;
  ControlGains g;
  const double t1 = gain_condition(g, p).lambda_threshold;
  g.pitch.kp *= 2.0;
  EXPECT_NEAR(gain_condition(g, p).lambda_threshold, 0.5 * t1, 1e-15);
}

TEST(GainCondition, DisturbanceFreeRadiusIsZero) {
  VehicleParams p;
  ControlGains g;
  g.rho_theta = 0.0;
  EXPECT_EQ(gain_condition(g, p).uub_radius, 0.0);
  g.rho_theta = 0.002;
  const GainReport r = gain_condition(g, p);
  EXPECT_NEAR(r.uub_radius, 0.002 / std::sqrt(g.epsilon * g.lambda * g.pitch.kp), 1e-15);
}

TEST(GainCondition, DefaultsAreSatisfied) {
  const GainReport r = gain_condition(ControlGains{}, VehicleParams{});
  EXPECT_TRUE(r.satisfied());
  EXPECT_GT(r.a, 0.0);
  EXPECT_GT(r.b, 0.0);
  const arm::ArmSpec s;
  EXPECT_NEAR(r.envelope, s.d * kPi / 2.0 * s.k() * s.r_reel * s.motor_limit, 1e-18);
}

TEST(GainCondition, NegativeMarginsAreReportedNotThrown) {
  ControlGains g;
  g.lambda = 1e-6;
  g.rho_theta = 10.0;
  GainReport r;
  EXPECT_NO_THROW(r = gain_condition(g, VehicleParams{}));
  EXPECT_LT(r.lambda_margin, 0.0);
  EXPECT_LT(r.damping_margin, 0.0);
  EXPECT_FALSE(r.satisfied());
}

TEST(Lyapunov, OriginAndPositivity) {
  const VehicleParams p;
  const ControlGains g;
  EXPECT_EQ(lyapunov_diagnostics(0.0, 0.0, 0.0, g, p).V, 0.0);
  for (double e : {-0.3, 0.0, 0.2})
    for (double ed : {-0.1, 0.05})
      for (double dx : {-0.05, 0.0, 0.03}) EXPECT_GE(lyapunov_diagnostics(e, ed, dx, g, p).V, 0.0);
}

TEST(Lyapunov, QuadraticByHand) {
  const VehicleParams p;
  const ControlGains g;
  const double e = 0.1, ed = -0.05, dx = 0.02;
  const double L = p.arm.L, d = p.arm.d, h = p.arm.h;
  const double Jyy = p.J(1, 1) + p.ma * (L * L * dx * dx / (4 * d * d) + (h + L) * (h + L));
  const LyapunovSample s = lyapunov_diagnostics(e, ed, dx, g, p);
  EXPECT_NEAR(s.J_yy_eff, Jyy, 1e-15);
  EXPECT_NEAR(s.V, 0.5 * Jyy * ed * ed + 0.5 * g.pitch.kp * e * e + 0.25 * g.lambda * dx * dx,
              1e-15);
  const GainReport r = gain_condition(g, p);
  EXPECT_NEAR(s.V_dot_bound, -r.a * ed * ed - r.b * e * e, 1e-15);
}

TEST(Lyapunov, HoldOffsetCentresTheArmTerm) {
  const VehicleParams p;
  const ControlGains g;
  BodyState s;
  s.eta.y() = 0.1;
  s.q_arm.x() = -0.02;
  const Vec3 ref(0.0, 0.1, 0.0);
  EXPECT_NEAR(lyapunov_diagnostics(s, ref, g, p, -0.02).V, 0.0, 1e-18);
  EXPECT_GT(lyapunov_diagnostics(s, ref, g, p).V, 0.0);
}

TEST(Lyapunov, PitchHoldOffsetReproducesTheTrim) {
  const VehicleParams p;
  const double theta = deg2rad(10.0);
  const double dx = pitch_hold_offset(p, theta);
  EXPECT_LT(dx, 0.0);  // nose up needs the mass aft
  const BodyState s = dynamics::static_trim(with_neutral_buoyancy(p), Vec2(dx, 0.0));
  EXPECT_NEAR(s.eta.y(), theta, 1e-8);
  // far outside the reach it clamps to the workspace edge
  EXPECT_NEAR(pitch_hold_offset(p, deg2rad(80.0)), -0.999 * p.arm.max_bend(), 1e-12);
}

TEST(OuterLaw, SignsMoveTheMassTheRightWay) {
  DualLoopController c(ControlGains{}, arm::ArmSpec{});
  // nose too high: mass goes forward; rolled right: mass goes to -y
  const OuterOutput o =
      c.outer_attitude_law(Vec3(0.1, 0.1, 0.0), Vec3::Zero(), Vec3::Zero(), 0.01, false);
  EXPECT_GT(o.delta_ref.x(), 0.0);
  EXPECT_LT(o.delta_ref.y(), 0.0);
  EXPECT_FALSE(o.saturated);
}

TEST(OuterLaw, YawErrorBanksAgainstIt) {
  DualLoopController c(ControlGains{}, arm::ArmSpec{});
  const OuterOutput o =
      c.outer_attitude_law(Vec3(0.0, 0.0, 0.2), Vec3::Zero(), Vec3::Zero(), 0.01, true);
  EXPECT_LT(o.roll_ref, 0.0);
  EXPECT_GE(o.roll_ref, -ControlGains{}.yaw_roll_limit);
  // wrapped: a heading of 359 deg is a small negative error
  DualLoopController c2(ControlGains{}, arm::ArmSpec{});
  const OuterOutput w =
      c2.outer_attitude_law(Vec3(0.0, 0.0, deg2rad(179.0)), Vec3(0.0, 0.0, deg2rad(-179.0)),
                            Vec3::Zero(), 0.01, true);
  EXPECT_GT(w.roll_ref, 0.0);
}

TEST(OuterLaw, SaturatesAtTheWorkspaceAndHoldsTheIntegrator) {
  const arm::ArmSpec spec;
  DualLoopController c(ControlGains{}, spec);
  OuterOutput o;
  for (int i = 0; i < 1000; ++i)
    o = c.outer_attitude_law(Vec3(0.0, 1.0, 0.0), Vec3::Zero(), Vec3::Zero(), 0.01, false);
  EXPECT_TRUE(o.saturated);
  EXPECT_NEAR(o.delta_ref.norm(), spec.max_bend(), 1e-15);
  // once the error flips sign the output leaves the bound at once
  const OuterOutput back =
      c.outer_attitude_law(Vec3(0.0, -0.05, 0.0), Vec3::Zero(), Vec3::Zero(), 0.01, false);
  EXPECT_LT(back.delta_ref.x(), 0.0);
}

TEST(OuterLaw, StatelessPdAgreesWithoutIntegrators) {
  ControlGains g;
  g.pitch.ki = g.roll.ki = 0.0;
  DualLoopController c(g, arm::ArmSpec{});
  const Vec3 eta(0.03, -0.02, 0.0), rate(0.01, 0.02, 0.0);
  const OuterOutput o = c.outer_attitude_law(eta, Vec3::Zero(), rate, 0.01, false);
  EXPECT_LT((o.delta_ref - outer_pd(eta, Vec3::Zero(), rate, g, 1.0)).norm(), 1e-16);
}

TEST(InnerLaw, RespectsMotorLimits) {
  const arm::ArmSpec spec;
  DualLoopController c(ControlGains{}, spec);
  const InnerOutput far = c.inner_arm_law(Vec2::Zero(), Vec2(0.05, -0.05), 0.001);
  EXPECT_TRUE(far.saturated);
  EXPECT_LE(std::abs(far.omega_in.x()), spec.motor_limit);
  EXPECT_LE(std::abs(far.omega_in.y()), spec.motor_limit);
  EXPECT_GT(far.ddelta.x(), 0.0);
  EXPECT_LT(far.ddelta.y(), 0.0);
  c.reset();
  const InnerOutput near = c.inner_arm_law(Vec2::Zero(), Vec2(1e-4, 0.0), 0.001);
  EXPECT_FALSE(near.saturated);
  EXPECT_NEAR(near.ddelta.x(), 5.0 * 1e-4, 1e-15);
}

TEST(Gains, Validation) {
  ControlGains g;
  g.pitch.kp = 0.0;
  g.pitch_sense = 0.5;
  try {
    g.validate();
    FAIL();
  } catch (const ValidationError& e) {
    EXPECT_EQ(e.problems().size(), 2u);
  }
}

TEST(Omni, EqualSideThrustHasNoYawMoment) {
  const OmniSpec spec;
  const OmniThrust t = omni_allocate(spec, 0.3, Vec3::Zero(), 0.04, 0.0);
  EXPECT_DOUBLE_EQ(t.left.x(), t.right.x());
  EXPECT_NEAR(t.moment.z(), 0.0, 1e-18);
  EXPECT_NEAR(t.force.x(), 0.04, 1e-15);
}

TEST(Omni, MomentDemandIsDelivered) {
  const OmniSpec spec;
  const Vec3 demand(0.004, -0.003, 0.002);
  const OmniThrust t = omni_allocate(spec, 0.3, demand, 0.02, 0.01);
  EXPECT_LT((t.moment - demand).norm(), 1e-15);
  EXPECT_NEAR(-t.force.z(), 0.01, 1e-15);
  EXPECT_GT(t.effort(), 0.0);
}

TEST(Elevator, NoMomentAtRest) {
  const ElevatorSpec spec;
  EXPECT_EQ(elevator_moment(deg2rad(-45.0), 0.0, spec, 0.52), 0.0);
  const double m = elevator_moment(deg2rad(-45.0), 0.8, spec, 0.52);
  EXPECT_NEAR(m, 0.52 * 0.64 * spec.C_M_de * deg2rad(-45.0), 1e-15);
  EXPECT_GT(m, 0.0);  // trailing edge up raises the nose
}

TEST(Elevator, CommandIsBounded) {
  BaselineActuator act;
  act.kind = BaselineActuator::Kind::Elevator;
  BaselineController c(act, VehicleParams{});
  const double de = c.elevator_command(Vec3(0.0, -1.0, 0.0), Vec3::Zero(), Vec3::Zero(), 0.01);
  EXPECT_NEAR(std::abs(de), act.elevator.max_deflection, 1e-15);
  EXPECT_GT(elevator_moment(de, 0.8, act.elevator, 0.52), 0.0);  // acts to raise the nose
}
