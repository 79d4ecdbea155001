#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "mmblimp/aero.hpp"
#include "mmblimp/errors.hpp"
#include "mmblimp/wind.hpp"

using namespace mmb;
using namespace mmb::aero;

TEST(AeroAngles, VelocityFrameMapsAirspeedOntoBodyVelocity) {
  std::mt19937_64 rng(1);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  for (int i = 0; i < 500; ++i) {
    Vec3 v(0.2 + std::abs(u(rng)), u(rng), u(rng));
    const AeroAngles a = aero_angles(v);
    EXPECT_LT((a.Rvb * Vec3(a.V, 0.0, 0.0) - v).norm(), 1e-13);
    EXPECT_LT((a.Rvb.transpose() * a.Rvb - Mat3::Identity()).norm(), 1e-13);
  }
}

TEST(AeroAngles, SignConventions) {
  // air from below the nose (body z down) is a positive angle of attack
  EXPECT_GT(aero_angles(Vec3(1.0, 0.0, 0.2)).alpha, 0.0);
  EXPECT_GT(aero_angles(Vec3(1.0, 0.2, 0.0)).beta, 0.0);
  // flying backwards gives |alpha| near pi rather than a folded value
  EXPECT_NEAR(std::abs(aero_angles(Vec3(-1.0, 0.0, 1e-9)).alpha), kPi, 1e-6);
}

TEST(AeroAngles, StagnationThrows) {
  EXPECT_THROW(aero_angles(Vec3(1e-4, 0.0, 0.0)), Stagnation);
  EXPECT_THROW(aero_angles(Vec3::Zero()), Stagnation);
}

TEST(AeroCoefficients, PolynomialRowsByHand) {
  const AeroModel m;
  const double a = 0.1, b = 0.2;
  const Coefficients c = aero_coefficients(a, b, m);
  EXPECT_NEAR(c[kD], 0.243 + 8.838 * a * a + 9.016 * b * b, 1e-15);
  EXPECT_NEAR(c[kS], -0.082 - 0.285 * a * a - 2.356 * b, 1e-15);
  EXPECT_NEAR(c[kL], 0.159 + 2.938 * a + 8.103 * b * b, 1e-15);
  EXPECT_NEAR(c[kMx], -0.036 + 0.553 * a - 0.683 * b, 1e-15);
  EXPECT_NEAR(c[kMy], 0.057 + 0.093 * a + 5.236 * b * b, 1e-15);
  EXPECT_NEAR(c[kMz], 0.093 - 0.209 * a - 0.356 * b, 1e-15);
}

TEST(AeroCoefficients, EnvelopeFlag) {
  const AeroModel m;
  bool out = true;
  aero_coefficients(deg2rad(29.0), deg2rad(-29.0), m, &out);
  EXPECT_FALSE(out);
  aero_coefficients(deg2rad(31.0), 0.0, m, &out);
  EXPECT_TRUE(out);
  aero_coefficients(0.0, deg2rad(-31.0), m, &out);
  EXPECT_TRUE(out);
}

TEST(AeroWrench, HeadOnFlow) {
  AeroModel m;
  const double V = 0.7;
  const AeroWrench w = aero_wrench(Vec3(V, 0.0, 0.0), Vec3::Zero(), m);
  const double q = m.scale * V * V;
  EXPECT_NEAR(w.force.x(), -q * 0.243, 1e-15);  // drag against the flow
  EXPECT_NEAR(w.force.y(), -q * 0.082, 1e-15);
  EXPECT_NEAR(w.force.z(), -q * 0.159, 1e-15);  // lift is up, body z down
  EXPECT_NEAR(w.moment.z(), q * 0.093, 1e-15);
  EXPECT_FALSE(w.stagnant);
}

TEST(AeroWrench, ScalesWithDynamicPressure) {
  const AeroModel m;
  const Vec3 v(0.5, 0.05, 0.08);
  const AeroWrench a = aero_wrench(v, Vec3::Zero(), m);
  const AeroWrench b = aero_wrench(2.0 * v, Vec3::Zero(), m);
  EXPECT_LT((b.force - 4.0 * a.force).norm(), 1e-14);
  EXPECT_LT((b.moment - 4.0 * a.moment).norm(), 1e-14);
}

TEST(AeroWrench, StagnantFlowKeepsOnlyDamping) {
  const AeroModel m;
  const Vec3 w(0.1, -0.2, 0.3);
  const AeroWrench r = aero_wrench(Vec3(1e-5, 0.0, 0.0), w, m);
  EXPECT_TRUE(r.stagnant);
  EXPECT_EQ(r.force, Vec3::Zero());
  EXPECT_LT((r.moment - m.damping.cwiseProduct(w)).norm(), 1e-18);
}

TEST(AeroModel, Validation) {
  AeroModel m;
  EXPECT_NO_THROW(m.validate());
  m.scale = 0.0;
  m.damping.x() = 0.1;
  try {
    m.validate();
    FAIL() << "expected ValidationError";
  } catch (const ValidationError& e) {
    EXPECT_EQ(e.problems().size(), 2u);
  }
}

TEST(Wind, ConstantField) {
  WindField f;
  f.direction = Vec3(0.0, 2.0, 0.0);
  f.speed = 1.5;
  EXPECT_LT((wind_at(Vec3(3, 4, 5), 12.0, f) - Vec3(0, 1.5, 0)).norm(), 1e-15);
}

TEST(Wind, GustWindowAndSuperposition) {
  WindField base;
  base.direction = Vec3::UnitY();
  base.speed = 1.0;
  WindField gust = base;
  gust.kind = WindField::Kind::GustPulse;
  gust.speed = 2.0;
  gust.t_start = 20.0;
  gust.t_end = 23.0;
  const std::vector<WindField> both{base, gust};
  EXPECT_NEAR(wind_at(Vec3::Zero(), 19.9, both).y(), 1.0, 1e-15);
  EXPECT_NEAR(wind_at(Vec3::Zero(), 21.0, both).y(), 3.0, 1e-15);
  EXPECT_NEAR(wind_at(Vec3::Zero(), 23.1, both).y(), 1.0, 1e-15);
  gust.t_end = gust.t_start;
  EXPECT_THROW(gust.validate(), ValidationError);
}

TEST(Wind, FanJetCone) {
  WindField f;
  f.kind = WindField::Kind::FanJet;
  f.apex = Vec3(0.0, -2.0, 0.0);
  f.axis = Vec3::UnitY();
  f.half_angle = deg2rad(20.0);
  f.speed = 1.7;
  f.reach = 5.0;
  const Vec3 inside = wind_at(Vec3(0.1, 0.0, 0.0), 0.0, f);
  EXPECT_GT(inside.y(), 0.0);
  EXPECT_NEAR(inside.x(), 0.0, 1e-15);
  EXPECT_EQ(wind_at(Vec3(2.0, 0.0, 0.0), 0.0, f), Vec3::Zero());   // outside the cone
  EXPECT_EQ(wind_at(Vec3(0.0, -3.0, 0.0), 0.0, f), Vec3::Zero());  // behind the fan
  EXPECT_EQ(wind_at(Vec3(0.0, 4.0, 0.0), 0.0, f), Vec3::Zero());   // past the reach
}
