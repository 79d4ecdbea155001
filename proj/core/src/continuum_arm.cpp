#include "mmblimp/continuum_arm.hpp"

#include <string>
#include <vector>

#include "mmblimp/errors.hpp"

namespace mmb::arm {
namespace {

// f(g) = (1 - cos g)/g^2 and s(g) = sin g / g, plus the derivative helpers
// gf = f'(g)/g and gs = s'(g)/g used by the Jacobian.
struct ArcFunctions {
  double f, s, gf, gs;
};

ArcFunctions arc_functions(double g) {
  ArcFunctions a{};
  const double g2 = g * g;
  if (g < kSeriesThreshold) {
    a.f = 0.5 - g2 / 24.0;
    a.s = 1.0 - g2 / 6.0;
    a.gf = -1.0 / 12.0 + g2 / 180.0;
    a.gs = -1.0 / 3.0 + g2 / 30.0;
    return a;
  }
  const double sn = std::sin(g), cs = std::cos(g);
  const double half = std::sin(0.5 * g);
  a.f = 2.0 * half * half / g2;
  a.s = sn / g;
  if (g < 1e-2) {
    // The closed forms of f'/g and s'/g cancel badly here.
    const double g4 = g2 * g2, g6 = g4 * g2;
    a.gf = -1.0 / 12.0 + g2 / 180.0 - g4 / 6720.0 + g6 / 453600.0;
    a.gs = -1.0 / 3.0 + g2 / 30.0 - g4 / 840.0 + g6 / 45360.0;
  } else {
    a.gf = (g * sn - 4.0 * half * half) / (g2 * g2);
    a.gs = (g * cs - sn) / (g2 * g);
  }
  return a;
}

}  // namespace

double ArmSpec::k() const {
  validate();
  return static_cast<double>(teeth[0]) / teeth[1];
}

void ArmSpec::validate() const {
  std::vector<std::string> bad;
  if (!(L > 0.0)) bad.push_back("arm.L must be > 0");
  if (!(d > 0.0)) bad.push_back("arm.d must be > 0");
  if (!(h > 0.0)) bad.push_back("arm.h must be > 0");
  if (!(r_reel > 0.0)) bad.push_back("arm.r_reel must be > 0");
  if (!(motor_limit > 0.0)) bad.push_back("arm.motor_limit must be > 0");
  if (dy_sign != 1.0 && dy_sign != -1.0) bad.push_back("arm.dy_sign must be +1 or -1");
  for (int n : teeth) {
    if (n <= 0) {
      bad.push_back("arm.teeth entries must be positive");
      break;
    }
  }
  if (bad.empty()) {
    // Compare n_x*n_5' with n_y*n_1 etc. in integers to avoid rounding.
    const long a = static_cast<long>(teeth[0]) * teeth[3];
    const long b = static_cast<long>(teeth[2]) * teeth[1];
    const long c = static_cast<long>(teeth[4]) * teeth[1];
    const long e = static_cast<long>(teeth[0]) * teeth[5];
    if (a != b || c != e) bad.push_back("arm.teeth: n_x/n_1, n_y/n_5' and n_y'/n_7' must be equal");
  }
  if (!bad.empty()) throw ValidationError(bad);
}

ArmConfig q_to_arc(const Vec2& delta, double d) {
  ArmConfig c;
  c.delta = delta;
  const double n = delta.norm();
  c.gamma = n / d;
  if (c.gamma > kPi / 2.0 + 1e-12) {
    throw WorkspaceExceeded("bend angle " + std::to_string(c.gamma) + " rad exceeds pi/2");
  }
  if (n > 0.0) {
    c.phi_bend = std::atan2(delta.y(), delta.x());
    if (c.phi_bend < 0.0) c.phi_bend += 2.0 * kPi;
  }
  return c;
}

Vec2 arc_to_q(double gamma, double phi_bend, double d) {
  return Vec2(d * gamma * std::cos(phi_bend), d * gamma * std::sin(phi_bend));
}

Vec3 tip_from_q(const Vec2& delta, double L, double d) {
  const double g = delta.norm() / d;
  const ArcFunctions a = arc_functions(g);
  return Vec3(L / d * delta.x() * a.f, L / d * delta.y() * a.f, L * a.s);
}

Mat32 tip_jacobian(const Vec2& delta, double L, double d) {
  const double g = delta.norm() / d;
  const ArcFunctions a = arc_functions(g);
  const double dx = delta.x() / d, dy = delta.y() / d;
  Mat32 j;
  j << a.f + dx * dx * a.gf, dx * dy * a.gf,
       dx * dy * a.gf, a.f + dy * dy * a.gf,
       dx * a.gs, dy * a.gs;
  return (L / d) * j;
}

CableState cable_deviations(const Vec2& delta) {
  const double c = std::sqrt(3.0) / 2.0;
  CableState s;
  const double a = 0.5 * delta.x();
  const double b = c * delta.y();
  s.deviations = Vec3(-delta.x(), a - b, a + b);
  return s;
}

Vec2 q_from_cables(const CableState& cables) {
  const Vec3& l = cables.deviations;
  return Vec2(-l.x(), (l.z() - l.y()) / std::sqrt(3.0));
}

Vec3 reel_speeds(double omega_in_x, double omega_in_y, const ArmSpec& spec) {
  const double k = spec.k();
  return Vec3(-k * omega_in_x, -0.5 * k * (omega_in_x + omega_in_y),
              -0.5 * k * (omega_in_x - omega_in_y));
}

Vec2 q_rates_from_motors(const Vec2& omega_in, const ArmSpec& spec) {
  const double kr = spec.k() * spec.r_reel;
  return Vec2(kr * omega_in.x(), spec.dy_sign * std::sqrt(3.0) / 3.0 * kr * omega_in.y());
}

Vec2 motors_from_q_rates(const Vec2& ddelta, const ArmSpec& spec) {
  const double kr = spec.k() * spec.r_reel;
  return Vec2(ddelta.x() / kr, spec.dy_sign * std::sqrt(3.0) * ddelta.y() / kr);
}

Mat4 se3_transform(double gamma, double phi_bend, double L) {
  const ArcFunctions a = arc_functions(gamma);
  // In the bending plane the tip sits at (L g f(g), L s(g)) before rotation by phi.
  const Vec3 t_plane(L * gamma * a.f, 0.0, L * a.s);
  const Mat3 rz = rot_z(phi_bend);
  Mat4 T = Mat4::Identity();
  T.topLeftCorner<3, 3>() = rz * rot_x(gamma) * rz.transpose();
  T.topRightCorner<3, 1>() = rz * t_plane;
  return T;
}

}  // namespace mmb::arm
