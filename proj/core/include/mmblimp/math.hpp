#pragma once

#include <Eigen/Dense>

#include <cmath>
#include <numbers>

namespace mmb {

using Vec2 = Eigen::Vector2d;
using Vec3 = Eigen::Vector3d;
using Vec6 = Eigen::Matrix<double, 6, 1>;
using Mat3 = Eigen::Matrix3d;
using Mat6 = Eigen::Matrix<double, 6, 6>;
using Mat32 = Eigen::Matrix<double, 3, 2>;
using Mat4 = Eigen::Matrix4d;

inline constexpr double kPi = std::numbers::pi;
inline constexpr double kGramForce = 9.80665e-3;  // N per gram-force

constexpr double deg2rad(double deg) { return deg * kPi / 180.0; }
constexpr double rad2deg(double rad) { return rad * 180.0 / kPi; }

inline Mat3 skew(const Vec3& v) {
  Mat3 s;
  s << 0.0, -v.z(), v.y(),
       v.z(), 0.0, -v.x(),
       -v.y(), v.x(), 0.0;
  return s;
}

inline Mat3 rot_x(double a) {
  const double c = std::cos(a), s = std::sin(a);
  Mat3 r;
  r << 1, 0, 0,
       0, c, -s,
       0, s, c;
  return r;
}

inline Mat3 rot_y(double a) {
  const double c = std::cos(a), s = std::sin(a);
  Mat3 r;
  r << c, 0, s,
       0, 1, 0,
       -s, 0, c;
  return r;
}

inline Mat3 rot_z(double a) {
  const double c = std::cos(a), s = std::sin(a);
  Mat3 r;
  r << c, -s, 0,
       s, c, 0,
       0, 0, 1;
  return r;
}

// Wraps an angle into (-pi, pi].
inline double wrap_pi(double a) {
  a = std::remainder(a, 2.0 * kPi);
  if (a <= -kPi) a += 2.0 * kPi;
  return a;
}

template <typename T>
constexpr T clamp_abs(T value, T limit) {
  return value > limit ? limit : (value < -limit ? -limit : value);
}

}  // namespace mmb
