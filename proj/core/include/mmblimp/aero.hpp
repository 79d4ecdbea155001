#pragma once

#include <array>
#include <string>

#include "mmblimp/math.hpp"

namespace mmb::aero {

enum Coef { kD = 0, kS, kL, kMx, kMy, kMz };

inline constexpr std::array<const char*, 6> kCoefNames{"D", "S", "L", "Mx", "My", "Mz"};

// One row of the identified table: C = c0 + ca * alpha^deg_a + cb * beta^deg_b.
struct CoefRow {
  double c0 = 0.0;
  double ca = 0.0;
  int deg_a = 1;
  double cb = 0.0;
  int deg_b = 1;
};

struct AeroModel {
  std::array<CoefRow, 6> rows{{
      {0.243, 8.838, 2, 9.016, 2},
      {-0.082, -0.285, 2, -2.356, 1},
      {0.159, 2.938, 1, 8.103, 2},
      {-0.036, 0.553, 1, -0.683, 1},
      {0.057, 0.093, 1, 5.236, 2},
      {0.093, -0.209, 1, -0.356, 1},
  }};
  Vec3 damping{-0.073, -0.052, -0.032};  // N m s/rad, body axes
  double scale = 0.52085;                // 0.5 * rho * A, kg/m
  double validity = deg2rad(30.0);       // fit envelope on |alpha| and |beta|
  double v_min = 1e-3;                   // stagnation threshold, m/s

  void validate() const;
};

struct AeroAngles {
  double alpha = 0.0;
  double beta = 0.0;
  double V = 0.0;
  Mat3 Rvb = Mat3::Identity();  // velocity frame to body frame
};

using Coefficients = std::array<double, 6>;

struct AeroWrench {
  Vec3 force = Vec3::Zero();   // body axes, N
  Vec3 moment = Vec3::Zero();  // body axes, N m
  AeroAngles angles;
  bool stagnant = false;
  bool out_of_envelope = false;
};

Mat3 velocity_to_body(double alpha, double beta);

// Throws Stagnation when the airspeed is at or below model.v_min.
AeroAngles aero_angles(const Vec3& v_air_body, double v_min = 1e-3);

// Sets *out_of_envelope (if given) when |alpha| or |beta| exceeds the fit range.
Coefficients aero_coefficients(double alpha, double beta, const AeroModel& model,
                               bool* out_of_envelope = nullptr);

AeroWrench aero_wrench(const Vec3& v_air_body, const Vec3& omega, const AeroModel& model);

}  // namespace mmb::aero
