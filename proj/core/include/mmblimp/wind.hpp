#pragma once

#include <vector>

#include "mmblimp/math.hpp"

namespace mmb::aero {

struct WindField {
  enum class Kind { Constant, GustPulse, FanJet };

  Kind kind = Kind::Constant;
  Vec3 direction = Vec3::UnitX();  // normalized on use
  double speed = 0.0;              // m/s
  double t_start = 0.0;            // gust window, s
  double t_end = 0.0;
  // Fan jet cone: air moves along `axis` inside the cone.
  Vec3 apex = Vec3::Zero();
  Vec3 axis = Vec3::UnitY();
  double half_angle = deg2rad(15.0);
  double reach = 10.0;  // m

  void validate() const;
};

const char* kind_name(WindField::Kind kind);

Vec3 wind_at(const Vec3& position, double time, const WindField& field);
Vec3 wind_at(const Vec3& position, double time, const std::vector<WindField>& fields);

}  // namespace mmb::aero
