#include "mmblimp/wind.hpp"

#include <string>
#include <vector>

#include "mmblimp/errors.hpp"

namespace mmb::aero {

const char* kind_name(WindField::Kind kind) {
  switch (kind) {
    case WindField::Kind::Constant: return "constant";
    case WindField::Kind::GustPulse: return "gust-pulse";
    case WindField::Kind::FanJet: return "fan-jet";
  }
  return "?";
}

void WindField::validate() const {
  std::vector<std::string> bad;
  if (!(speed >= 0.0)) bad.push_back("wind.speed must be >= 0");
  if (!(direction.norm() > 0.0)) bad.push_back("wind.direction must be nonzero");
  if (kind == Kind::GustPulse && !(t_start < t_end)) {
    bad.push_back("wind.start must be < wind.end");
  }
  if (kind == Kind::FanJet) {
    if (!(axis.norm() > 0.0)) bad.push_back("wind.axis must be nonzero");
    if (!(half_angle > 0.0 && half_angle < kPi / 2.0)) {
      bad.push_back("wind.half_angle must be in (0, 90) deg");
    }
    if (!(reach > 0.0)) bad.push_back("wind.reach must be > 0");
  }
  if (!bad.empty()) throw ValidationError(bad);
}

Vec3 wind_at(const Vec3& position, double time, const WindField& field) {
  switch (field.kind) {
    case WindField::Kind::Constant:
      return field.speed * field.direction.normalized();
    case WindField::Kind::GustPulse:
      if (time >= field.t_start && time <= field.t_end) {
        return field.speed * field.direction.normalized();
      }
      return Vec3::Zero();
    case WindField::Kind::FanJet: {
      const Vec3 a = field.axis.normalized();
      const Vec3 rel = position - field.apex;
      const double along = rel.dot(a);
      if (along <= 0.0 || along > field.reach) return Vec3::Zero();
      const double radial = (rel - along * a).norm();
      if (radial > along * std::tan(field.half_angle)) return Vec3::Zero();
      return field.speed * a;
    }
  }
  return Vec3::Zero();
}

Vec3 wind_at(const Vec3& position, double time, const std::vector<WindField>& fields) {
  Vec3 w = Vec3::Zero();
  for (const auto& f : fields) w += wind_at(position, time, f);
  return w;
}

}  // namespace mmb::aero
