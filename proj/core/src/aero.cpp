#include "mmblimp/aero.hpp"

#include <algorithm>
#include <string>
#include <vector>

#include "mmblimp/errors.hpp"

namespace mmb::aero {
namespace {

double power(double x, int n) {
  double r = 1.0;
  for (int i = 0; i < n; ++i) r *= x;
  return r;
}

}  // namespace

void AeroModel::validate() const {
  std::vector<std::string> bad;
  if (!(scale > 0.0)) bad.push_back("aero.scale must be > 0");
  for (int i = 0; i < 3; ++i) {
    if (!(damping[i] <= 0.0)) bad.push_back("aero.damping entries must be <= 0");
  }
  if (!(validity > 0.0)) bad.push_back("aero.validity must be > 0");
  if (!(v_min > 0.0)) bad.push_back("aero.v_min must be > 0");
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const auto& r = rows[i];
    if (r.deg_a < 1 || r.deg_a > 2 || r.deg_b < 1 || r.deg_b > 2) {
      bad.push_back(std::string("aero.") + kCoefNames[i] + ": degree must be 1 or 2");
    }
  }
  if (!bad.empty()) throw ValidationError(bad);
}

Mat3 velocity_to_body(double alpha, double beta) {
  const double ca = std::cos(alpha), sa = std::sin(alpha);
  const double cb = std::cos(beta), sb = std::sin(beta);
  Mat3 r;
  r << ca * cb, -ca * sb, -sa,
       sb, cb, 0.0,
       sa * cb, -sa * sb, ca;
  return r;
}

AeroAngles aero_angles(const Vec3& v_air_body, double v_min) {
  AeroAngles a;
  a.V = v_air_body.norm();
  if (!(a.V > v_min)) throw Stagnation("airspeed below stagnation threshold");
  a.alpha = std::atan2(v_air_body.z(), v_air_body.x());
  a.beta = std::asin(std::clamp(v_air_body.y() / a.V, -1.0, 1.0));
  a.Rvb = velocity_to_body(a.alpha, a.beta);
  return a;
}

Coefficients aero_coefficients(double alpha, double beta, const AeroModel& model,
                               bool* out_of_envelope) {
  if (out_of_envelope) {
    *out_of_envelope = std::abs(alpha) > model.validity || std::abs(beta) > model.validity;
  }
  Coefficients c{};
  for (std::size_t i = 0; i < c.size(); ++i) {
    const CoefRow& r = model.rows[i];
    c[i] = r.c0 + r.ca * power(alpha, r.deg_a) + r.cb * power(beta, r.deg_b);
  }
  return c;
}

AeroWrench aero_wrench(const Vec3& v_air_body, const Vec3& omega, const AeroModel& model) {
  AeroWrench w;
  w.moment = model.damping.cwiseProduct(omega);
  const double V = v_air_body.norm();
  if (!(V > model.v_min)) {
    w.stagnant = true;
    return w;
  }
  w.angles = aero_angles(v_air_body, model.v_min);
  const Coefficients c =
      aero_coefficients(w.angles.alpha, w.angles.beta, model, &w.out_of_envelope);
  const double q = model.scale * V * V;
  w.force = w.angles.Rvb * Vec3(-q * c[kD], q * c[kS], -q * c[kL]);
  w.moment += w.angles.Rvb * Vec3(q * c[kMx], q * c[kMy], q * c[kMz]);
  return w;
}

}  // namespace mmb::aero
