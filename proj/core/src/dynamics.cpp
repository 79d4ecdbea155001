#include "mmblimp/dynamics.hpp"

#include <sstream>
#include <string>

#include "mmblimp/errors.hpp"

namespace mmb {

void VehicleParams::validate() const {
  std::vector<std::string> bad;
  if (!(m0 > 0.0)) bad.push_back("vehicle.m0 must be > 0");
  if (!(ma > 0.0)) bad.push_back("vehicle.ma must be > 0");
  if (!(Fb >= 0.0)) bad.push_back("vehicle.Fb must be >= 0");
  if (!(g > 0.0)) bad.push_back("vehicle.g must be > 0");
  if (!r0.allFinite()) bad.push_back("vehicle.r0 must be finite");
  if (!J.allFinite() || (J - J.transpose()).norm() > 1e-12 * J.norm()) {
    bad.push_back("vehicle.J must be symmetric");
  } else {
    Eigen::SelfAdjointEigenSolver<Mat3> es(J);
    if (!(es.eigenvalues().minCoeff() > 0.0)) bad.push_back("vehicle.J must be positive definite");
    // J includes m0 at r0, so what is left after removing it must still be a
    // physical inertia.
    const Mat3 own = J - m0 * (r0.squaredNorm() * Mat3::Identity() - r0 * r0.transpose());
    Eigen::SelfAdjointEigenSolver<Mat3> es2(own);
    if (!(es2.eigenvalues().minCoeff() > 0.0)) {
      bad.push_back("vehicle.J is too small for m0 placed at r0");
    }
  }
  try {
    arm.validate();
  } catch (const ValidationError& e) {
    bad.insert(bad.end(), e.problems().begin(), e.problems().end());
  }
  try {
    aero.validate();
  } catch (const ValidationError& e) {
    bad.insert(bad.end(), e.problems().begin(), e.problems().end());
  }
  if (!bad.empty()) throw ValidationError(bad);
}

VehicleParams with_neutral_buoyancy(VehicleParams params) {
  params.Fb = params.mass() * params.g;
  return params;
}

double StateDerivative::norm() const {
  return std::sqrt(dp.squaredNorm() + deta.squaredNorm() + dv.squaredNorm() +
                   domega.squaredNorm() + dq_arm.squaredNorm());
}

namespace dynamics {

Mat3 rotation_from_euler(const Vec3& eta) {
  return rot_z(eta.z()) * rot_y(eta.y()) * rot_x(eta.x());
}

Mat3 euler_rate_matrix(const Vec3& eta) {
  const double th = eta.y();
  if (std::abs(th) >= kPi / 2.0 - kGimbalEps) {
    std::ostringstream os;
    os << "pitch " << th << " rad is within " << kGimbalEps << " of the gimbal singularity";
    throw GimbalProximity(os.str());
  }
  const double sp = std::sin(eta.x()), cp = std::cos(eta.x());
  const double ct = std::cos(th), tt = std::tan(th);
  Mat3 P;
  P << 1.0, sp * tt, cp * tt,
       0.0, cp, -sp,
       0.0, sp / ct, cp / ct;
  return P;
}

Mat3 effective_inertia(const Mat3& J, double ma, const Vec3& ra) {
  return J + ma * (ra.squaredNorm() * Mat3::Identity() - ra * ra.transpose());
}

Vec3 first_moment(const VehicleParams& params, const Vec3& ra) {
  return params.m0 * params.r0 + params.ma * ra;
}

Mat6 mass_matrix(double mass, const Mat3& J_eff, const Vec3& l_g, const Mat3& R) {
  const Mat3 L = skew(l_g);
  Mat6 M;
  M.topLeftCorner<3, 3>() = mass * Mat3::Identity();
  M.topRightCorner<3, 3>() = -R * L;
  M.bottomLeftCorner<3, 3>() = L * R.transpose();
  M.bottomRightCorner<3, 3>() = J_eff;
  return M;
}

Mat6 mass_matrix(const VehicleParams& params, const Mat3& R, const Vec3& ra) {
  return mass_matrix(params.mass(), effective_inertia(params.J, params.ma, ra),
                     first_moment(params, ra), R);
}

double check_conditioning(const Mat6& M, double bound) {
  Eigen::JacobiSVD<Mat6> svd(M);
  const auto& s = svd.singularValues();
  const double cond = s(0) / s(5);
  if (!(cond <= bound)) {
    throw NumericalConditioning("mass matrix condition number " + std::to_string(cond) +
                                " exceeds " + std::to_string(bound));
  }
  return cond;
}

Evaluation evaluate(const BodyState& s, const ActuationCommand& cmd, const VehicleParams& params,
                    const Environment& env, double t) {
  Evaluation out;
  const Mat3 R = rotation_from_euler(s.eta);
  const Mat3 P = euler_rate_matrix(s.eta);
  const Vec3& w = s.omega;

  const Vec3 ra = arm::arm_offset(s.q_arm, params.arm);
  const Mat32 Ja = arm::tip_jacobian(s.q_arm, params.arm.L, params.arm.d);
  const Vec3 nu_a = Ja * cmd.ddelta;  // arm tip velocity in body axes
  const Vec3 lg = first_moment(params, ra);
  const Mat3 Jeff = effective_inertia(params.J, params.ma, ra);
  const double m = params.mass();
  const Vec3 k_hat = Vec3::UnitZ();

  if (env.aero_enabled) {
    out.wind = aero::wind_at(s.p, t, env.wind);
    out.aero = aero::aero_wrench(R.transpose() * (s.v - out.wind), w, params.aero);
  }

  const Vec3 thrust(cmd.F, 0.0, 0.0);
  const Vec3 coriolis = w.cross(nu_a);

  Vec6 rhs;
  rhs.head<3>() = R * (w.cross(lg)).cross(w) + (m * params.g - params.Fb) * k_hat +
                  R * (out.aero.force + thrust + cmd.aux_force) -
                  2.0 * params.ma * R * coriolis;
  rhs.tail<3>() = (Jeff * w).cross(w) + lg.cross(params.g * R.transpose() * k_hat) +
                  out.aero.moment + Vec3(0.0, params.h() * cmd.F, 0.0) + cmd.aux_moment -
                  2.0 * params.ma * ra.cross(coriolis);

  const Mat6 M = mass_matrix(m, Jeff, lg, R);
  const Vec6 acc = M.partialPivLu().solve(rhs);

  out.d.dp = s.v;
  out.d.deta = P * w;
  out.d.dv = acc.head<3>();
  out.d.domega = acc.tail<3>();
  out.d.dq_arm = cmd.ddelta;

  if (!out.d.dv.allFinite() || !out.d.domega.allFinite() || !out.d.deta.allFinite() ||
      !out.d.dp.allFinite() || !out.d.dq_arm.allFinite()) {
    throw NonFinite("state derivative has non-finite entries at t=" + std::to_string(t));
  }
  return out;
}

StateDerivative derivative(const BodyState& s, const ActuationCommand& cmd,
                           const VehicleParams& params, const Environment& env, double t) {
  return evaluate(s, cmd, params, env, t).d;
}

namespace {

BodyState advance(const BodyState& s, const StateDerivative& d, double h) {
  BodyState r;
  r.p = s.p + h * d.dp;
  r.eta = s.eta + h * d.deta;
  r.v = s.v + h * d.dv;
  r.omega = s.omega + h * d.domega;
  r.q_arm = s.q_arm + h * d.dq_arm;
  return r;
}

}  // namespace

BodyState step(const BodyState& s, const ActuationCommand& cmd, const VehicleParams& params,
               const Environment& env, double dt, double t, StepFlags* flags) {
  if (!(dt > 0.0) || dt > kDtMax) {
    throw std::invalid_argument("step: dt must be in (0, " + std::to_string(kDtMax) + "]");
  }
  const StateDerivative k1 = derivative(s, cmd, params, env, t);
  const StateDerivative k2 = derivative(advance(s, k1, 0.5 * dt), cmd, params, env, t + 0.5 * dt);
  const StateDerivative k3 = derivative(advance(s, k2, 0.5 * dt), cmd, params, env, t + 0.5 * dt);
  const StateDerivative k4 = derivative(advance(s, k3, dt), cmd, params, env, t + dt);

  const double h6 = dt / 6.0;
  BodyState r;
  r.p = s.p + h6 * (k1.dp + 2.0 * k2.dp + 2.0 * k3.dp + k4.dp);
  r.eta = s.eta + h6 * (k1.deta + 2.0 * k2.deta + 2.0 * k3.deta + k4.deta);
  r.v = s.v + h6 * (k1.dv + 2.0 * k2.dv + 2.0 * k3.dv + k4.dv);
  r.omega = s.omega + h6 * (k1.domega + 2.0 * k2.domega + 2.0 * k3.domega + k4.domega);
  r.q_arm = s.q_arm + h6 * (k1.dq_arm + 2.0 * k2.dq_arm + 2.0 * k3.dq_arm + k4.dq_arm);

  r.eta.z() = wrap_pi(r.eta.z());
  const double lim = params.arm.max_bend();
  const double n = r.q_arm.norm();
  bool sat = false;
  if (n > lim) {
    r.q_arm *= lim / n;
    sat = true;
  }
  if (flags) flags->saturated = sat;
  return r;
}

double mechanical_energy(const BodyState& s, const VehicleParams& params) {
  const Mat3 R = rotation_from_euler(s.eta);
  const Vec3 ra = arm::arm_offset(s.q_arm, params.arm);
  const Vec3 lg = first_moment(params, ra);
  const Mat3 Jeff = effective_inertia(params.J, params.ma, ra);
  const double m = params.mass();
  const double kinetic = 0.5 * m * s.v.squaredNorm() + s.v.dot(R * s.omega.cross(lg)) +
                         0.5 * s.omega.dot(Jeff * s.omega);
  const double potential =
      -params.g * (m * s.p.z() + (R * lg).z()) + params.Fb * s.p.z();
  return kinetic + potential;
}

BodyState static_trim(const VehicleParams& params, const Vec2& q_arm) {
  constexpr int kMaxIter = 10000;
  constexpr double kDamping = 0.5;
  constexpr double kTol = 1e-12;

  Environment env;
  env.aero_enabled = false;  // v = omega = 0 leaves only damping, which vanishes
  BodyState s;
  s.q_arm = q_arm;
  const ActuationCommand cmd;

  auto residual = [&](const BodyState& b) {
    const StateDerivative d = derivative(b, cmd, params, env);
    Vec6 r;
    r << d.dv, d.domega;
    return r;
  };

  for (int it = 0; it < kMaxIter; ++it) {
    const Vec6 r = residual(s);
    if (r.norm() < kTol) return s;
    // Finite-difference Jacobian with respect to roll and pitch.
    Eigen::Matrix<double, 6, 2> Jr;
    for (int j = 0; j < 2; ++j) {
      BodyState sp = s;
      const double step = 1e-7;
      sp.eta[j] += step;
      Jr.col(j) = (residual(sp) - r) / step;
    }
    const Vec2 dx = Jr.colPivHouseholderQr().solve(-r);
    if (!dx.allFinite() || dx.norm() < 1e-15) break;  // stuck away from a root
    s.eta.x() += kDamping * dx.x();
    s.eta.y() += kDamping * dx.y();
    if (std::abs(s.eta.x()) >= kPi / 2.0 || std::abs(s.eta.y()) >= kPi / 2.0 - kGimbalEps) break;
  }
  throw NoTrimFound("no floating equilibrium for arm (" + std::to_string(q_arm.x()) + ", " +
                    std::to_string(q_arm.y()) + ")");
}

}  // namespace dynamics
}  // namespace mmb
