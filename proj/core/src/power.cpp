#include "mmblimp/power.hpp"

#include <string>
#include <vector>

#include "mmblimp/errors.hpp"

namespace mmb::power {

void PowerModel::validate() const {
  std::vector<std::string> bad;
  if (!(voltage > 0.0)) bad.push_back("power.voltage must be > 0");
  if (!(P_idle >= 0.0)) bad.push_back("power.P_idle must be >= 0");
  if (!(c_prop >= 0.0)) bad.push_back("power.c_prop must be >= 0");
  if (!(c_omni >= 0.0)) bad.push_back("power.c_omni must be >= 0");
  if (!(c_arm >= 0.0)) bad.push_back("power.c_arm must be >= 0");
  if (!bad.empty()) throw ValidationError(bad);
}

double power(const PowerModel& m, double prop_effort, double omni_effort, double arm_duty) {
  return m.P_idle + m.c_prop * prop_effort + m.c_omni * omni_effort + m.c_arm * arm_duty;
}

double mah_per_min(double watts, double voltage) { return watts / voltage * 1000.0 / 60.0; }

double mwh_per_m(double joules, double path_length) { return joules / 3.6 / path_length; }

PowerModel calibrate(PowerModel base, const ModeSample& q_mode, double q_target,
                     const ModeSample& omni_mode, double omni_target) {
  const double to_watts = base.voltage * 60.0 / 1000.0;
  // Q mode has no baseline thrusters, the omni mode no main propeller; each
  // target fixes one coefficient.
  if (!(q_mode.prop_effort > 0.0) || !(omni_mode.omni_effort > 0.0)) {
    throw CalibrationError("calibration needs nonzero thrust effort in both modes");
  }
  const double pq = q_target * to_watts - base.P_idle - base.c_omni * q_mode.omni_effort -
                    base.c_arm * q_mode.arm_duty;
  base.c_prop = pq / q_mode.prop_effort;
  const double po = omni_target * to_watts - base.P_idle - base.c_prop * omni_mode.prop_effort -
                    base.c_arm * omni_mode.arm_duty;
  base.c_omni = po / omni_mode.omni_effort;
  if (!(base.c_prop > 0.0) || !(base.c_omni > 0.0)) {
    throw CalibrationError("power targets are below the idle draw of one mode");
  }
  return base;
}

}  // namespace mmb::power
