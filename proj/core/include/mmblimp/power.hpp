#pragma once

namespace mmb::power {

// Electrical power drawn by the vehicle:
//   P = P_idle + c_prop * |F|^1.5 + c_omni * sum |F_i|^1.5 + c_arm * duty
// where duty is the mean normalized arm motor speed.
struct PowerModel {
  // Thrust coefficients come from `mmblimp calibrate-power` on the two
  // endurance presets (5.6 and 12.5 mAh/min).
  double voltage = 7.4;         // battery, V
  double P_idle = 1.5;          // electronics, W
  double c_prop = 44.7879106;   // W / N^1.5, main propeller
  double c_omni = 101.8601015;  // W / N^1.5, baseline thrusters
  double c_arm = 0.3;           // W at full arm motor duty

  void validate() const;
};

double power(const PowerModel& m, double prop_effort, double omni_effort, double arm_duty);

double mah_per_min(double watts, double voltage);
double mwh_per_m(double joules, double path_length);

// Mean operating point of one flight mode.
struct ModeSample {
  double prop_effort = 0.0;
  double omni_effort = 0.0;
  double arm_duty = 0.0;
};

// Chooses c_prop and c_omni so that the two mode samples draw exactly the
// target currents (mAh/min). P_idle, c_arm and the voltage are kept.
// Throws CalibrationError if a coefficient would come out non-positive.
PowerModel calibrate(PowerModel base, const ModeSample& q_mode, double q_target,
                     const ModeSample& omni_mode, double omni_target);

}  // namespace mmb::power
