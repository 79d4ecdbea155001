#pragma once

#include "mmblimp/config.hpp"
#include "mmblimp/log.hpp"
#include "mmblimp/power.hpp"

namespace mmb::harness {

// Runs the fixed-step loop: wind, controller or script, RK4 step, log.
// Dynamics errors are rethrown with the simulation time in the message.
TrajectoryLog run_scenario(const ScenarioConfig& cfg);

// Time-mean effort terms of a run. Power is linear in the coefficients, so
// each term comes from a run with a unit model for that term alone; the result
// matches the energy integral of any later run exactly.
power::ModeSample measure_mode(const ScenarioConfig& cfg);

// Power model of q_cfg with c_prop and c_omni fitted so that the two
// scenarios draw q_target and omni_target mAh/min.
power::PowerModel calibrate_power(const ScenarioConfig& q_cfg, const ScenarioConfig& omni_cfg,
                                  double q_target, double omni_target);

}  // namespace mmb::harness
