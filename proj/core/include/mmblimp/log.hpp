#pragma once

#include <string>
#include <vector>

#include "mmblimp/dynamics.hpp"
#include "mmblimp/math.hpp"

namespace mmb {

struct LogFlags {
  bool saturated = false;   // arm clamped to the workspace or motor limit hit
  bool validity = false;    // aero angles outside the fit envelope
  bool stagnation = false;  // airspeed below the aero threshold
  bool claw_closed = false;
  bool perched = false;     // terminal event, last record only
};

struct LogRecord {
  double t = 0.0;
  BodyState state;
  double F = 0.0;                   // forward thrust, N
  Vec3 aero_force = Vec3::Zero();   // body axes
  Vec3 aero_moment = Vec3::Zero();
  double V_lyap = 0.0;
  double power = 0.0;   // W
  double energy = 0.0;  // J since start
  LogFlags flags;
  // Kept by the structured format only.
  double thrust_effort = 0.0;  // sum of |F_i|^1.5, N^1.5
  double arm_duty = 0.0;
  Vec3 eta_ref = Vec3::Zero();
};

struct TrajectoryLog {
  std::string name;
  double dt = 0.0;  // sample interval after decimation
  std::vector<LogRecord> records;

  bool empty() const { return records.empty(); }
  std::size_t size() const { return records.size(); }
};

}  // namespace mmb
