#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "mmblimp/control.hpp"
#include "mmblimp/dynamics.hpp"
#include "mmblimp/power.hpp"
#include "mmblimp/wind.hpp"

namespace mmb::harness {

enum class Mode { OpenLoop, ClosedLoop, Omni, Elevator };

const char* mode_name(Mode m);

struct ReferencePoint {
  double t = 0.0;
  Vec3 eta = Vec3::Zero();  // rad
};

struct ScriptRow {
  double t = 0.0;
  Vec2 delta = Vec2::Zero();  // m
  double F = 0.0;             // N
  double de = 0.0;            // elevator deflection, rad
};

struct Script {
  enum class Kind { None, Table, AlternatingSine, Triangle };
  Kind kind = Kind::None;
  std::vector<ScriptRow> rows;       // table, held until the next row
  double amplitude = 0.02;           // alternating sine, m
  double period = 8.0;               // s, per sine segment or per triangle loop
  double thrust = 0.0;               // N, sine and triangle kinds
  std::vector<Vec2> vertices;        // triangle corners, m

  struct Sample {
    Vec2 delta = Vec2::Zero();
    double F = 0.0;
    double de = 0.0;
  };
  Sample at(double t) const;
};

struct Disturbance {
  double amplitude = 0.0;  // pitch moment, N m
  double period = 4.0;     // s
  double start = 0.0;      // s

  double moment(double t) const;
};

struct SimSettings {
  double duration = 30.0;
  double dt = 1e-3;
  int decimation = 10;
  std::uint64_t seed = 1;
};

struct ScenarioConfig {
  std::string name = "scenario";
  Mode mode = Mode::ClosedLoop;
  bool control_yaw = true;
  bool aero_enabled = true;

  VehicleParams vehicle;
  control::ControlGains gains;
  double thrust = 8.0 * kGramForce;  // closed-loop and elevator modes, N
  control::BaselineActuator baseline;
  double omni_forward = 8.0 * kGramForce;  // N
  double omni_z_ref = 0.0;                 // m, z down
  std::vector<aero::WindField> wind;
  std::vector<ReferencePoint> reference;
  Script script;
  Disturbance disturbance;
  double claw_close_at = -1.0;  // negative disables the claw event
  BodyState initial;
  SimSettings sim;
  power::PowerModel power;

  // Reference attitude at time t (held between points). Zero if none.
  Vec3 reference_at(double t) const;

  // Throws ValidationError listing every violated invariant.
  void validate() const;
};

// Parses the sectioned key/value format. `source` names the input in errors.
// Throws ParseError for syntax problems and unknown keys, ValidationError
// for missing or invalid values.
ScenarioConfig parse_scenario(const std::string& text, const std::string& source = "<string>");

// Loads a file, or a built-in preset when `path` is a preset name.
ScenarioConfig load_scenario(const std::string& path);

// Writes a config in the same format; parse_scenario reads it back.
std::string format_scenario(const ScenarioConfig& cfg);

}  // namespace mmb::harness
