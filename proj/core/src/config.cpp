#include "mmblimp/config.hpp"

#include <charconv>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <map>
#include <sstream>

#include "mmblimp/errors.hpp"
#include "mmblimp/presets.hpp"

namespace mmb::harness {

const char* mode_name(Mode m) {
  switch (m) {
    case Mode::OpenLoop: return "open-loop";
    case Mode::ClosedLoop: return "closed-loop";
    case Mode::Omni: return "omni";
    case Mode::Elevator: return "elevator";
  }
  return "?";
}

Script::Sample Script::at(double t) const {
  Sample s;
  switch (kind) {
    case Kind::None:
      break;
    case Kind::Table: {
      for (const auto& r : rows) {
        if (r.t > t) break;
        s.delta = r.delta;
        s.F = r.F;
        s.de = r.de;
      }
      break;
    }
    case Kind::AlternatingSine: {
      // One full sine period on delta_x, then one on delta_y, and so on.
      s.F = thrust;
      const double seg = std::floor(t / period);
      const double u = std::sin(2.0 * kPi * (t - seg * period) / period) * amplitude;
      if (static_cast<long>(seg) % 2 == 0) {
        s.delta.x() = u;
      } else {
        s.delta.y() = u;
      }
      break;
    }
    case Kind::Triangle: {
      s.F = thrust;
      if (vertices.size() < 2) break;
      const double n = static_cast<double>(vertices.size());
      const double phase = std::fmod(t, period) / period * n;
      const std::size_t i = std::min(static_cast<std::size_t>(phase), vertices.size() - 1);
      const double f = phase - static_cast<double>(i);
      const Vec2& a = vertices[i];
      const Vec2& b = vertices[(i + 1) % vertices.size()];
      s.delta = a + f * (b - a);
      break;
    }
  }
  return s;
}

double Disturbance::moment(double t) const {
  if (amplitude == 0.0 || t < start) return 0.0;
  return amplitude * std::sin(2.0 * kPi * (t - start) / period);
}

Vec3 ScenarioConfig::reference_at(double t) const {
  Vec3 r = Vec3::Zero();
  for (const auto& p : reference) {
    if (p.t > t) break;
    r = p.eta;
  }
  return r;
}

void ScenarioConfig::validate() const {
  std::vector<std::string> bad;
  auto collect = [&](auto&& fn) {
    try {
      fn();
    } catch (const ValidationError& e) {
      bad.insert(bad.end(), e.problems().begin(), e.problems().end());
    }
  };
  collect([&] { vehicle.validate(); });
  collect([&] { gains.validate(); });
  collect([&] { power.validate(); });
  for (const auto& w : wind) collect([&] { w.validate(); });

  if (!(sim.duration >= 0.0)) bad.push_back("sim.duration must be >= 0");
  if (!(sim.dt > 0.0)) bad.push_back("sim.dt must be > 0");
  if (sim.dt > dynamics::kDtMax) bad.push_back("sim.dt must be <= 0.01");
  if (sim.decimation < 1) bad.push_back("sim.decimation must be >= 1");
  if (!(thrust >= 0.0)) bad.push_back("controller.thrust_gf must be >= 0");
  for (std::size_t i = 1; i < reference.size(); ++i) {
    if (!(reference[i].t > reference[i - 1].t)) {
      bad.push_back("reference rows must be strictly time-sorted");
      break;
    }
  }
  for (std::size_t i = 1; i < script.rows.size(); ++i) {
    if (!(script.rows[i].t > script.rows[i - 1].t)) {
      bad.push_back("script rows must be strictly time-sorted");
      break;
    }
  }
  if (script.kind != Script::Kind::None && script.kind != Script::Kind::Table &&
      !(script.period > 0.0)) {
    bad.push_back("script.period must be > 0");
  }
  if (script.kind == Script::Kind::Triangle && script.vertices.size() != 3) {
    bad.push_back("script.vertices_mm needs three corners");
  }
  if (script.kind == Script::Kind::Table && script.rows.empty()) {
    bad.push_back("script of kind table needs at least one 'at' row");
  }
  const double lim = vehicle.arm.max_bend();
  for (const auto& r : script.rows) {
    if (r.delta.norm() > lim + 1e-12) {
      bad.push_back("script row at t=" + std::to_string(r.t) + " leaves the arm workspace");
    }
    if (r.F < 0.0) bad.push_back("script row at t=" + std::to_string(r.t) + " has negative thrust");
  }
  if (mode == Mode::OpenLoop && script.kind == Script::Kind::None) {
    bad.push_back("open-loop mode needs a [script] section");
  }
  if (initial.q_arm.norm() > lim + 1e-12) bad.push_back("initial.q_mm leaves the arm workspace");
  if (!(std::abs(initial.eta.y()) < kPi / 2.0 - dynamics::kGimbalEps)) {
    bad.push_back("initial pitch must be inside (-90, 90) deg");
  }
  if (!(std::abs(initial.eta.x()) < kPi / 2.0)) bad.push_back("initial roll must be inside (-90, 90) deg");
  if (disturbance.amplitude != 0.0 && !(disturbance.period > 0.0)) {
    bad.push_back("disturbance.period must be > 0");
  }
  if (!bad.empty()) throw ValidationError(bad);
}

namespace {

struct Entry {
  std::string key;
  std::string value;
  int line = 0;
};

struct Section {
  std::string name;
  int line = 0;
  std::vector<Entry> entries;
};

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

std::vector<Section> split_sections(const std::string& text, const std::string& source) {
  std::vector<Section> out;
  std::istringstream in(text);
  std::string raw;
  int line = 0;
  while (std::getline(in, raw)) {
    ++line;
    const auto hash = raw.find_first_of("#;");
    const std::string s = trim(hash == std::string::npos ? raw : raw.substr(0, hash));
    if (s.empty()) continue;
    if (s.front() == '[') {
      if (s.back() != ']') throw ParseError(source, line, "unterminated section header");
      out.push_back({trim(s.substr(1, s.size() - 2)), line, {}});
      continue;
    }
    const auto eq = s.find('=');
    if (eq == std::string::npos) throw ParseError(source, line, "expected 'key = value'");
    if (out.empty()) throw ParseError(source, line, "key outside of any section");
    Entry e{trim(s.substr(0, eq)), trim(s.substr(eq + 1)), line};
    if (e.key.empty()) throw ParseError(source, line, "empty key");
    out.back().entries.push_back(std::move(e));
  }
  return out;
}

class Reader {
 public:
  explicit Reader(std::string source) : source_(std::move(source)) {}

  std::vector<double> numbers(const Entry& e, std::size_t min_n, std::size_t max_n) const {
    std::vector<double> v;
    std::istringstream in(e.value);
    std::string tok;
    while (in >> tok) {
      double x = 0.0;
      const auto* first = tok.data();
      const auto* last = tok.data() + tok.size();
      if (*first == '+') ++first;
      const auto res = std::from_chars(first, last, x);
      if (res.ec != std::errc() || res.ptr != last) {
        throw ParseError(source_, e.line, "field '" + e.key + "': '" + tok + "' is not a number");
      }
      v.push_back(x);
    }
    if (v.size() < min_n || v.size() > max_n) {
      std::string want = std::to_string(min_n);
      if (max_n != min_n) want += "-" + std::to_string(max_n);
      throw ParseError(source_, e.line,
                       "field '" + e.key + "' expects " + want + " values, got " +
                           std::to_string(v.size()));
    }
    return v;
  }

  double number(const Entry& e) const { return numbers(e, 1, 1)[0]; }

  Vec3 vec3(const Entry& e) const {
    const auto v = numbers(e, 3, 3);
    return Vec3(v[0], v[1], v[2]);
  }

  Vec2 vec2(const Entry& e) const {
    const auto v = numbers(e, 2, 2);
    return Vec2(v[0], v[1]);
  }

  control::PidGains pid(const Entry& e) const {
    const auto v = numbers(e, 3, 3);
    return {v[0], v[1], v[2]};
  }

  bool boolean(const Entry& e) const {
    if (e.value == "true" || e.value == "yes" || e.value == "1") return true;
    if (e.value == "false" || e.value == "no" || e.value == "0") return false;
    throw ParseError(source_, e.line, "field '" + e.key + "' expects true or false");
  }

  int integer(const Entry& e) const {
    const double x = number(e);
    if (x != std::floor(x)) throw ParseError(source_, e.line, "field '" + e.key + "' must be an integer");
    return static_cast<int>(x);
  }

  [[noreturn]] void fail(const Entry& e, const std::string& what) const {
    throw ParseError(source_, e.line, "field '" + e.key + "': " + what);
  }

  const std::string& source() const { return source_; }

 private:
  std::string source_;
};

using Handler = std::function<void(const Entry&)>;
using HandlerMap = std::map<std::string, Handler>;

void apply(const Section& s, const HandlerMap& handlers, const Reader& rd,
           bool allow_repeat_at = false) {
  std::map<std::string, int> seen;
  for (const auto& e : s.entries) {
    const auto it = handlers.find(e.key);
    if (it == handlers.end()) {
      throw ParseError(rd.source(), e.line, "unknown key '" + e.key + "' in [" + s.name + "]");
    }
    if (++seen[e.key] > 1 && !(allow_repeat_at && e.key == "at")) {
      throw ParseError(rd.source(), e.line, "duplicate key '" + e.key + "' in [" + s.name + "]");
    }
    it->second(e);
  }
}

Vec3 deg3(const Vec3& v) { return Vec3(deg2rad(v.x()), deg2rad(v.y()), deg2rad(v.z())); }

}  // namespace

ScenarioConfig parse_scenario(const std::string& text, const std::string& source) {
  const Reader rd(source);
  ScenarioConfig cfg;
  bool have_m0 = false, have_ma = false, have_vehicle = false, neutral = false;
  std::map<std::string, int> section_count;

  for (const Section& sec : split_sections(text, source)) {
    const int count = ++section_count[sec.name];
    if (count > 1 && sec.name != "wind") {
      throw ParseError(source, sec.line, "section [" + sec.name + "] appears twice");
    }
    if (sec.name == "scenario") {
      apply(sec,
            {{"name", [&](const Entry& e) { cfg.name = e.value; }},
             {"mode",
              [&](const Entry& e) {
                if (e.value == "open-loop") cfg.mode = Mode::OpenLoop;
                else if (e.value == "closed-loop") cfg.mode = Mode::ClosedLoop;
                else if (e.value == "omni") cfg.mode = Mode::Omni;
                else if (e.value == "elevator") cfg.mode = Mode::Elevator;
                else rd.fail(e, "expected open-loop, closed-loop, omni or elevator");
              }},
             {"control_yaw", [&](const Entry& e) { cfg.control_yaw = rd.boolean(e); }},
             {"aero", [&](const Entry& e) { cfg.aero_enabled = rd.boolean(e); }}},
            rd);
    } else if (sec.name == "vehicle") {
      have_vehicle = true;
      VehicleParams& v = cfg.vehicle;
      apply(sec,
            {{"m0", [&](const Entry& e) { v.m0 = rd.number(e); have_m0 = true; }},
             {"ma", [&](const Entry& e) { v.ma = rd.number(e); have_ma = true; }},
             {"r0", [&](const Entry& e) { v.r0 = rd.vec3(e); }},
             {"J",
              [&](const Entry& e) {
                const auto j = rd.numbers(e, 3, 6);
                if (j.size() != 3 && j.size() != 6) rd.fail(e, "expects 3 or 6 values");
                Mat3 m = Vec3(j[0], j[1], j[2]).asDiagonal();
                if (j.size() == 6) {
                  m(0, 1) = m(1, 0) = j[3];
                  m(0, 2) = m(2, 0) = j[4];
                  m(1, 2) = m(2, 1) = j[5];
                }
                v.J = m;
              }},
             {"Fb_gf", [&](const Entry& e) { v.Fb = rd.number(e) * kGramForce; }},
             {"g", [&](const Entry& e) { v.g = rd.number(e); }},
             {"neutral_buoyancy", [&](const Entry& e) { neutral = rd.boolean(e); }}},
            rd);
    } else if (sec.name == "arm") {
      arm::ArmSpec& a = cfg.vehicle.arm;
      apply(sec,
            {{"L", [&](const Entry& e) { a.L = rd.number(e); }},
             {"d", [&](const Entry& e) { a.d = rd.number(e); }},
             {"h", [&](const Entry& e) { a.h = rd.number(e); }},
             {"r_reel", [&](const Entry& e) { a.r_reel = rd.number(e); }},
             {"teeth",
              [&](const Entry& e) {
                const auto t = rd.numbers(e, 7, 7);
                for (int i = 0; i < 7; ++i) {
                  if (t[i] != std::floor(t[i])) rd.fail(e, "tooth counts must be integers");
                  a.teeth[i] = static_cast<int>(t[i]);
                }
              }},
             {"dy_sign", [&](const Entry& e) { a.dy_sign = rd.number(e); }},
             {"motor_limit", [&](const Entry& e) { a.motor_limit = rd.number(e); }}},
            rd);
    } else if (sec.name == "aero") {
      aero::AeroModel& m = cfg.vehicle.aero;
      HandlerMap h{{"scale", [&](const Entry& e) { m.scale = rd.number(e); }},
                   {"damping", [&](const Entry& e) { m.damping = rd.vec3(e); }},
                   {"validity_deg", [&](const Entry& e) { m.validity = deg2rad(rd.number(e)); }},
                   {"v_min", [&](const Entry& e) { m.v_min = rd.number(e); }}};
      for (int i = 0; i < 6; ++i) {
        h[std::string("C") + aero::kCoefNames[i]] = [&, i](const Entry& e) {
          const auto c = rd.numbers(e, 5, 5);
          if (c[2] != 1.0 && c[2] != 2.0) rd.fail(e, "alpha degree must be 1 or 2");
          if (c[4] != 1.0 && c[4] != 2.0) rd.fail(e, "beta degree must be 1 or 2");
          m.rows[i] = {c[0], c[1], static_cast<int>(c[2]), c[3], static_cast<int>(c[4])};
        };
      }
      apply(sec, h, rd);
    } else if (sec.name == "wind") {
      aero::WindField w;
      apply(sec,
            {{"kind",
              [&](const Entry& e) {
                if (e.value == "constant") w.kind = aero::WindField::Kind::Constant;
                else if (e.value == "gust-pulse") w.kind = aero::WindField::Kind::GustPulse;
                else if (e.value == "fan-jet") w.kind = aero::WindField::Kind::FanJet;
                else rd.fail(e, "expected constant, gust-pulse or fan-jet");
              }},
             {"direction", [&](const Entry& e) { w.direction = rd.vec3(e); }},
             {"speed", [&](const Entry& e) { w.speed = rd.number(e); }},
             {"start", [&](const Entry& e) { w.t_start = rd.number(e); }},
             {"end", [&](const Entry& e) { w.t_end = rd.number(e); }},
             {"apex", [&](const Entry& e) { w.apex = rd.vec3(e); }},
             {"axis", [&](const Entry& e) { w.axis = rd.vec3(e); }},
             {"half_angle_deg", [&](const Entry& e) { w.half_angle = deg2rad(rd.number(e)); }},
             {"reach", [&](const Entry& e) { w.reach = rd.number(e); }}},
            rd);
      cfg.wind.push_back(w);
    } else if (sec.name == "controller") {
      control::ControlGains& g = cfg.gains;
      apply(sec,
            {{"roll", [&](const Entry& e) { g.roll = rd.pid(e); }},
             {"pitch", [&](const Entry& e) { g.pitch = rd.pid(e); }},
             {"yaw", [&](const Entry& e) { g.yaw = rd.pid(e); }},
             {"inner_x", [&](const Entry& e) { g.inner_x = rd.pid(e); }},
             {"inner_y", [&](const Entry& e) { g.inner_y = rd.pid(e); }},
             {"pitch_sense", [&](const Entry& e) { g.pitch_sense = rd.number(e); }},
             {"roll_sense", [&](const Entry& e) { g.roll_sense = rd.number(e); }},
             {"yaw_sense", [&](const Entry& e) { g.yaw_sense = rd.number(e); }},
             {"yaw_roll_limit_deg",
              [&](const Entry& e) { g.yaw_roll_limit = deg2rad(rd.number(e)); }},
             {"lambda", [&](const Entry& e) { g.lambda = rd.number(e); }},
             {"epsilon", [&](const Entry& e) { g.epsilon = rd.number(e); }},
             {"rho_theta", [&](const Entry& e) { g.rho_theta = rd.number(e); }},
             {"D_theta", [&](const Entry& e) { g.D_theta = rd.number(e); }},
             {"thrust_gf", [&](const Entry& e) { cfg.thrust = rd.number(e) * kGramForce; }}},
            rd);
    } else if (sec.name == "reference") {
      apply(sec,
            {{"at",
              [&](const Entry& e) {
                const auto v = rd.numbers(e, 4, 4);
                cfg.reference.push_back({v[0], deg3(Vec3(v[1], v[2], v[3]))});
              }}},
            rd, true);
    } else if (sec.name == "script") {
      Script& s = cfg.script;
      s.kind = Script::Kind::Table;
      apply(sec,
            {{"kind",
              [&](const Entry& e) {
                if (e.value == "table") s.kind = Script::Kind::Table;
                else if (e.value == "alternating-sine") s.kind = Script::Kind::AlternatingSine;
                else if (e.value == "triangle") s.kind = Script::Kind::Triangle;
                else rd.fail(e, "expected table, alternating-sine or triangle");
              }},
             {"at",
              [&](const Entry& e) {
                const auto v = rd.numbers(e, 4, 5);
                ScriptRow r;
                r.t = v[0];
                r.delta = Vec2(v[1], v[2]) * 1e-3;
                r.F = v[3] * kGramForce;
                if (v.size() == 5) r.de = deg2rad(v[4]);
                s.rows.push_back(r);
              }},
             {"amplitude_mm", [&](const Entry& e) { s.amplitude = rd.number(e) * 1e-3; }},
             {"period", [&](const Entry& e) { s.period = rd.number(e); }},
             {"thrust_gf", [&](const Entry& e) { s.thrust = rd.number(e) * kGramForce; }},
             {"vertices_mm",
              [&](const Entry& e) {
                const auto v = rd.numbers(e, 6, 6);
                s.vertices.clear();
                for (int i = 0; i < 3; ++i) s.vertices.emplace_back(v[2 * i] * 1e-3, v[2 * i + 1] * 1e-3);
              }}},
            rd, true);
    } else if (sec.name == "disturbance") {
      apply(sec,
            {{"amplitude", [&](const Entry& e) { cfg.disturbance.amplitude = rd.number(e); }},
             {"period", [&](const Entry& e) { cfg.disturbance.period = rd.number(e); }},
             {"start", [&](const Entry& e) { cfg.disturbance.start = rd.number(e); }}},
            rd);
    } else if (sec.name == "claw") {
      apply(sec, {{"close_at", [&](const Entry& e) { cfg.claw_close_at = rd.number(e); }}}, rd);
    } else if (sec.name == "initial") {
      BodyState& b = cfg.initial;
      apply(sec,
            {{"p", [&](const Entry& e) { b.p = rd.vec3(e); }},
             {"eta_deg", [&](const Entry& e) { b.eta = deg3(rd.vec3(e)); }},
             {"v", [&](const Entry& e) { b.v = rd.vec3(e); }},
             {"omega", [&](const Entry& e) { b.omega = rd.vec3(e); }},
             {"q_mm", [&](const Entry& e) { b.q_arm = rd.vec2(e) * 1e-3; }}},
            rd);
    } else if (sec.name == "sim") {
      apply(sec,
            {{"duration", [&](const Entry& e) { cfg.sim.duration = rd.number(e); }},
             {"dt", [&](const Entry& e) { cfg.sim.dt = rd.number(e); }},
             {"decimation", [&](const Entry& e) { cfg.sim.decimation = rd.integer(e); }},
             {"seed",
              [&](const Entry& e) {
                const double s = rd.number(e);
                if (s < 0.0 || s != std::floor(s)) rd.fail(e, "seed must be a non-negative integer");
                cfg.sim.seed = static_cast<std::uint64_t>(s);
              }}},
            rd);
    } else if (sec.name == "baseline") {
      control::OmniSpec& o = cfg.baseline.omni;
      control::ElevatorSpec& el = cfg.baseline.elevator;
      apply(sec,
            {{"omni_b", [&](const Entry& e) { o.b = rd.number(e); }},
             {"omni_xv", [&](const Entry& e) { o.x_v = rd.number(e); }},
             {"omni_fmax_gf", [&](const Entry& e) { o.F_max = rd.number(e) * kGramForce; }},
             {"omni_roll", [&](const Entry& e) { o.roll = rd.pid(e); }},
             {"omni_pitch", [&](const Entry& e) { o.pitch = rd.pid(e); }},
             {"omni_yaw", [&](const Entry& e) { o.yaw = rd.pid(e); }},
             {"omni_altitude", [&](const Entry& e) { o.altitude = rd.pid(e); }},
             {"omni_forward_gf", [&](const Entry& e) { cfg.omni_forward = rd.number(e) * kGramForce; }},
             {"omni_z_ref", [&](const Entry& e) { cfg.omni_z_ref = rd.number(e); }},
             {"elevator_cm", [&](const Entry& e) { el.C_M_de = rd.number(e); }},
             {"elevator_max_deg", [&](const Entry& e) { el.max_deflection = deg2rad(rd.number(e)); }},
             {"elevator_pitch", [&](const Entry& e) { el.pitch = rd.pid(e); }}},
            rd);
    } else if (sec.name == "power") {
      power::PowerModel& p = cfg.power;
      apply(sec,
            {{"voltage", [&](const Entry& e) { p.voltage = rd.number(e); }},
             {"P_idle", [&](const Entry& e) { p.P_idle = rd.number(e); }},
             {"c_prop", [&](const Entry& e) { p.c_prop = rd.number(e); }},
             {"c_omni", [&](const Entry& e) { p.c_omni = rd.number(e); }},
             {"c_arm", [&](const Entry& e) { p.c_arm = rd.number(e); }}},
            rd);
    } else {
      throw ParseError(source, sec.line, "unknown section [" + sec.name + "]");
    }
  }

  const bool needs_elevator = cfg.mode == Mode::Elevator;
  cfg.baseline.kind = cfg.mode == Mode::Omni       ? control::BaselineActuator::Kind::Omni
                      : needs_elevator             ? control::BaselineActuator::Kind::Elevator
                                                   : control::BaselineActuator::Kind::None;

  std::vector<std::string> missing;
  if (!have_vehicle) missing.push_back("missing section [vehicle]");
  if (have_vehicle && !have_m0) missing.push_back("vehicle.m0 (stationary mass) is required");
  if (have_vehicle && !have_ma) missing.push_back("vehicle.ma (moving mass) is required");
  if (neutral) cfg.vehicle = with_neutral_buoyancy(cfg.vehicle);
  try {
    cfg.validate();
  } catch (const ValidationError& e) {
    missing.insert(missing.end(), e.problems().begin(), e.problems().end());
  }
  if (!missing.empty()) throw ValidationError(missing);
  return cfg;
}

ScenarioConfig load_scenario(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    if (const Preset* p = find_preset(path)) return parse_scenario(p->text, p->name);
    throw IoError("cannot open scenario file '" + path + "'");
  }
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_scenario(ss.str(), path);
}

namespace {

std::string num(double x) {
  char buf[64];
  const auto r = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, r.ptr);
}

std::string nums(std::initializer_list<double> xs) {
  std::string s;
  for (double x : xs) {
    if (!s.empty()) s += ' ';
    s += num(x);
  }
  return s;
}

std::string pid_str(const control::PidGains& g) { return nums({g.kp, g.ki, g.kd}); }

// Shortest text for a value stored in another unit that converts back to
// exactly the same double, so formatting and parsing round trip.
template <typename From>
std::string num_as(double x, double approx, From from) {
  char buf[64];
  for (int prec = 1; prec <= 17; ++prec) {
    std::snprintf(buf, sizeof buf, "%.*g", prec, approx);
    if (from(std::strtod(buf, nullptr)) == x) return buf;
  }
  return num(approx);
}

std::string words(std::initializer_list<std::string> xs) {
  std::string s;
  for (const auto& x : xs) {
    if (!s.empty()) s += ' ';
    s += x;
  }
  return s;
}

std::string gf(double newtons) {
  return num_as(newtons, newtons / kGramForce, [](double v) { return v * kGramForce; });
}
std::string mm(double metres) {
  return num_as(metres, metres * 1e3, [](double v) { return v * 1e-3; });
}
std::string deg(double rad) {
  return num_as(rad, rad2deg(rad), [](double v) { return deg2rad(v); });
}

}  // namespace

std::string format_scenario(const ScenarioConfig& c) {
  std::ostringstream o;
  const VehicleParams& v = c.vehicle;
  o << "[scenario]\nname = " << c.name << "\nmode = " << mode_name(c.mode)
    << "\ncontrol_yaw = " << (c.control_yaw ? "true" : "false")
    << "\naero = " << (c.aero_enabled ? "true" : "false") << "\n\n";
  o << "[vehicle]\nm0 = " << num(v.m0) << "\nma = " << num(v.ma)
    << "\nr0 = " << nums({v.r0.x(), v.r0.y(), v.r0.z()})
    << "\nJ = " << nums({v.J(0, 0), v.J(1, 1), v.J(2, 2), v.J(0, 1), v.J(0, 2), v.J(1, 2)})
    << "\nFb_gf = " << gf(v.Fb) << "\ng = " << num(v.g) << "\n\n";
  const arm::ArmSpec& a = v.arm;
  o << "[arm]\nL = " << num(a.L) << "\nd = " << num(a.d) << "\nh = " << num(a.h)
    << "\nr_reel = " << num(a.r_reel) << "\nteeth =";
  for (int t : a.teeth) o << ' ' << t;
  o << "\ndy_sign = " << num(a.dy_sign) << "\nmotor_limit = " << num(a.motor_limit) << "\n\n";
  const aero::AeroModel& m = v.aero;
  o << "[aero]\nscale = " << num(m.scale)
    << "\ndamping = " << nums({m.damping.x(), m.damping.y(), m.damping.z()})
    << "\nvalidity_deg = " << deg(m.validity) << "\nv_min = " << num(m.v_min) << '\n';
  for (int i = 0; i < 6; ++i) {
    const auto& r = m.rows[i];
    o << 'C' << aero::kCoefNames[i] << " = "
      << nums({r.c0, r.ca, double(r.deg_a), r.cb, double(r.deg_b)}) << '\n';
  }
  o << '\n';
  for (const auto& w : c.wind) {
    o << "[wind]\nkind = " << aero::kind_name(w.kind)
      << "\ndirection = " << nums({w.direction.x(), w.direction.y(), w.direction.z()})
      << "\nspeed = " << num(w.speed);
    if (w.kind == aero::WindField::Kind::GustPulse) {
      o << "\nstart = " << num(w.t_start) << "\nend = " << num(w.t_end);
    }
    if (w.kind == aero::WindField::Kind::FanJet) {
      o << "\napex = " << nums({w.apex.x(), w.apex.y(), w.apex.z()})
        << "\naxis = " << nums({w.axis.x(), w.axis.y(), w.axis.z()})
        << "\nhalf_angle_deg = " << deg(w.half_angle) << "\nreach = " << num(w.reach);
    }
    o << "\n\n";
  }
  const control::ControlGains& g = c.gains;
  o << "[controller]\nroll = " << pid_str(g.roll) << "\npitch = " << pid_str(g.pitch)
    << "\nyaw = " << pid_str(g.yaw) << "\ninner_x = " << pid_str(g.inner_x)
    << "\ninner_y = " << pid_str(g.inner_y) << "\npitch_sense = " << num(g.pitch_sense)
    << "\nroll_sense = " << num(g.roll_sense) << "\nyaw_sense = " << num(g.yaw_sense)
    << "\nyaw_roll_limit_deg = " << deg(g.yaw_roll_limit)
    << "\nlambda = " << num(g.lambda) << "\nepsilon = " << num(g.epsilon)
    << "\nrho_theta = " << num(g.rho_theta) << "\nD_theta = " << num(g.D_theta)
    << "\nthrust_gf = " << gf(c.thrust) << "\n\n";
  if (!c.reference.empty()) {
    o << "[reference]\n";
    for (const auto& r : c.reference) {
      o << "at = " << words({num(r.t), deg(r.eta.x()), deg(r.eta.y()), deg(r.eta.z())}) << '\n';
    }
    o << '\n';
  }
  const Script& s = c.script;
  if (s.kind != Script::Kind::None) {
    o << "[script]\nkind = ";
    switch (s.kind) {
      case Script::Kind::Table: o << "table\n"; break;
      case Script::Kind::AlternatingSine: o << "alternating-sine\n"; break;
      case Script::Kind::Triangle: o << "triangle\n"; break;
      case Script::Kind::None: break;
    }
    if (s.kind == Script::Kind::Table) {
      for (const auto& r : s.rows) {
        o << "at = " << words({num(r.t), mm(r.delta.x()), mm(r.delta.y()), gf(r.F)});
        if (r.de != 0.0) o << ' ' << deg(r.de);
        o << '\n';
      }
    } else {
      o << "period = " << num(s.period) << "\nthrust_gf = " << gf(s.thrust) << '\n';
      if (s.kind == Script::Kind::AlternatingSine) o << "amplitude_mm = " << mm(s.amplitude) << '\n';
      if (s.kind == Script::Kind::Triangle) {
        o << "vertices_mm =";
        for (const auto& p : s.vertices) o << ' ' << mm(p.x()) << ' ' << mm(p.y());
        o << '\n';
      }
    }
    o << '\n';
  }
  if (c.disturbance.amplitude != 0.0) {
    o << "[disturbance]\namplitude = " << num(c.disturbance.amplitude)
      << "\nperiod = " << num(c.disturbance.period) << "\nstart = " << num(c.disturbance.start)
      << "\n\n";
  }
  if (c.claw_close_at >= 0.0) o << "[claw]\nclose_at = " << num(c.claw_close_at) << "\n\n";
  const BodyState& b = c.initial;
  o << "[initial]\np = " << nums({b.p.x(), b.p.y(), b.p.z()})
    << "\neta_deg = " << words({deg(b.eta.x()), deg(b.eta.y()), deg(b.eta.z())})
    << "\nv = " << nums({b.v.x(), b.v.y(), b.v.z()})
    << "\nomega = " << nums({b.omega.x(), b.omega.y(), b.omega.z()})
    << "\nq_mm = " << words({mm(b.q_arm.x()), mm(b.q_arm.y())}) << "\n\n";
  const control::OmniSpec& om = c.baseline.omni;
  const control::ElevatorSpec& el = c.baseline.elevator;
  o << "[baseline]\nomni_b = " << num(om.b) << "\nomni_xv = " << num(om.x_v)
    << "\nomni_fmax_gf = " << gf(om.F_max) << "\nomni_roll = " << pid_str(om.roll)
    << "\nomni_pitch = " << pid_str(om.pitch) << "\nomni_yaw = " << pid_str(om.yaw)
    << "\nomni_altitude = " << pid_str(om.altitude)
    << "\nomni_forward_gf = " << gf(c.omni_forward)
    << "\nomni_z_ref = " << num(c.omni_z_ref) << "\nelevator_cm = " << num(el.C_M_de)
    << "\nelevator_max_deg = " << deg(el.max_deflection)
    << "\nelevator_pitch = " << pid_str(el.pitch) << "\n\n";
  const power::PowerModel& p = c.power;
  o << "[power]\nvoltage = " << num(p.voltage) << "\nP_idle = " << num(p.P_idle)
    << "\nc_prop = " << num(p.c_prop) << "\nc_omni = " << num(p.c_omni)
    << "\nc_arm = " << num(p.c_arm) << "\n\n";
  o << "[sim]\nduration = " << num(c.sim.duration) << "\ndt = " << num(c.sim.dt)
    << "\ndecimation = " << c.sim.decimation << "\nseed = " << c.sim.seed << '\n';
  return o.str();
}

}  // namespace mmb::harness
