#include "mmblimp/log_io.hpp"

#include <charconv>
#include <fstream>
#include <sstream>

#include "json.hpp"
#include "mmblimp/errors.hpp"

namespace mmb::harness {
namespace {

using nlohmann::json;

constexpr const char* kStructTag = "mmblimp-log";
constexpr int kStructVersion = 1;

const std::vector<std::string>& flag_columns() {
  static const std::vector<std::string> cols{"saturated", "validity", "stagnation", "claw_closed",
                                             "perched"};
  return cols;
}

std::vector<double> data_row(const LogRecord& r) {
  const BodyState& s = r.state;
  return {r.t,
          s.p.x(), s.p.y(), s.p.z(),
          s.eta.x(), s.eta.y(), s.eta.z(),
          s.v.x(), s.v.y(), s.v.z(),
          s.omega.x(), s.omega.y(), s.omega.z(),
          s.q_arm.x(), s.q_arm.y(),
          r.F,
          r.aero_force.x(), r.aero_force.y(), r.aero_force.z(),
          r.aero_moment.x(), r.aero_moment.y(), r.aero_moment.z(),
          r.V_lyap, r.power, r.energy};
}

std::vector<int> flag_row(const LogFlags& f) {
  return {f.saturated, f.validity, f.stagnation, f.claw_closed, f.perched};
}

LogRecord from_rows(const std::vector<double>& d, const std::vector<int>& f) {
  LogRecord r;
  BodyState& s = r.state;
  r.t = d[0];
  s.p = Vec3(d[1], d[2], d[3]);
  s.eta = Vec3(d[4], d[5], d[6]);
  s.v = Vec3(d[7], d[8], d[9]);
  s.omega = Vec3(d[10], d[11], d[12]);
  s.q_arm = Vec2(d[13], d[14]);
  r.F = d[15];
  r.aero_force = Vec3(d[16], d[17], d[18]);
  r.aero_moment = Vec3(d[19], d[20], d[21]);
  r.V_lyap = d[22];
  r.power = d[23];
  r.energy = d[24];
  r.flags = {f[0] != 0, f[1] != 0, f[2] != 0, f[3] != 0, f[4] != 0};
  return r;
}

std::string num(double x) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, res.ptr);
}

}  // namespace

const std::vector<std::string>& csv_columns() {
  static const std::vector<std::string> cols = [] {
    std::vector<std::string> c{"t",       "x",       "y",       "z",       "phi",
                               "theta",   "psi",     "vx",      "vy",      "vz",
                               "p",       "q",       "r",       "delta_x", "delta_y",
                               "F",       "Fx_aero", "Fy_aero", "Fz_aero", "Mx_aero",
                               "My_aero", "Mz_aero", "V_lyap",  "power",   "energy"};
    c.insert(c.end(), flag_columns().begin(), flag_columns().end());
    return c;
  }();
  return cols;
}

std::string to_csv(const TrajectoryLog& log) {
  std::string out;
  const auto& cols = csv_columns();
  for (std::size_t i = 0; i < cols.size(); ++i) {
    if (i) out += ',';
    out += cols[i];
  }
  out += '\n';
  for (const auto& r : log.records) {
    const auto d = data_row(r);
    for (std::size_t i = 0; i < d.size(); ++i) {
      if (i) out += ',';
      out += num(d[i]);
    }
    for (int f : flag_row(r.flags)) {
      out += ',';
      out += f ? '1' : '0';
    }
    out += '\n';
  }
  return out;
}

TrajectoryLog from_csv(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  if (!std::getline(in, line)) throw IoError("csv log: missing header");
  std::vector<std::string> header;
  {
    std::istringstream h(line);
    std::string col;
    while (std::getline(h, col, ',')) header.push_back(col);
  }
  if (header != csv_columns()) throw IoError("csv log: unexpected header");
  TrajectoryLog log;
  int lineno = 1;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    std::vector<double> vals;
    std::istringstream row(line);
    std::string cell;
    while (std::getline(row, cell, ',')) {
      double x = 0.0;
      const auto res = std::from_chars(cell.data(), cell.data() + cell.size(), x);
      if (res.ec != std::errc() || res.ptr != cell.data() + cell.size()) {
        throw IoError("csv log: bad number on line " + std::to_string(lineno));
      }
      vals.push_back(x);
    }
    if (vals.size() != header.size()) {
      throw IoError("csv log: wrong column count on line " + std::to_string(lineno));
    }
    const std::vector<double> d(vals.begin(), vals.begin() + kCsvDataColumns);
    std::vector<int> f;
    for (std::size_t i = kCsvDataColumns; i < vals.size(); ++i) f.push_back(vals[i] != 0.0);
    log.records.push_back(from_rows(d, f));
  }
  if (log.records.size() > 1) log.dt = log.records[1].t - log.records[0].t;
  return log;
}

std::string to_struct(const TrajectoryLog& log) {
  json j;
  j["format"] = kStructTag;
  j["version"] = kStructVersion;
  j["name"] = log.name;
  j["dt"] = log.dt;
  std::vector<std::string> cols(csv_columns().begin(), csv_columns().begin() + kCsvDataColumns);
  cols.insert(cols.end(), {"thrust_effort", "arm_duty", "phi_ref", "theta_ref", "psi_ref"});
  j["columns"] = cols;
  j["flag_columns"] = flag_columns();
  json rows = json::array();
  json flags = json::array();
  for (const auto& r : log.records) {
    auto d = data_row(r);
    d.insert(d.end(), {r.thrust_effort, r.arm_duty, r.eta_ref.x(), r.eta_ref.y(), r.eta_ref.z()});
    rows.push_back(d);
    flags.push_back(flag_row(r.flags));
  }
  j["records"] = std::move(rows);
  j["flags"] = std::move(flags);
  return j.dump(1) + "\n";
}

TrajectoryLog from_struct(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception& e) {
    throw IoError(std::string("structured log: ") + e.what());
  }
  if (j.value("format", "") != kStructTag) throw IoError("structured log: wrong format tag");
  if (j.value("version", 0) != kStructVersion) throw IoError("structured log: unsupported version");
  TrajectoryLog log;
  try {
    log.name = j.at("name").get<std::string>();
    log.dt = j.at("dt").get<double>();
    const auto& rows = j.at("records");
    const auto& flags = j.at("flags");
    if (rows.size() != flags.size()) throw IoError("structured log: record/flag count mismatch");
    for (std::size_t i = 0; i < rows.size(); ++i) {
      const auto d = rows[i].get<std::vector<double>>();
      const auto f = flags[i].get<std::vector<int>>();
      if (d.size() != kCsvDataColumns + 5 || f.size() != flag_columns().size()) {
        throw IoError("structured log: bad record width at index " + std::to_string(i));
      }
      LogRecord r = from_rows(d, f);
      r.thrust_effort = d[25];
      r.arm_duty = d[26];
      r.eta_ref = Vec3(d[27], d[28], d[29]);
      log.records.push_back(r);
    }
  } catch (const json::exception& e) {
    throw IoError(std::string("structured log: ") + e.what());
  }
  return log;
}

void export_log(const TrajectoryLog& log, LogFormat format, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write log to '" + path + "'");
  out << (format == LogFormat::Csv ? to_csv(log) : to_struct(log));
  if (!out) throw IoError("error while writing '" + path + "'");
}

TrajectoryLog import_log(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot read log '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  const std::string text = ss.str();
  const auto first = text.find_first_not_of(" \t\r\n");
  if (first != std::string::npos && text[first] == '{') return from_struct(text);
  return from_csv(text);
}

}  // namespace mmb::harness
