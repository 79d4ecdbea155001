#include <gtest/gtest.h>

#include <cstdio>
#include <filesystem>
#include <sstream>

#include "mmblimp/errors.hpp"
#include "mmblimp/log_io.hpp"

using namespace mmb;
using namespace mmb::harness;

namespace {

TrajectoryLog sample_log() {
  TrajectoryLog log;
  log.name = "sample";
  log.dt = 0.01;
  for (int i = 0; i < 20; ++i) {
    LogRecord r;
    r.t = 0.01 * i;
    r.state.p = Vec3(0.1 * i, -0.3 / (i + 1), 1.0 / 3.0);
    r.state.eta = Vec3(0.01 * i, -0.02, 0.7);
    r.state.v = Vec3(0.5, 1e-17, -2.5e-3);
    r.state.omega = Vec3(0.0, 0.1, -0.2);
    r.state.q_arm = Vec2(0.02, -0.01 * i);
    r.F = 0.0785;
    r.aero_force = Vec3(-0.01, 0.002, 0.0);
    r.aero_moment = Vec3(0.0, 1e-4, -3e-5);
    r.V_lyap = 1e-3 * i;
    r.power = 1.7;
    r.energy = 1.7 * r.t;
    r.flags.saturated = i % 3 == 0;
    r.flags.validity = i % 5 == 0;
    r.flags.perched = i == 19;
    r.thrust_effort = 0.022;
    r.arm_duty = 0.1 * (i % 4);
    r.eta_ref = Vec3(0.0, 0.17, 0.0);
    log.records.push_back(r);
  }
  return log;
}

void expect_same(const LogRecord& a, const LogRecord& b, bool full) {
  EXPECT_EQ(a.t, b.t);
  EXPECT_EQ(a.state.p, b.state.p);
  EXPECT_EQ(a.state.eta, b.state.eta);
  EXPECT_EQ(a.state.v, b.state.v);
  EXPECT_EQ(a.state.omega, b.state.omega);
  EXPECT_EQ(a.state.q_arm, b.state.q_arm);
  EXPECT_EQ(a.F, b.F);
  EXPECT_EQ(a.aero_force, b.aero_force);
  EXPECT_EQ(a.aero_moment, b.aero_moment);
  EXPECT_EQ(a.V_lyap, b.V_lyap);
  EXPECT_EQ(a.power, b.power);
  EXPECT_EQ(a.energy, b.energy);
  EXPECT_EQ(a.flags.saturated, b.flags.saturated);
  EXPECT_EQ(a.flags.validity, b.flags.validity);
  EXPECT_EQ(a.flags.perched, b.flags.perched);
  if (full) {
    EXPECT_EQ(a.thrust_effort, b.thrust_effort);
    EXPECT_EQ(a.arm_duty, b.arm_duty);
    EXPECT_EQ(a.eta_ref, b.eta_ref);
  }
}

std::string temp_path(const std::string& name) {
  return (std::filesystem::temp_directory_path() / ("mmblimp_test_" + name)).string();
}

}  // namespace

TEST(LogIo, CsvHeader) {
  const auto& cols = csv_columns();
  EXPECT_EQ(cols.size(), kCsvDataColumns + 5);
  EXPECT_EQ(cols.front(), "t");
  EXPECT_EQ(cols[kCsvDataColumns - 1], "energy");
  const std::string csv = to_csv(sample_log());
  const std::string header = csv.substr(0, csv.find('\n'));
  EXPECT_EQ(std::count(header.begin(), header.end(), ','), static_cast<long>(cols.size() - 1));
}

TEST(LogIo, CsvRoundTripIsExact) {
  const TrajectoryLog a = sample_log();
  const TrajectoryLog b = from_csv(to_csv(a));
  ASSERT_EQ(b.size(), a.size());
  for (std::size_t i = 0; i < a.size(); ++i) expect_same(a.records[i], b.records[i], false);
}

TEST(LogIo, StructRoundTripIsExact) {
  const TrajectoryLog a = sample_log();
  const TrajectoryLog b = from_struct(to_struct(a));
  EXPECT_EQ(b.name, a.name);
  EXPECT_EQ(b.dt, a.dt);
  ASSERT_EQ(b.size(), a.size());
  for (std::size_t i = 0; i < a.size(); ++i) expect_same(a.records[i], b.records[i], true);
}

TEST(LogIo, FilesDetectTheirFormat) {
  const TrajectoryLog a = sample_log();
  const std::string pc = temp_path("a.csv"), ps = temp_path("a.json");
  export_log(a, LogFormat::Csv, pc);
  export_log(a, LogFormat::Struct, ps);
  const TrajectoryLog bc = import_log(pc), bs = import_log(ps);
  ASSERT_EQ(bc.size(), a.size());
  ASSERT_EQ(bs.size(), a.size());
  expect_same(a.records[7], bc.records[7], false);
  expect_same(a.records[7], bs.records[7], true);
  std::remove(pc.c_str());
  std::remove(ps.c_str());
}

TEST(LogIo, Errors) {
  EXPECT_THROW(import_log("/nonexistent/log.csv"), IoError);
  EXPECT_THROW(export_log(sample_log(), LogFormat::Csv, "/nonexistent/dir/log.csv"), IoError);
  EXPECT_ANY_THROW(from_csv("t,x\n1,2\n"));
  EXPECT_ANY_THROW(from_struct("{\"format\": \"other\"}"));
}
