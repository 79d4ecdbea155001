#include <gtest/gtest.h>

#include "mmblimp/config.hpp"
#include "mmblimp/errors.hpp"
#include "mmblimp/presets.hpp"

using namespace mmb;
using namespace mmb::harness;

namespace {

const char* kMinimal = R"(# comment
[scenario]
name = t
mode = closed-loop

[vehicle]
m0 = 0.1
ma = 0.09

[reference]
at = 0 0 10 0
at = 5 0 -5 30

[wind]
kind = constant
direction = 0 1 0
speed = 1

[wind]
kind = gust-pulse
direction = 1 0 0
speed = 2
start = 3
end = 4

[sim]
duration = 6
)";

int parse_line(const std::string& text) {
  try {
    parse_scenario(text, "x.cfg");
  } catch (const ParseError& e) {
    EXPECT_EQ(e.source(), "x.cfg");
    return e.line();
  }
  return -1;
}

}  // namespace

TEST(Config, ParsesMinimalFile) {
  const ScenarioConfig c = parse_scenario(kMinimal);
  EXPECT_EQ(c.name, "t");
  EXPECT_EQ(c.mode, Mode::ClosedLoop);
  EXPECT_DOUBLE_EQ(c.vehicle.m0, 0.1);
  ASSERT_EQ(c.reference.size(), 2u);
  EXPECT_NEAR(c.reference_at(1.0).y(), deg2rad(10.0), 1e-15);
  EXPECT_NEAR(c.reference_at(6.0).z(), deg2rad(30.0), 1e-15);
  ASSERT_EQ(c.wind.size(), 2u);
  EXPECT_EQ(c.wind[1].kind, aero::WindField::Kind::GustPulse);
  EXPECT_DOUBLE_EQ(c.sim.duration, 6.0);
}

TEST(Config, FormatRoundTrips) {
  for (const Preset& p : presets()) {
    const ScenarioConfig a = parse_scenario(p.text, p.name);
    const std::string once = format_scenario(a);
    const ScenarioConfig b = parse_scenario(once, "formatted");
    EXPECT_EQ(format_scenario(b), once) << p.name;
    EXPECT_EQ(b.vehicle.Fb, a.vehicle.Fb) << p.name;
    EXPECT_EQ(b.script.rows.size(), a.script.rows.size()) << p.name;
  }
}

TEST(Config, ParseErrorsCarryLineNumbers) {
  EXPECT_EQ(parse_line("[scenario]\nname = a\nbogus = 1\n"), 3);
  EXPECT_EQ(parse_line("[vehicle]\nm0 = 1\nma = 1\n\n[nope]\n"), 5);
  EXPECT_EQ(parse_line("[vehicle]\nm0 = 1\nm0 = 2\n"), 3);
  EXPECT_EQ(parse_line("[vehicle]\nm0 = abc\n"), 2);
  EXPECT_EQ(parse_line("m0 = 1\n"), 1);
  EXPECT_EQ(parse_line("[vehicle]\nm0 = 0.1\nma = 0.1\n[vehicle]\n"), 4);
  EXPECT_EQ(parse_line("[scenario]\nmode = sideways\n"), 2);
}

TEST(Config, MassesAreRequired) {
  EXPECT_THROW(parse_scenario("[scenario]\nname = a\n"), ValidationError);
  EXPECT_THROW(parse_scenario("[vehicle]\nm0 = 0.1\n"), ValidationError);
}

TEST(Config, ValidationCollectsEveryProblem) {
  ScenarioConfig c = parse_scenario(kMinimal);
  c.sim.dt = -1.0;
  c.vehicle.g = 0.0;
  try {
    c.validate();
    FAIL();
  } catch (const ValidationError& e) {
    EXPECT_GE(e.problems().size(), 2u);
  }
}

TEST(Config, Presets) {
  EXPECT_GE(presets().size(), 10u);
  EXPECT_EQ(find_preset("missing"), nullptr);
  const Preset* p = find_preset("fig14-spiral");
  ASSERT_NE(p, nullptr);
  const ScenarioConfig c = load_scenario("fig14-spiral");
  EXPECT_EQ(c.script.kind, Script::Kind::Triangle);
  EXPECT_EQ(c.script.vertices.size(), 3u);
  EXPECT_THROW(load_scenario("/nonexistent/file.cfg"), IoError);
}

TEST(Config, ScriptSampling) {
  Script s;
  s.kind = Script::Kind::Table;
  s.rows = {{0.0, Vec2(0.01, 0.0), 0.1, 0.0}, {2.0, Vec2(0.0, -0.02), 0.0, 0.3}};
  EXPECT_EQ(s.at(1.9).delta, Vec2(0.01, 0.0));
  EXPECT_EQ(s.at(2.0).delta, Vec2(0.0, -0.02));
  EXPECT_DOUBLE_EQ(s.at(5.0).de, 0.3);
}
