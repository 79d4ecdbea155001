#include <benchmark/benchmark.h>

#include "mmblimp/config.hpp"
#include "mmblimp/continuum_arm.hpp"
#include "mmblimp/dynamics.hpp"
#include "mmblimp/scenario.hpp"

using namespace mmb;

namespace {

BodyState cruise_state() {
  BodyState s;
  s.eta = Vec3(0.05, 0.1, 0.3);
  s.v = Vec3(0.5, 0.02, 0.01);
  s.omega = Vec3(0.01, -0.02, 0.05);
  s.q_arm = Vec2(0.01, -0.02);
  return s;
}

void BM_Derivative(benchmark::State& st) {
  const VehicleParams p;
  const Environment env;
  const BodyState s = cruise_state();
  ActuationCommand cmd;
  cmd.F = 8.0 * kGramForce;
  for (auto _ : st) benchmark::DoNotOptimize(dynamics::derivative(s, cmd, p, env));
}
BENCHMARK(BM_Derivative);

void BM_Rk4Step(benchmark::State& st) {
  const VehicleParams p;
  const Environment env;
  BodyState s = cruise_state();
  ActuationCommand cmd;
  cmd.F = 8.0 * kGramForce;
  double t = 0.0;
  for (auto _ : st) {
    s = dynamics::step(s, cmd, p, env, 1e-3, t);
    t += 1e-3;
    benchmark::DoNotOptimize(s);
  }
}
BENCHMARK(BM_Rk4Step);

void BM_TipJacobian(benchmark::State& st) {
  const Vec2 q(0.012, -0.03);
  for (auto _ : st) benchmark::DoNotOptimize(arm::tip_jacobian(q, 0.3, 0.04));
}
BENCHMARK(BM_TipJacobian);

void BM_Scenario10s(benchmark::State& st) {
  harness::ScenarioConfig c = harness::load_scenario("fig15-yaw");
  c.sim.duration = 10.0;
  for (auto _ : st) benchmark::DoNotOptimize(harness::run_scenario(c));
}
BENCHMARK(BM_Scenario10s)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
