// mmblimp: command-line front end for the blimp simulator.

#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "mmblimp/analysis.hpp"
#include "mmblimp/config.hpp"
#include "mmblimp/control.hpp"
#include "mmblimp/errors.hpp"
#include "mmblimp/log_io.hpp"
#include "mmblimp/presets.hpp"
#include "mmblimp/scenario.hpp"

namespace {

using namespace mmb;

constexpr int kExitValidation = 2;
constexpr int kExitRuntime = 3;

void print_metrics(std::ostream& os, const analysis::MetricsReport& m) {
  os << std::fixed << std::setprecision(4)
     << "duration_s          " << m.duration << '\n'
     << "path_length_m       " << m.path_length << '\n'
     << "mean_speed_mps      " << m.mean_speed << '\n'
     << "horiz_speed_std     " << m.horizontal_speed_std << '\n'
     << "vert_speed_std      " << m.vertical_speed_std << '\n'
     << "curvature_mean      " << m.curvature_mean << '\n'
     << "curvature_std       " << m.curvature_std << '\n'
     << "power_rate_mAh_min  " << m.power_rate << '\n'
     << "specific_energy     " << m.specific_energy << " mWh/m\n";
}

struct AttitudeErrors {
  std::vector<double> roll, pitch, yaw;
};

AttitudeErrors attitude_errors(const TrajectoryLog& log) {
  AttitudeErrors e;
  for (const auto& r : log.records) {
    e.roll.push_back(r.state.eta.x() - r.eta_ref.x());
    e.pitch.push_back(r.state.eta.y() - r.eta_ref.y());
    e.yaw.push_back(wrap_pi(r.state.eta.z() - r.eta_ref.z()));
  }
  return e;
}

int cmd_simulate(const std::string& config, const std::string& out, const std::string& format) {
  const harness::ScenarioConfig cfg = harness::load_scenario(config);
  const TrajectoryLog log = harness::run_scenario(cfg);
  const auto fmt = format == "struct" ? harness::LogFormat::Struct : harness::LogFormat::Csv;
  if (out.empty()) {
    std::cout << (fmt == harness::LogFormat::Csv ? harness::to_csv(log) : harness::to_struct(log));
  } else {
    harness::export_log(log, fmt, out);
    std::cerr << "wrote " << log.size() << " records to " << out << '\n';
  }
  return 0;
}

int cmd_preset(const std::string& name, bool list) {
  if (list || name.empty()) {
    for (const auto& p : harness::presets()) {
      std::cout << std::left << std::setw(22) << p.name << p.summary << '\n';
    }
    return 0;
  }
  const harness::Preset* p = harness::find_preset(name);
  if (!p) {
    std::cerr << "unknown preset '" << name << "' (try: mmblimp preset --list)\n";
    return kExitValidation;
  }
  std::cout << p->text;
  return 0;
}

int cmd_gains(const std::string& config) {
  const harness::ScenarioConfig cfg = harness::load_scenario(config);
  const control::GainReport r = control::gain_condition(cfg.gains, cfg.vehicle);
  std::cout << std::setprecision(6)
            << "envelope max|dx*ddx|   " << r.envelope << " m^2/s\n"
            << "lambda threshold       " << r.lambda_threshold << '\n'
            << "lambda margin          " << r.lambda_margin << '\n'
            << "damping margin         " << r.damping_margin << '\n'
            << "bound a                " << r.a << '\n'
            << "bound b                " << r.b << '\n'
            << "uub radius             " << r.uub_radius << " rad ("
            << rad2deg(r.uub_radius) << " deg)\n"
            << "condition              " << (r.satisfied() ? "satisfied" : "VIOLATED") << '\n';
  return r.satisfied() ? 0 : kExitValidation;
}

int cmd_arm_study(const analysis::ArmStudyParams& p) {
  p.validate();
  const analysis::LinearGains k = analysis::linear_gains(p);
  const double th = deg2rad(60.0);
  std::cout << std::fixed << std::setprecision(4)
            << "L=" << p.L << " m  h=" << p.h << " m  m_a=" << p.m_a << " kg  m_a'=" << p.m_a2
            << " kg\n"
            << "K_cont               " << k.K_cont << '\n'
            << "K_rig                " << k.K_rig << '\n'
            << "ratio K_rig/K_cont   " << 100.0 * k.ratio() << " %\n"
            << "improvement          " << 100.0 * k.improvement() << " %\n"
            << "|phi| at 60 deg, linear    cont " << std::setprecision(2)
            << rad2deg(k.K_cont * th) << "  rig " << rad2deg(k.K_rig * th) << " deg\n"
            << "|phi| at 60 deg, exact     cont "
            << std::abs(rad2deg(analysis::equilibrium_exact(th, p, analysis::ArmKind::Continuum)))
            << "  rig "
            << std::abs(rad2deg(analysis::equilibrium_exact(th, p, analysis::ArmKind::Rigid)))
            << " deg\n\n";
  std::cout << " theta   phi_cont  lin_cont   phi_rig   lin_rig\n";
  const auto deg = [](double rad) { return rad2deg(rad) + 0.0; };  // no "-0.00" at the origin
  for (int d = -60; d <= 60; d += 10) {
    const double t = deg2rad(d);
    std::cout << std::setw(6) << d << std::setw(10)
              << deg(analysis::equilibrium_exact(t, p, analysis::ArmKind::Continuum))
              << std::setw(10) << deg(-k.K_cont * t) << std::setw(10)
              << deg(analysis::equilibrium_exact(t, p, analysis::ArmKind::Rigid))
              << std::setw(10) << deg(-k.K_rig * t) << '\n';
  }
  const auto s = analysis::approximation_error_sweep(p, 241);
  const auto s10 = analysis::approximation_error_sweep(p, 41, deg2rad(10.0));
  std::cout << "\nmax linearization error over +-60 deg: cont " << rad2deg(s.max_err_continuum)
            << "  rig " << rad2deg(s.max_err_rigid) << " deg\n"
            << "max linearization error over +-10 deg: cont " << rad2deg(s10.max_err_continuum)
            << "  rig " << rad2deg(s10.max_err_rigid) << " deg\n";
  return 0;
}

int cmd_metrics(const std::string& path) {
  const TrajectoryLog log = harness::import_log(path);
  print_metrics(std::cout, analysis::trajectory_metrics(log));
  return 0;
}

int cmd_compare(const std::string& a, const std::string& b) {
  const TrajectoryLog la = harness::import_log(a);
  const TrajectoryLog lb = harness::import_log(b);
  const auto ea = attitude_errors(la);
  const auto eb = attitude_errors(lb);
  auto last = [](const std::vector<double>& e, double dt) {
    return analysis::cum_rmse(e, {0.0}, dt).back();
  };
  std::cout << std::fixed << std::setprecision(4) << "CumRMSE (rad s)       A          B\n"
            << "roll           " << std::setw(10) << last(ea.roll, la.dt) << std::setw(11)
            << last(eb.roll, lb.dt) << '\n'
            << "pitch          " << std::setw(10) << last(ea.pitch, la.dt) << std::setw(11)
            << last(eb.pitch, lb.dt) << '\n'
            << "yaw            " << std::setw(10) << last(ea.yaw, la.dt) << std::setw(11)
            << last(eb.yaw, lb.dt) << "\n\n";
  const auto ma = analysis::trajectory_metrics(la);
  const auto mb = analysis::trajectory_metrics(lb);
  std::cout << "metric               A          B      B-A\n";
  auto row = [](const char* name, double x, double y) {
    std::cout << std::left << std::setw(16) << name << std::right << std::setw(11) << x
              << std::setw(11) << y << std::setw(10) << y - x << '\n';
  };
  row("duration_s", ma.duration, mb.duration);
  row("path_length_m", ma.path_length, mb.path_length);
  row("curvature_std", ma.curvature_std, mb.curvature_std);
  row("power_mAh_min", ma.power_rate, mb.power_rate);
  row("energy_mWh_m", ma.specific_energy, mb.specific_energy);
  return 0;
}

int cmd_calibrate(const std::string& q_path, const std::string& omni_path, double q_target,
                  double omni_target) {
  const harness::ScenarioConfig q = harness::load_scenario(q_path);
  const harness::ScenarioConfig o = harness::load_scenario(omni_path);
  const power::ModeSample sq = harness::measure_mode(q);
  const power::ModeSample so = harness::measure_mode(o);
  const power::PowerModel pm = power::calibrate(q.power, sq, q_target, so, omni_target);
  std::cout << std::fixed << std::setprecision(6)
            << "mean effort                     prop        omni         arm\n"
            << "  " << std::left << std::setw(22) << q.name << std::right << std::setw(12)
            << sq.prop_effort << std::setw(12) << sq.omni_effort << std::setw(12) << sq.arm_duty
            << "\n  " << std::left << std::setw(22) << o.name << std::right << std::setw(12)
            << so.prop_effort << std::setw(12) << so.omni_effort << std::setw(12) << so.arm_duty
            << std::defaultfloat << std::setprecision(10) << "\n\n[power]\nvoltage = " << pm.voltage << "\nP_idle = " << pm.P_idle
            << "\nc_prop = " << pm.c_prop << "\nc_omni = " << pm.c_omni << "\nc_arm = " << pm.c_arm
            << '\n';
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Simulator for a moving-mass gliding blimp with a continuum arm"};
  app.require_subcommand(1);

  std::string config, out, format = "csv", name, log_a, log_b;
  bool list = false;
  analysis::ArmStudyParams study;

  auto* sim = app.add_subcommand("simulate", "run a scenario file or preset and export the log");
  sim->add_option("config", config, "scenario file or preset name")->required();
  sim->add_option("--out", out, "output path (default: stdout)");
  sim->add_option("--format", format, "csv or struct")->check(CLI::IsMember({"csv", "struct"}));

  auto* pre = app.add_subcommand("preset", "print a built-in scenario");
  pre->add_option("name", name, "preset name");
  pre->add_flag("--list", list, "list presets");

  auto* gains = app.add_subcommand("gains-check", "evaluate the pitch gain condition");
  gains->add_option("config", config, "scenario file or preset name")->required();

  auto* arm = app.add_subcommand("arm-study", "continuum vs rigid moving-mass gain study");
  arm->set_help_flag("--help", "print this help");  // frees -h for the mount depth
  arm->add_option("--L", study.L, "arm length, m");
  arm->add_option("--h", study.h, "mount depth, m");
  arm->add_option("--ma", study.m_a, "tip mass, kg");
  arm->add_option("--ma2", study.m_a2, "rigid-arm joint actuator mass, kg");

  auto* met = app.add_subcommand("metrics", "trajectory and energy metrics of a log");
  met->add_option("log", log_a, "log file (csv or struct)")->required();

  auto* cmp = app.add_subcommand("compare", "attitude CumRMSE and metric deltas of two logs");
  cmp->add_option("logA", log_a)->required();
  cmp->add_option("logB", log_b)->required();

  std::string q_mode, omni_mode;
  double q_target = 5.6, omni_target = 12.5;
  auto* cal = app.add_subcommand("calibrate-power", "fit the thrust power coefficients");
  cal->add_option("q_mode", q_mode, "moving-mass scenario")->required();
  cal->add_option("omni_mode", omni_mode, "thruster baseline scenario")->required();
  cal->add_option("--q-target", q_target, "moving-mass draw, mAh/min");
  cal->add_option("--omni-target", omni_target, "baseline draw, mAh/min");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitValidation;
  }

  try {
    if (*sim) return cmd_simulate(config, out, format);
    if (*pre) return cmd_preset(name, list);
    if (*gains) return cmd_gains(config);
    if (*arm) return cmd_arm_study(study);
    if (*met) return cmd_metrics(log_a);
    if (*cmp) return cmd_compare(log_a, log_b);
    if (*cal) return cmd_calibrate(q_mode, omni_mode, q_target, omni_target);
  } catch (const ParseError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitValidation;
  } catch (const ValidationError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitValidation;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitRuntime;
  }
  return 0;
}
