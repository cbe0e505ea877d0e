// Copyright 2026 The aebsim Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// aebsim: command-line front end for the braking, lateral, detection and
// stability experiments. Every subcommand writes its outputs plus a manifest
// into a per-run directory.
//
// Exit codes: 0 success, 1 usage / config error, 2 simulation did not converge.

#include <chrono>
#include <cstdint>
#include <filesystem>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <fmt/format.h>

#include "aeb/analysis.hpp"
#include "aeb/batch.hpp"
#include "aeb/config.hpp"
#include "aeb/errors.hpp"
#include "aeb/io.hpp"
#include "aeb/scenarios.hpp"

namespace fs = std::filesystem;
using aeb::RunConfig;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitNotConverged = 2;

struct GlobalOptions {
  std::optional<std::string> config_path;
  std::optional<std::string> out_dir;
  std::optional<std::uint64_t> seed;
  bool defaults = false;
};

/// Flag overrides. Unset optionals leave the file / default value alone.
struct BrakeOverrides {
  std::optional<std::string> label;
  std::optional<double> initial_speed;
  std::optional<double> ped_distance;
  std::optional<double> offset;
  std::optional<double> dt;
  std::optional<double> horizon;
  std::optional<double> f_brake_max;
  std::optional<double> mass;
  std::optional<double> smoothing_alpha;
  std::optional<int> decimation;
  std::vector<double> gains;
  bool noise = false;
  bool no_noise = false;
  bool no_drag = false;
  int runs = 1;
};

struct SweepOverrides {
  std::vector<double> kp;
  std::optional<double> ped_distance;
};

struct LateralOverrides {
  std::optional<double> step;
  std::optional<double> initial_offset;
  std::optional<double> v_x;
  std::optional<double> c_f;
  std::optional<double> c_r;
  std::optional<double> dt;
  std::optional<double> horizon;
  std::vector<double> gains;
};

struct CharacterizeOverrides {
  std::vector<double> ranges;
  std::optional<double> dwell;
  std::optional<double> rate_hz;
  bool no_noise = false;
};

struct AnalyzeOverrides {
  std::vector<double> gains;
  std::optional<double> mass;
  std::optional<double> ramp_slope;
};

template <class T>
void set_if(const std::optional<T>& value, T& target) {
  if (value) target = *value;
}

aeb::PdGains gains_from_list(const std::vector<double>& v, const char* flag) {
  if (v.size() != 3) throw aeb::ConfigError(std::string(flag) + " expects k_p,k_d,k_inner");
  return {v[0], v[1], v[2]};
}

void add_brake_options(CLI::App* cmd, BrakeOverrides& o, bool sweep) {
  cmd->add_option("--label", o.label, "Run label");
  cmd->add_option("--initial-speed", o.initial_speed, "Initial speed [m/s]");
  if (!sweep) cmd->add_option("--ped-distance", o.ped_distance, "Initial pedestrian distance [m]");
  cmd->add_option("--offset", o.offset, "Stop distance in front of the pedestrian [m]");
  cmd->add_option("--dt", o.dt, "Integration and control step [s]");
  cmd->add_option("--horizon", o.horizon, "Simulation horizon [s]");
  cmd->add_option("--f-brake-max", o.f_brake_max, "Force at full brake command [N]");
  cmd->add_option("--mass", o.mass, "Vehicle mass [kg]");
  cmd->add_option("--gains", o.gains, "k_p,k_d,k_inner")->delimiter(',');
  cmd->add_flag("--no-drag", o.no_drag, "Disable aerodynamic drag");
  if (!sweep) {
    cmd->add_flag("--noise", o.noise, "Enable the detection noise model");
    cmd->add_flag("--no-noise", o.no_noise, "Disable the detection noise model");
    cmd->add_option("--smoothing-alpha", o.smoothing_alpha, "Exponential smoothing factor (1 = off)");
    cmd->add_option("--decimation", o.decimation, "Control steps per detection");
    cmd->add_option("--runs", o.runs, "Monte Carlo runs with consecutive seeds")
        ->check(CLI::PositiveNumber);
  }
}

void apply_brake(const BrakeOverrides& o, aeb::ScenarioConfig& b) {
  set_if(o.label, b.label);
  set_if(o.initial_speed, b.initial_speed);
  set_if(o.ped_distance, b.initial_ped_distance);
  set_if(o.offset, b.safe_offset);
  set_if(o.dt, b.dt);
  set_if(o.horizon, b.horizon);
  set_if(o.f_brake_max, b.f_brake_max);
  set_if(o.mass, b.plant.m);
  set_if(o.smoothing_alpha, b.smoothing_alpha);
  set_if(o.decimation, b.detection_decimation);
  if (!o.gains.empty()) b.gains = gains_from_list(o.gains, "--gains");
  if (o.noise) b.noise_enabled = true;
  if (o.no_noise) b.noise_enabled = false;
  if (o.no_drag) b.plant.drag_enabled = false;
}

/// Resolves defaults <- config file <- flags.
RunConfig resolve(const GlobalOptions& g) {
  if (g.defaults && g.config_path) throw aeb::ConfigError("--defaults and --config are exclusive");
  RunConfig config = aeb::default_run_config();
  if (g.config_path) aeb::apply_config_file(config, *g.config_path);
  set_if(g.seed, config.seed);
  config.propagate_shared();
  return config;
}

fs::path output_dir(const GlobalOptions& g, const std::string& subcommand) {
  return g.out_dir ? fs::path(*g.out_dir) : fs::path("out") / subcommand;
}

std::string csv_of(const auto& log, void (*writer)(std::ostream&, const std::remove_cvref_t<decltype(log)>&)) {
  std::ostringstream out;
  writer(out, log);
  return out.str();
}

void write_manifest(const fs::path& dir, const std::string& subcommand, const RunConfig& config,
                    std::chrono::steady_clock::time_point start, int argc, char** argv) {
  const std::string snapshot = aeb::to_yaml(config);
  aeb::io::write_text_file(dir / "config.yaml", snapshot);
  nlohmann::ordered_json manifest;
  manifest["subcommand"] = subcommand;
  manifest["tool_version"] = AEB_VERSION;
  manifest["seed"] = config.seed;
  manifest["output_dir"] = dir.string();
  manifest["argv"] = std::vector<std::string>(argv, argv + argc);
  manifest["config"] = snapshot;
  manifest["wall_clock_seconds"] =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  aeb::io::write_text_file(dir / "manifest.json", manifest.dump(2) + "\n");
}

std::string describe(const aeb::TrajectoryLog& log) {
  return fmt::format("{}: final_gap={:.4f} m peak_decel={:.4f} m/s^2 stop_time={:.2f} s {}",
                     log.label, log.summary.final_gap, log.summary.peak_decel,
                     log.summary.stop_time, log.summary.converged ? "converged" : "NOT CONVERGED");
}

// --- subcommands -----------------------------------------------------------

int cmd_brake(RunConfig& config, const BrakeOverrides& o, const fs::path& dir) {
  apply_brake(o, config.brake);
  config.propagate_shared();

  if (o.runs == 1) {
    const auto log = aeb::run_braking_scenario(config.brake);
    aeb::io::write_text_file(dir / "trajectory.csv", csv_of(log, aeb::io::write_trajectory_csv));
    aeb::io::write_text_file(dir / "summary.json", aeb::io::summary_json(log).dump(2) + "\n");
    std::cout << describe(log) << '\n';
    return log.summary.converged ? kExitOk : kExitNotConverged;
  }

  std::vector<std::uint64_t> seeds(static_cast<std::size_t>(o.runs));
  for (std::size_t i = 0; i < seeds.size(); ++i) seeds[i] = config.seed + i;
  const auto logs = aeb::run_seed_sweep(config.brake, seeds);
  nlohmann::ordered_json runs = nlohmann::ordered_json::array();
  bool all_converged = true;
  for (const auto& log : logs) {
    aeb::io::write_text_file(dir / fmt::format("trajectory_seed{}.csv", log.seed),
                             csv_of(log, aeb::io::write_trajectory_csv));
    runs.push_back(aeb::io::summary_json(log));
    all_converged = all_converged && log.summary.converged;
  }
  const auto mc = aeb::summarize_monte_carlo(logs);
  nlohmann::ordered_json summary;
  summary["monte_carlo"] = aeb::io::summary_json(mc);
  summary["runs"] = runs;
  aeb::io::write_text_file(dir / "summary.json", summary.dump(2) + "\n");
  std::cout << fmt::format("{} runs: stopped short {}/{}, median final_gap={:.4f} m (min {:.4f}, max {:.4f})\n",
                           mc.runs, mc.stopped_short, mc.runs, mc.median_final_gap,
                           mc.min_final_gap, mc.max_final_gap);
  return all_converged ? kExitOk : kExitNotConverged;
}

int cmd_sweep(RunConfig& config, const BrakeOverrides& o, const SweepOverrides& s,
              const fs::path& dir) {
  apply_brake(o, config.brake);
  if (!s.kp.empty()) config.sweep.kp = s.kp;
  set_if(s.ped_distance, config.sweep.initial_ped_distance);
  config.propagate_shared();

  aeb::ScenarioConfig base = config.brake;
  base.initial_ped_distance = config.sweep.initial_ped_distance;
  const auto logs = aeb::run_kp_sweep(base, config.sweep.kp);

  std::ostringstream table;
  table << "label,k_p,final_gap,peak_decel,stop_time,converged,seed\n";
  nlohmann::ordered_json runs = nlohmann::ordered_json::array();
  bool all_converged = true;
  for (std::size_t i = 0; i < logs.size(); ++i) {
    const auto& log = logs[i];
    const double kp = config.sweep.kp[i];
    aeb::io::write_text_file(dir / fmt::format("trajectory_kp{:g}.csv", kp),
                             csv_of(log, aeb::io::write_trajectory_csv));
    table << log.label << ',' << aeb::io::format_number(kp) << ','
          << aeb::io::format_number(log.summary.final_gap) << ','
          << aeb::io::format_number(log.summary.peak_decel) << ','
          << aeb::io::format_number(log.summary.stop_time) << ','
          << (log.summary.converged ? "true" : "false") << ',' << log.seed << '\n';
    auto j = aeb::io::summary_json(log);
    j["k_p"] = kp;
    runs.push_back(j);
    all_converged = all_converged && log.summary.converged;
    std::cout << describe(log) << '\n';
  }
  aeb::io::write_text_file(dir / "summary.csv", table.str());
  aeb::io::write_text_file(dir / "summary.json", runs.dump(2) + "\n");
  return all_converged ? kExitOk : kExitNotConverged;
}

int cmd_lateral(RunConfig& config, const LateralOverrides& o, const fs::path& dir) {
  auto& lat = config.lateral;
  if (o.step) lat.reference = {{0.0, *o.step}};
  set_if(o.initial_offset, lat.initial_offset);
  set_if(o.v_x, lat.params.v_x);
  set_if(o.c_f, lat.params.c_f);
  set_if(o.c_r, lat.params.c_r);
  set_if(o.dt, lat.dt);
  set_if(o.horizon, lat.horizon);
  if (!o.gains.empty()) lat.gains = gains_from_list(o.gains, "--gains");

  const auto log = aeb::run_lateral_scenario(lat);
  aeb::io::write_text_file(dir / "lateral.csv", csv_of(log, aeb::io::write_lateral_csv));
  aeb::io::write_text_file(dir / "summary.json", aeb::io::summary_json(log).dump(2) + "\n");
  std::cout << fmt::format("{}: final_y={:.4f} m overshoot={:.2f}% settling_time={:.2f} s {}\n",
                           log.label, log.summary.final_y, 100.0 * log.summary.overshoot,
                           log.summary.settling_time,
                           log.summary.diverged    ? "DIVERGED"
                           : log.summary.converged ? "converged"
                                                   : "NOT CONVERGED");
  return log.summary.converged ? kExitOk : kExitNotConverged;
}

int cmd_characterize(RunConfig& config, const CharacterizeOverrides& o, const fs::path& dir) {
  auto& ch = config.characterize;
  if (!o.ranges.empty()) ch.ranges = o.ranges;
  set_if(o.dwell, ch.dwell);
  set_if(o.rate_hz, ch.rate_hz);
  if (o.no_noise) {
    ch.model = aeb::DetectionNoiseModel::noise_free();
    ch.model.seed = config.seed;
  }

  const auto log = aeb::run_detection_characterization(ch);
  aeb::io::write_text_file(dir / "detection.csv", csv_of(log, aeb::io::write_detection_csv));
  aeb::io::write_text_file(dir / "detection_summary.csv",
                           csv_of(log, aeb::io::write_detection_summary_csv));
  nlohmann::ordered_json summary = nlohmann::ordered_json::array();
  for (const auto& s : log.per_range) {
    summary.push_back({{"range", s.range},
                       {"samples", s.samples},
                       {"detections", s.detections},
                       {"mean", s.mean},
                       {"std", s.stddev}});
    std::cout << fmt::format("range {:>6.2f} m: mean {:.4f} m, std {:.4f} m ({} of {} detected)\n",
                             s.range, s.mean, s.stddev, s.detections, s.samples);
  }
  aeb::io::write_text_file(dir / "summary.json", summary.dump(2) + "\n");
  return kExitOk;
}

int cmd_analyze(RunConfig& config, const AnalyzeOverrides& o, const std::optional<fs::path>& dir) {
  auto& a = config.analyze;
  if (!o.gains.empty()) a.gains = gains_from_list(o.gains, "--gains");
  set_if(o.mass, a.mass);
  set_if(o.ramp_slope, a.ramp_slope);

  const auto poly = aeb::closed_loop_denominator(a.gains, a.mass);
  const auto report = aeb::stability_report(poly);
  const double ramp = aeb::ramp_error_bound(a.mass, a.gains.k_inner, a.ramp_slope);
  const auto& p = report.poles.poles[0];

  std::cout << fmt::format("gains: k_p={:g} k_d={:g} k_inner={:g}, mass={:g} kg\n", a.gains.k_p,
                           a.gains.k_d, a.gains.k_inner, a.mass);
  std::cout << fmt::format("coefficients: ({:g}, {:g}, {:g})\n", poly.a2, poly.a1, poly.a0);
  std::cout << "routh-hurwitz: " << (report.stable ? "stable" : "not stable") << '\n';
  if (p.imag() != 0.0) {
    std::cout << fmt::format("poles: {:.4g} +/- {:.4g}i 1/s\n", p.real(), std::abs(p.imag()));
  } else {
    std::cout << fmt::format("poles: {:.4g}, {:.4g} 1/s\n", report.poles.poles[0].real(),
                             report.poles.poles[1].real());
  }
  std::cout << fmt::format("natural frequency: {:.4g} rad/s\n", report.poles.natural_frequency);
  std::cout << fmt::format("damping ratio: {:.4g}\n", report.poles.damping_ratio);
  std::cout << fmt::format("ramp velocity error (slope {:g} m/s^2): {:.4g} m/s\n", a.ramp_slope,
                           ramp);

  if (dir) {
    auto j = aeb::io::report_json(report);
    j["ramp_slope"] = a.ramp_slope;
    j["ramp_error_bound"] = ramp;
    aeb::io::write_text_file(*dir / "stability.json", j.dump(2) + "\n");
  }
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Pedestrian emergency braking and lateral control simulator", "aebsim"};
  app.set_version_flag("--version", AEB_VERSION);
  app.require_subcommand(1);
  app.fallthrough();

  GlobalOptions global;
  app.add_option("--config", global.config_path, "YAML config file");
  app.add_option("--out-dir", global.out_dir, "Output directory (default out/<subcommand>)");
  app.add_option("--seed", global.seed, "Random seed for noisy runs");
  app.add_flag("--defaults", global.defaults, "Use built-in defaults, ignore any config file");

  BrakeOverrides brake_o;
  auto* brake = app.add_subcommand("brake", "Closed-loop pedestrian braking run");
  add_brake_options(brake, brake_o, false);

  BrakeOverrides sweep_brake_o;
  SweepOverrides sweep_o;
  auto* sweep = app.add_subcommand("sweep-kp", "Noise-free braking runs over several k_p values");
  add_brake_options(sweep, sweep_brake_o, true);
  sweep->add_option("--kp", sweep_o.kp, "Comma-separated k_p values")->delimiter(',');
  sweep->add_option("--ped-distance", sweep_o.ped_distance, "Initial pedestrian distance [m]");

  LateralOverrides lat_o;
  auto* lateral = app.add_subcommand("lateral", "Lateral controller step response");
  lateral->add_option("--step", lat_o.step, "Step reference at t=0 [m]");
  lateral->add_option("--initial-offset", lat_o.initial_offset, "Initial lateral position [m]");
  lateral->add_option("--vx", lat_o.v_x, "Longitudinal speed [m/s]");
  lateral->add_option("--cf", lat_o.c_f, "Front cornering stiffness [N/rad]");
  lateral->add_option("--cr", lat_o.c_r, "Rear cornering stiffness [N/rad]");
  lateral->add_option("--dt", lat_o.dt, "Step [s]");
  lateral->add_option("--horizon", lat_o.horizon, "Horizon [s]");
  lateral->add_option("--gains", lat_o.gains, "k_p,k_d,k_inner")->delimiter(',');

  CharacterizeOverrides char_o;
  auto* characterize = app.add_subcommand("characterize", "Synthetic detection-range test");
  characterize->add_option("--ranges", char_o.ranges, "Comma-separated ranges [m]")->delimiter(',');
  characterize->add_option("--dwell", char_o.dwell, "Seconds per range");
  characterize->add_option("--rate", char_o.rate_hz, "Detection rate [Hz]");
  characterize->add_flag("--no-noise", char_o.no_noise, "Use the noise-free sensor");

  AnalyzeOverrides an_o;
  auto* analyze = app.add_subcommand("analyze", "Stability report of the longitudinal loop");
  analyze->add_option("--gains", an_o.gains, "k_p,k_d,k_inner")->delimiter(',');
  analyze->add_option("--mass", an_o.mass, "Vehicle mass [kg]");
  analyze->add_option("--ramp-slope", an_o.ramp_slope, "Reference ramp slope [m/s^2]");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  const auto start = std::chrono::steady_clock::now();
  try {
    RunConfig config = resolve(global);
    CLI::App* cmd = app.get_subcommands().front();
    const std::string name = cmd->get_name();
    const fs::path dir = output_dir(global, name);

    int code = kExitOk;
    if (cmd == brake) {
      code = cmd_brake(config, brake_o, dir);
    } else if (cmd == sweep) {
      code = cmd_sweep(config, sweep_brake_o, sweep_o, dir);
    } else if (cmd == lateral) {
      code = cmd_lateral(config, lat_o, dir);
    } else if (cmd == characterize) {
      code = cmd_characterize(config, char_o, dir);
    } else {
      const std::optional<fs::path> out = global.out_dir ? std::optional<fs::path>(dir) : std::nullopt;
      code = cmd_analyze(config, an_o, out);
      if (!out) return code;
    }
    write_manifest(dir, name, config, start, argc, argv);
    return code;
  } catch (const aeb::ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
  } catch (const std::invalid_argument& e) {
    std::cerr << "invalid input: " << e.what() << '\n';
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
  }
  return kExitUsage;
}
