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

#include "aeb/scenarios.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "aeb/errors.hpp"

namespace aeb {

void ScenarioConfig::validate() const {
  if (!(horizon > 0.0)) throw ConfigError("horizon must be positive");
  check_step_size(dt);
  if (!(initial_speed >= 0.0) || !std::isfinite(initial_speed)) {
    throw ConfigError("initial_speed must be finite and non-negative");
  }
  if (!(initial_ped_distance > safe_offset)) {
    throw ConfigError("initial_ped_distance must exceed safe_offset");
  }
  if (!(stop_speed >= 0.0)) throw ConfigError("stop_speed must be non-negative");
  if (detection_decimation < 1) throw ConfigError("detection_decimation must be >= 1");
  if (!(smoothing_alpha > 0.0 && smoothing_alpha <= 1.0)) {
    throw ConfigError("smoothing_alpha must lie in (0, 1]");
  }
  controller_config().validate();
  plant.validate();
  if (noise_enabled) noise.validate();
}

LongitudinalConfig ScenarioConfig::controller_config() const {
  return {gains, safe_offset, f_brake_max, dt, plant.m};
}

double braking_onset_distance(double v, const PdGains& gains, double safe_offset) {
  return safe_offset + (1.0 + gains.k_d) * v / gains.k_p;
}

TrajectorySummary summarize_rows(const std::vector<TrajectoryRow>& rows, double dt,
                                 bool converged) {
  TrajectorySummary s;
  s.converged = converged;
  if (rows.empty()) return s;
  s.final_gap = rows.back().ped_true;
  s.stop_time = rows.back().t;
  for (std::size_t k = 1; k < rows.size(); ++k) {
    s.peak_decel = std::max(s.peak_decel, (rows[k - 1].v - rows[k].v) / dt);
  }
  return s;
}

TrajectoryLog run_braking_scenario(const ScenarioConfig& config) {
  config.validate();
  const LongitudinalConfig ctrl = config.controller_config();

  TrajectoryLog log;
  log.label = config.label;
  log.seed = config.seed;
  log.dt = config.dt;

  std::optional<DetectionSampler> sampler;
  if (config.noise_enabled) {
    DetectionNoiseModel model = config.noise;
    model.seed = config.seed;
    sampler.emplace(model);
  }
  std::optional<ExponentialSmoother> smoother;
  if (config.smoothing_alpha < 1.0) smoother.emplace(config.smoothing_alpha);

  const auto max_steps = static_cast<std::size_t>(std::llround(config.horizon / config.dt));
  log.rows.reserve(std::min<std::size_t>(max_steps + 1, 1u << 16));

  LongitudinalState state{0.0, config.initial_speed};
  std::optional<double> held;  // last distance the controller saw
  bool converged = false;

  for (std::size_t k = 0; k <= max_steps; ++k) {
    TrajectoryRow row;
    row.t = static_cast<double>(k) * config.dt;
    row.x = state.x;
    row.v = state.v;
    row.ped_true = config.initial_ped_distance - state.x;

    if (!sampler) {
      row.ped_meas = row.ped_true;
    } else if (k % static_cast<std::size_t>(config.detection_decimation) == 0 &&
               row.ped_true > 0.0) {
      row.ped_meas = sampler->sample(row.ped_true, row.t).value;
    }
    std::optional<double> input = row.ped_meas;
    if (smoother) input = smoother->update(row.ped_meas);
    if (input) held = input;

    if (held) row.control = longitudinal_step(*held, state.v, ctrl, state.x);
    const double brake = row.brake_cmd();
    log.rows.push_back(row);

    if (state.v == 0.0 && brake == 0.0) {
      converged = true;
      break;
    }
    if (k == max_steps) break;

    state = step_longitudinal(state, -brake * config.f_brake_max, config.plant, config.dt);
    if (state.v <= config.stop_speed) state.v = 0.0;
  }

  log.summary = summarize_rows(log.rows, config.dt, converged);
  return log;
}

// ---------------------------------------------------------------------------

void LateralScenarioConfig::validate() const {
  params.validate();
  gains.validate();
  check_step_size(dt);
  if (!(horizon > 0.0)) throw ConfigError("horizon must be positive");
  if (reference.empty()) throw ConfigError("lateral reference needs at least one point");
  for (std::size_t i = 1; i < reference.size(); ++i) {
    if (!(reference[i].t > reference[i - 1].t)) {
      throw ConfigError("lateral reference times must be strictly increasing");
    }
  }
  if (!(divergence_limit > 0.0)) throw ConfigError("divergence_limit must be positive");
  if (!(settle_band > 0.0)) throw ConfigError("settle_band must be positive");
}

double LateralScenarioConfig::reference_at(double t) const {
  double y_ref = initial_offset;
  for (const ReferencePoint& p : reference) {
    if (p.t <= t) y_ref = p.y_ref;
  }
  return y_ref;
}

namespace {

LateralSummary summarize_lateral(const LateralScenarioConfig& config,
                                 const std::vector<LateralRow>& rows, bool diverged) {
  LateralSummary s;
  s.diverged = diverged;
  s.settling_time = std::numeric_limits<double>::quiet_NaN();
  if (rows.empty()) return s;
  s.final_y = rows.back().y;
  s.final_ref = rows.back().y_ref;
  if (diverged) return s;

  const ReferencePoint& last = config.reference.back();
  const double before = config.reference.size() > 1
                            ? config.reference[config.reference.size() - 2].y_ref
                            : config.initial_offset;
  const double step = last.y_ref - before;
  const double band = step != 0.0 ? config.settle_band * std::abs(step) : config.settle_band;
  const double sign = step >= 0.0 ? 1.0 : -1.0;

  double worst = 0.0;
  std::optional<std::size_t> last_outside;
  std::size_t first_in_segment = rows.size();
  for (std::size_t k = 0; k < rows.size(); ++k) {
    if (rows[k].t < last.t) continue;
    first_in_segment = std::min(first_in_segment, k);
    worst = std::max(worst, sign * (rows[k].y - last.y_ref));
    if (std::abs(rows[k].y - last.y_ref) > band) last_outside = k;
  }
  if (first_in_segment == rows.size()) return s;
  s.overshoot = step != 0.0 ? worst / std::abs(step) : 0.0;
  if (!last_outside) {
    s.settling_time = 0.0;
  } else if (*last_outside + 1 < rows.size()) {
    s.settling_time = rows[*last_outside + 1].t - last.t;
  }
  s.converged = !std::isnan(s.settling_time);
  return s;
}

}  // namespace

LateralLog run_lateral_scenario(const LateralScenarioConfig& config) {
  config.validate();
  LateralLog log;
  log.label = config.label;
  log.dt = config.dt;

  const auto steps = static_cast<std::size_t>(std::llround(config.horizon / config.dt));
  log.rows.reserve(steps + 1);

  LateralState state;
  state.y = config.initial_offset;
  double prev_error = config.reference_at(0.0) - state.y;
  bool diverged = false;

  for (std::size_t k = 0; k <= steps; ++k) {
    const double t = static_cast<double>(k) * config.dt;
    const double y_ref = config.reference_at(t);
    const double error = y_ref - state.y;
    const LateralStepRecord ctrl = lateral_step(error, state.psi_dot, config.gains, prev_error,
                                                config.dt, config.params.steering_limit);
    prev_error = error;
    log.rows.push_back(
        {t, y_ref, state.y, state.psi, state.psi_dot, state.v_y, ctrl.r_psidot, ctrl.delta_f});

    if (!std::isfinite(state.y) || std::abs(state.y) > config.divergence_limit) {
      diverged = true;
      break;
    }
    if (k == steps) break;
    state = step_lateral(state, ctrl.delta_f, config.params, config.dt);
  }

  log.summary = summarize_lateral(config, log.rows, diverged);
  return log;
}

// ---------------------------------------------------------------------------

void CharacterizationConfig::validate() const {
  if (ranges.empty()) throw ConfigError("characterization needs at least one range");
  for (double r : ranges) {
    if (!(r > 0.0)) throw ConfigError("characterization ranges must be positive");
  }
  if (!(dwell > 0.0)) throw ConfigError("dwell must be positive");
  if (!(rate_hz > 0.0)) throw ConfigError("rate_hz must be positive");
  model.validate();
}

CharacterizationLog run_detection_characterization(const CharacterizationConfig& config) {
  config.validate();
  CharacterizationLog log;
  DetectionSampler sampler(config.model);
  const auto per_range = static_cast<std::size_t>(std::llround(config.dwell * config.rate_hz));
  const double period = 1.0 / config.rate_hz;
  log.samples.reserve(per_range * config.ranges.size());

  std::size_t tick = 0;
  for (double range : config.ranges) {
    RangeStatistics stats;
    stats.range = range;
    double sum = 0.0;
    double sum_sq = 0.0;
    std::vector<double> values;
    values.reserve(per_range);
    for (std::size_t i = 0; i < per_range; ++i, ++tick) {
      const Measurement m = sampler.sample(range, static_cast<double>(tick) * period);
      log.samples.push_back({range, m});
      ++stats.samples;
      if (m.value) {
        values.push_back(*m.value);
        sum += *m.value;
      }
    }
    stats.detections = values.size();
    if (!values.empty()) {
      stats.mean = sum / static_cast<double>(values.size());
      for (double v : values) sum_sq += (v - stats.mean) * (v - stats.mean);
      if (values.size() > 1) stats.stddev = std::sqrt(sum_sq / static_cast<double>(values.size() - 1));
    }
    log.per_range.push_back(stats);
  }
  return log;
}

}  // namespace aeb
