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

#include "aeb/io.hpp"

#include <cmath>
#include <fstream>
#include <ostream>
#include <stdexcept>

#include <fmt/format.h>

namespace aeb::io {

std::string format_number(double value) {
  if (std::isnan(value)) return "nan";
  return fmt::format("{:.12g}", value);
}

std::string format_optional(const std::optional<double>& value) {
  return value ? format_number(*value) : std::string();
}

void write_trajectory_csv(std::ostream& out, const TrajectoryLog& log) {
  out << kTrajectoryHeader << '\n';
  for (const TrajectoryRow& row : log.rows) {
    out << format_number(row.t) << ',' << format_number(row.x) << ',' << format_number(row.v)
        << ',' << format_number(row.ped_true) << ',' << format_optional(row.ped_meas);
    if (row.control) {
      const ControllerStepRecord& c = *row.control;
      out << ',' << format_number(c.r) << ',' << format_number(c.e1) << ','
          << format_number(c.r_v) << ',' << format_number(c.e2) << ',' << format_number(c.u);
    } else {
      out << ",,,,,";
    }
    out << ',' << format_number(row.brake_cmd()) << '\n';
  }
}

void write_lateral_csv(std::ostream& out, const LateralLog& log) {
  out << kLateralHeader << '\n';
  for (const LateralRow& r : log.rows) {
    out << format_number(r.t) << ',' << format_number(r.y_ref) << ',' << format_number(r.y) << ','
        << format_number(r.psi) << ',' << format_number(r.psi_dot) << ',' << format_number(r.v_y)
        << ',' << format_number(r.r_psidot) << ',' << format_number(r.delta_f) << '\n';
  }
}

void write_detection_csv(std::ostream& out, const CharacterizationLog& log) {
  out << kDetectionHeader << '\n';
  for (const CharacterizationSample& s : log.samples) {
    out << format_number(s.measurement.timestamp) << ',' << format_number(s.range) << ','
        << format_optional(s.measurement.value) << '\n';
  }
}

void write_detection_summary_csv(std::ostream& out, const CharacterizationLog& log) {
  out << kDetectionSummaryHeader << '\n';
  for (const RangeStatistics& s : log.per_range) {
    out << format_number(s.range) << ',' << s.samples << ',' << s.detections << ','
        << format_number(s.mean) << ',' << format_number(s.stddev) << '\n';
  }
}

namespace {

// JSON has no NaN; unsettled times are written as null.
nlohmann::ordered_json number_or_null(double v) {
  return std::isfinite(v) ? nlohmann::ordered_json(v) : nlohmann::ordered_json(nullptr);
}

}  // namespace

nlohmann::ordered_json summary_json(const TrajectoryLog& log) {
  return {{"label", log.label},
          {"final_gap", log.summary.final_gap},
          {"peak_decel", log.summary.peak_decel},
          {"stop_time", log.summary.stop_time},
          {"converged", log.summary.converged},
          {"seed", log.seed}};
}

nlohmann::ordered_json summary_json(const LateralLog& log) {
  const LateralSummary& s = log.summary;
  return {{"label", log.label},
          {"final_y", s.final_y},
          {"final_ref", s.final_ref},
          {"overshoot", s.overshoot},
          {"settling_time", number_or_null(s.settling_time)},
          {"diverged", s.diverged},
          {"converged", s.converged}};
}

nlohmann::ordered_json summary_json(const MonteCarloSummary& s) {
  return {{"runs", s.runs},
          {"converged", s.converged},
          {"stopped_short", s.stopped_short},
          {"median_final_gap", s.median_final_gap},
          {"min_final_gap", s.min_final_gap},
          {"max_final_gap", s.max_final_gap}};
}

nlohmann::ordered_json report_json(const StabilityReport& r) {
  nlohmann::ordered_json poles = nlohmann::ordered_json::array();
  for (const auto& p : r.poles.poles) poles.push_back({{"re", p.real()}, {"im", p.imag()}});
  return {{"coefficients", {r.coefficients.a2, r.coefficients.a1, r.coefficients.a0}},
          {"stable", r.stable},
          {"poles", poles},
          {"natural_frequency", number_or_null(r.poles.natural_frequency)},
          {"damping_ratio", number_or_null(r.poles.damping_ratio)}};
}

void write_text_file(const std::filesystem::path& path, const std::string& text) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open " + path.string() + " for writing");
  out << text;
  if (!out) throw std::runtime_error("failed writing " + path.string());
}

}  // namespace aeb::io
