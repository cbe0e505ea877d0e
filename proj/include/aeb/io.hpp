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

#pragma once

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>

#include <json.hpp>

#include "aeb/analysis.hpp"
#include "aeb/batch.hpp"
#include "aeb/scenarios.hpp"

namespace aeb::io {

inline constexpr const char* kTrajectoryHeader = "t,x,v,ped_true,ped_meas,r,e1,r_v,e2,u,brake_cmd";
inline constexpr const char* kLateralHeader = "t,y_ref,y,psi,psi_dot,v_y,r_psidot,delta_f";
inline constexpr const char* kDetectionHeader = "t,range,measured";
inline constexpr const char* kDetectionSummaryHeader = "range,samples,detections,mean,std";

/// Decimal text for a double, 12 significant digits.
std::string format_number(double value);
std::string format_optional(const std::optional<double>& value);

void write_trajectory_csv(std::ostream& out, const TrajectoryLog& log);
void write_lateral_csv(std::ostream& out, const LateralLog& log);
void write_detection_csv(std::ostream& out, const CharacterizationLog& log);
void write_detection_summary_csv(std::ostream& out, const CharacterizationLog& log);

nlohmann::ordered_json summary_json(const TrajectoryLog& log);
nlohmann::ordered_json summary_json(const LateralLog& log);
nlohmann::ordered_json summary_json(const MonteCarloSummary& summary);
nlohmann::ordered_json report_json(const StabilityReport& report);

/// Writes `text` to `path`, creating parent directories.
void write_text_file(const std::filesystem::path& path, const std::string& text);

}  // namespace aeb::io
