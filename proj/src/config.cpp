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

#include "aeb/config.hpp"

#include <fstream>
#include <functional>
#include <map>
#include <sstream>

#include <yaml-cpp/yaml.h>

#include "aeb/errors.hpp"

namespace aeb {

void RunConfig::propagate_shared() {
  brake.seed = seed;
  brake.noise.seed = seed;
  characterize.model = brake.noise;
  characterize.model.seed = seed;
}

RunConfig default_run_config() {
  RunConfig config;
  config.propagate_shared();
  return config;
}

namespace {

int line_of(const YAML::Node& node) { return node.Mark().is_null() ? 0 : node.Mark().line + 1; }

template <class T>
T read_scalar(const YAML::Node& node, const std::string& key) {
  if (!node.IsScalar()) throw ConfigError("'" + key + "' must be a scalar", line_of(node));
  try {
    return node.as<T>();
  } catch (const YAML::Exception&) {
    throw ConfigError("'" + key + "' has the wrong type", line_of(node));
  }
}

template <class T>
std::vector<T> read_list(const YAML::Node& node, const std::string& key) {
  if (!node.IsSequence()) throw ConfigError("'" + key + "' must be a list", line_of(node));
  std::vector<T> out;
  for (const YAML::Node& item : node) out.push_back(read_scalar<T>(item, key));
  return out;
}

using Handler = std::function<void(const YAML::Node&)>;

/// Dispatches each key of a mapping to its handler; unknown keys are errors.
void visit(const YAML::Node& node, const std::string& section,
           const std::map<std::string, Handler>& handlers) {
  if (!node.IsMap()) throw ConfigError("'" + section + "' must be a mapping", line_of(node));
  for (const auto& kv : node) {
    const auto key = kv.first.as<std::string>();
    const auto it = handlers.find(key);
    if (it == handlers.end()) {
      throw ConfigError("unknown key '" + key + "' in " + section, line_of(kv.first));
    }
    it->second(kv.second);
  }
}

template <class T>
Handler field(T& target, const std::string& key) {
  return [&target, key](const YAML::Node& n) { target = read_scalar<T>(n, key); };
}

void read_gains(const YAML::Node& node, PdGains& gains, const std::string& section) {
  visit(node, section,
        {{"k_p", field(gains.k_p, "k_p")},
         {"k_d", field(gains.k_d, "k_d")},
         {"k_inner", field(gains.k_inner, "k_inner")}});
}

void read_document(const YAML::Node& root, RunConfig& c) {
  if (root.IsNull()) return;
  ScenarioConfig& b = c.brake;
  LateralScenarioConfig& lat = c.lateral;
  visit(root, "config",
        {
            {"seed", field(c.seed, "seed")},
            {"brake",
             [&](const YAML::Node& n) {
               visit(n, "brake",
                     {{"label", field(b.label, "label")},
                      {"initial_speed", field(b.initial_speed, "initial_speed")},
                      {"initial_ped_distance", field(b.initial_ped_distance, "initial_ped_distance")},
                      {"safe_offset", field(b.safe_offset, "safe_offset")},
                      {"dt", field(b.dt, "dt")},
                      {"horizon", field(b.horizon, "horizon")},
                      {"stop_speed", field(b.stop_speed, "stop_speed")},
                      {"f_brake_max", field(b.f_brake_max, "f_brake_max")},
                      {"gains", [&](const YAML::Node& g) { read_gains(g, b.gains, "brake.gains"); }},
                      {"plant", [&](const YAML::Node& p) {
                         visit(p, "brake.plant",
                               {{"mass", field(b.plant.m, "mass")},
                                {"drag", field(b.plant.drag_enabled, "drag")},
                                {"rho", field(b.plant.rho, "rho")},
                                {"c_d", field(b.plant.c_d, "c_d")},
                                {"area", field(b.plant.area, "area")}});
                       }}});
             }},
            {"noise",
             [&](const YAML::Node& n) {
               DetectionNoiseModel& m = b.noise;
               visit(n, "noise",
                     {{"enabled", field(b.noise_enabled, "enabled")},
                      {"sigma0", field(m.sigma0, "sigma0")},
                      {"sigma_slope", field(m.sigma_slope, "sigma_slope")},
                      {"outlier_prob", field(m.outlier_prob, "outlier_prob")},
                      {"outlier_sigma", field(m.outlier_sigma, "outlier_sigma")},
                      {"dropout_prob", field(m.dropout_prob, "dropout_prob")},
                      {"decimation", field(b.detection_decimation, "decimation")},
                      {"smoothing_alpha", field(b.smoothing_alpha, "smoothing_alpha")}});
             }},
            {"sweep",
             [&](const YAML::Node& n) {
               visit(n, "sweep",
                     {{"kp", [&](const YAML::Node& l) { c.sweep.kp = read_list<double>(l, "kp"); }},
                      {"initial_ped_distance",
                       field(c.sweep.initial_ped_distance, "initial_ped_distance")}});
             }},
            {"lateral",
             [&](const YAML::Node& n) {
               LateralParams& p = lat.params;
               visit(n, "lateral",
                     {{"label", field(lat.label, "label")},
                      {"initial_offset", field(lat.initial_offset, "initial_offset")},
                      {"dt", field(lat.dt, "dt")},
                      {"horizon", field(lat.horizon, "horizon")},
                      {"divergence_limit", field(lat.divergence_limit, "divergence_limit")},
                      {"settle_band", field(lat.settle_band, "settle_band")},
                      {"gains", [&](const YAML::Node& g) { read_gains(g, lat.gains, "lateral.gains"); }},
                      {"params",
                       [&](const YAML::Node& q) {
                         visit(q, "lateral.params",
                               {{"c_f", field(p.c_f, "c_f")},
                                {"c_r", field(p.c_r, "c_r")},
                                {"l_f", field(p.l_f, "l_f")},
                                {"l_r", field(p.l_r, "l_r")},
                                {"mass", field(p.m, "mass")},
                                {"i_z", field(p.i_z, "i_z")},
                                {"v_x", field(p.v_x, "v_x")},
                                {"m_z", field(p.m_z, "m_z")},
                                {"steering_limit", field(p.steering_limit, "steering_limit")}});
                       }},
                      {"reference", [&](const YAML::Node& r) {
                         if (!r.IsSequence()) {
                           throw ConfigError("'reference' must be a list of [t, y_ref]", line_of(r));
                         }
                         lat.reference.clear();
                         for (const YAML::Node& point : r) {
                           const auto pair = read_list<double>(point, "reference");
                           if (pair.size() != 2) {
                             throw ConfigError("reference points are [t, y_ref]", line_of(point));
                           }
                           lat.reference.push_back({pair[0], pair[1]});
                         }
                       }}});
             }},
            {"characterize",
             [&](const YAML::Node& n) {
               CharacterizationConfig& ch = c.characterize;
               visit(n, "characterize",
                     {{"ranges",
                       [&](const YAML::Node& l) { ch.ranges = read_list<double>(l, "ranges"); }},
                      {"dwell", field(ch.dwell, "dwell")},
                      {"rate_hz", field(ch.rate_hz, "rate_hz")}});
             }},
            {"analyze",
             [&](const YAML::Node& n) {
               AnalyzeConfig& a = c.analyze;
               visit(n, "analyze",
                     {{"gains", [&](const YAML::Node& g) { read_gains(g, a.gains, "analyze.gains"); }},
                      {"mass", field(a.mass, "mass")},
                      {"ramp_slope", field(a.ramp_slope, "ramp_slope")}});
             }},
        });
}

}  // namespace

void apply_config_text(RunConfig& config, const std::string& yaml_text) {
  YAML::Node root;
  try {
    root = YAML::Load(yaml_text);
  } catch (const YAML::ParserException& e) {
    throw ConfigError(e.msg, e.mark.is_null() ? 0 : e.mark.line + 1);
  }
  read_document(root, config);
  config.propagate_shared();
}

void apply_config_file(RunConfig& config, const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot read config file " + path.string());
  std::ostringstream text;
  text << in.rdbuf();
  try {
    apply_config_text(config, text.str());
  } catch (const ConfigError& e) {
    throw ConfigError(path.string() + ": " + e.what());
  }
}

namespace {

void emit_gains(YAML::Emitter& out, const PdGains& g) {
  out << YAML::Key << "gains" << YAML::Value << YAML::BeginMap;
  out << YAML::Key << "k_p" << YAML::Value << g.k_p;
  out << YAML::Key << "k_d" << YAML::Value << g.k_d;
  out << YAML::Key << "k_inner" << YAML::Value << g.k_inner;
  out << YAML::EndMap;
}

template <class T>
void kv(YAML::Emitter& out, const char* key, const T& value) {
  out << YAML::Key << key << YAML::Value << value;
}

}  // namespace

std::string to_yaml(const RunConfig& c) {
  YAML::Emitter out;
  out.SetDoublePrecision(17);
  out << YAML::BeginMap;
  kv(out, "seed", c.seed);

  const ScenarioConfig& b = c.brake;
  out << YAML::Key << "brake" << YAML::Value << YAML::BeginMap;
  kv(out, "label", b.label);
  kv(out, "initial_speed", b.initial_speed);
  kv(out, "initial_ped_distance", b.initial_ped_distance);
  kv(out, "safe_offset", b.safe_offset);
  kv(out, "dt", b.dt);
  kv(out, "horizon", b.horizon);
  kv(out, "stop_speed", b.stop_speed);
  kv(out, "f_brake_max", b.f_brake_max);
  emit_gains(out, b.gains);
  out << YAML::Key << "plant" << YAML::Value << YAML::BeginMap;
  kv(out, "mass", b.plant.m);
  kv(out, "drag", b.plant.drag_enabled);
  kv(out, "rho", b.plant.rho);
  kv(out, "c_d", b.plant.c_d);
  kv(out, "area", b.plant.area);
  out << YAML::EndMap << YAML::EndMap;

  out << YAML::Key << "noise" << YAML::Value << YAML::BeginMap;
  kv(out, "enabled", b.noise_enabled);
  kv(out, "sigma0", b.noise.sigma0);
  kv(out, "sigma_slope", b.noise.sigma_slope);
  kv(out, "outlier_prob", b.noise.outlier_prob);
  kv(out, "outlier_sigma", b.noise.outlier_sigma);
  kv(out, "dropout_prob", b.noise.dropout_prob);
  kv(out, "decimation", b.detection_decimation);
  kv(out, "smoothing_alpha", b.smoothing_alpha);
  out << YAML::EndMap;

  out << YAML::Key << "sweep" << YAML::Value << YAML::BeginMap;
  out << YAML::Key << "kp" << YAML::Value << YAML::Flow << c.sweep.kp;
  kv(out, "initial_ped_distance", c.sweep.initial_ped_distance);
  out << YAML::EndMap;

  const LateralScenarioConfig& l = c.lateral;
  out << YAML::Key << "lateral" << YAML::Value << YAML::BeginMap;
  kv(out, "label", l.label);
  kv(out, "initial_offset", l.initial_offset);
  kv(out, "dt", l.dt);
  kv(out, "horizon", l.horizon);
  kv(out, "divergence_limit", l.divergence_limit);
  kv(out, "settle_band", l.settle_band);
  emit_gains(out, l.gains);
  out << YAML::Key << "params" << YAML::Value << YAML::BeginMap;
  kv(out, "c_f", l.params.c_f);
  kv(out, "c_r", l.params.c_r);
  kv(out, "l_f", l.params.l_f);
  kv(out, "l_r", l.params.l_r);
  kv(out, "mass", l.params.m);
  kv(out, "i_z", l.params.i_z);
  kv(out, "v_x", l.params.v_x);
  kv(out, "m_z", l.params.m_z);
  kv(out, "steering_limit", l.params.steering_limit);
  out << YAML::EndMap;
  out << YAML::Key << "reference" << YAML::Value << YAML::BeginSeq;
  for (const ReferencePoint& p : l.reference) {
    out << YAML::Flow << YAML::BeginSeq << p.t << p.y_ref << YAML::EndSeq;
  }
  out << YAML::EndSeq << YAML::EndMap;

  out << YAML::Key << "characterize" << YAML::Value << YAML::BeginMap;
  out << YAML::Key << "ranges" << YAML::Value << YAML::Flow << c.characterize.ranges;
  kv(out, "dwell", c.characterize.dwell);
  kv(out, "rate_hz", c.characterize.rate_hz);
  out << YAML::EndMap;

  out << YAML::Key << "analyze" << YAML::Value << YAML::BeginMap;
  emit_gains(out, c.analyze.gains);
  kv(out, "mass", c.analyze.mass);
  kv(out, "ramp_slope", c.analyze.ramp_slope);
  out << YAML::EndMap;

  out << YAML::EndMap;
  return std::string(out.c_str()) + "\n";
}

}  // namespace aeb
