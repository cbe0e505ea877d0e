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

#include "aeb/sensing.hpp"

#include <algorithm>
#include <cmath>

#include "aeb/errors.hpp"

namespace aeb {

void DetectionNoiseModel::validate() const {
  auto is_prob = [](double p) { return p >= 0.0 && p <= 1.0; };
  if (!is_prob(outlier_prob) || !is_prob(dropout_prob) || outlier_prob + dropout_prob > 1.0) {
    throw InvalidParameter("noise probabilities must lie in [0, 1] and sum to at most 1");
  }
  if (!(sigma0 >= 0.0) || !(outlier_sigma >= 0.0) || !(sigma_slope >= 0.0)) {
    throw InvalidParameter("noise standard deviations must be non-negative");
  }
}

DetectionSampler::DetectionSampler(const DetectionNoiseModel& model)
    : model_(model), engine_(model.seed) {
  model_.validate();
}

Measurement DetectionSampler::sample(double true_distance, double timestamp) {
  if (!(true_distance > 0.0) || !std::isfinite(true_distance)) {
    throw InvalidInput("true distance must be positive");
  }
  Measurement m{timestamp, std::nullopt};
  // One uniform draw selects the channel, one normal draw perturbs the range.
  const double channel = uniform_(engine_);
  if (channel < model_.dropout_prob) return m;
  const double sigma = channel < model_.dropout_prob + model_.outlier_prob
                           ? model_.outlier_sigma
                           : model_.sigma_at(true_distance);
  const double noise = normal_(engine_);
  m.value = std::max(kMinMeasuredDistance, true_distance + sigma * noise);
  return m;
}

Measurement sample_detection(double true_distance, DetectionSampler& sampler, double timestamp) {
  return sampler.sample(true_distance, timestamp);
}

ExponentialSmoother::ExponentialSmoother(double alpha) : alpha_(alpha) {
  if (!(alpha > 0.0 && alpha <= 1.0)) throw InvalidParameter("alpha must lie in (0, 1]");
}

std::optional<double> ExponentialSmoother::update(std::optional<double> x) {
  if (!x) return y_;
  y_ = y_ ? alpha_ * *x + (1.0 - alpha_) * *y_ : *x;
  return y_;
}

std::vector<Measurement> smooth(std::span<const Measurement> stream, double alpha) {
  ExponentialSmoother filter(alpha);
  std::vector<Measurement> out;
  out.reserve(stream.size());
  for (const Measurement& m : stream) out.push_back({m.timestamp, filter.update(m.value)});
  return out;
}

}  // namespace aeb
