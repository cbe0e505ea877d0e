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

#include <cstdint>
#include <optional>
#include <random>
#include <span>
#include <vector>

namespace aeb {

/// Range-dependent Gaussian ranging error with outlier and dropout channels.
/// sigma(d) = sigma0 + sigma_slope * d.
struct DetectionNoiseModel {
  double sigma0 = 0.1;
  double sigma_slope = 0.04;
  double outlier_prob = 0.01;
  double outlier_sigma = 3.0;
  double dropout_prob = 0.02;
  std::uint64_t seed = 1;

  static DetectionNoiseModel noise_free() { return {0.0, 0.0, 0.0, 0.0, 0.0, 1}; }

  double sigma_at(double distance) const { return sigma0 + sigma_slope * distance; }
  void validate() const;
};

inline constexpr double kMinMeasuredDistance = 0.1;

struct Measurement {
  double timestamp = 0.0;
  std::optional<double> value;  ///< empty on dropout
};

/// Owns the random stream of one scenario run. Identical seeds and call
/// sequences give bit-identical measurements.
class DetectionSampler {
 public:
  explicit DetectionSampler(const DetectionNoiseModel& model);

  Measurement sample(double true_distance, double timestamp = 0.0);

  const DetectionNoiseModel& model() const { return model_; }

 private:
  DetectionNoiseModel model_;
  std::mt19937_64 engine_;
  std::uniform_real_distribution<double> uniform_{0.0, 1.0};
  std::normal_distribution<double> normal_{0.0, 1.0};
};

/// Free-function form over an explicit sampler.
Measurement sample_detection(double true_distance, DetectionSampler& sampler,
                             double timestamp = 0.0);

/// First-order exponential smoother y_k = alpha x_k + (1 - alpha) y_{k-1}.
/// Dropouts hold the previous output; leading dropouts stay empty.
class ExponentialSmoother {
 public:
  explicit ExponentialSmoother(double alpha);

  std::optional<double> update(std::optional<double> x);
  std::optional<double> value() const { return y_; }

 private:
  double alpha_;
  std::optional<double> y_;
};

std::vector<Measurement> smooth(std::span<const Measurement> stream, double alpha);

}  // namespace aeb
