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

#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <vector>

#include "aeb/errors.hpp"
#include "aeb/sensing.hpp"
#include "oracles.hpp"

using namespace aeb;

namespace {

std::vector<double> draw(DetectionSampler& s, double d, int n) {
  std::vector<double> out;
  for (int i = 0; i < n; ++i) {
    if (auto m = s.sample(d); m.value) out.push_back(*m.value);
  }
  return out;
}

DetectionNoiseModel gaussian_only(std::uint64_t seed) {
  DetectionNoiseModel m;
  m.outlier_prob = 0.0;
  m.dropout_prob = 0.0;
  m.seed = seed;
  return m;
}

}  // namespace

TEST_CASE("noise-free model is the identity") {
  DetectionSampler s(DetectionNoiseModel::noise_free());
  for (double d : {0.3, 5.0, 12.345, 25.0, 80.0}) {
    const auto m = s.sample(d, 1.5);
    REQUIRE(m.value);
    CHECK(*m.value == d);
    CHECK(m.timestamp == 1.5);
  }
}

TEST_CASE("non-positive distances are rejected") {
  DetectionSampler s(DetectionNoiseModel{});
  CHECK_THROWS_AS(s.sample(0.0), InvalidInput);
  CHECK_THROWS_AS(s.sample(-1.0), InvalidInput);
}

TEST_CASE("invalid noise parameters") {
  DetectionNoiseModel m;
  m.dropout_prob = 1.5;
  CHECK_THROWS_AS(DetectionSampler{m}, InvalidParameter);
  m = {};
  m.sigma0 = -0.1;
  CHECK_THROWS_AS(DetectionSampler{m}, InvalidParameter);
}

TEST_CASE("range-dependent spread") {
  // Monte Carlo estimate of sigma(d) = 0.1 + 0.04 d within 5 %.
  DetectionSampler s(gaussian_only(2024));
  const auto near = draw(s, 5.0, 10000);
  const auto far = draw(s, 25.0, 10000);
  CHECK(oracle::sample_stddev(near) == doctest::Approx(0.3).epsilon(0.05));
  CHECK(oracle::sample_stddev(far) == doctest::Approx(1.1).epsilon(0.05));
}

TEST_CASE("sample mean is unbiased") {
  DetectionSampler s(gaussian_only(99));
  for (double d : {5.0, 15.0, 25.0}) {
    const auto xs = draw(s, d, 10000);
    double mean = 0.0;
    for (double x : xs) mean += x;
    mean /= static_cast<double>(xs.size());
    const double sigma = 0.1 + 0.04 * d;
    CHECK(std::abs(mean - d) < 3.0 * sigma / std::sqrt(10000.0));
  }
}

TEST_CASE("values are floored at the minimum distance") {
  DetectionNoiseModel m = gaussian_only(1);
  m.sigma0 = 5.0;
  DetectionSampler s(m);
  for (double x : draw(s, 0.5, 5000)) CHECK(x >= kMinMeasuredDistance);
}

TEST_CASE("dropout and outlier channels") {
  DetectionNoiseModel m;
  m.dropout_prob = 0.2;
  m.outlier_prob = 0.0;
  m.seed = 8;
  DetectionSampler s(m);
  int dropped = 0;
  for (int i = 0; i < 20000; ++i) dropped += s.sample(10.0).value ? 0 : 1;
  CHECK(dropped / 20000.0 == doctest::Approx(0.2).epsilon(0.05));

  DetectionNoiseModel all_outliers = DetectionNoiseModel::noise_free();
  all_outliers.outlier_prob = 1.0;
  all_outliers.outlier_sigma = 3.0;
  DetectionSampler o(all_outliers);
  CHECK(oracle::sample_stddev(draw(o, 40.0, 10000)) == doctest::Approx(3.0).epsilon(0.05));
}

TEST_CASE("fixed seed reproduces the stream bit-exactly") {
  DetectionSampler a(DetectionNoiseModel{});
  DetectionSampler b(DetectionNoiseModel{});
  for (int i = 0; i < 1000; ++i) {
    const double d = 5.0 + 0.02 * i;
    const auto ma = a.sample(d);
    const auto mb = b.sample(d);
    REQUIRE(ma.value.has_value() == mb.value.has_value());
    if (ma.value) CHECK(*ma.value == *mb.value);
  }
  DetectionNoiseModel other;
  other.seed = 2;
  DetectionSampler c(other);
  DetectionSampler d(DetectionNoiseModel{});
  int differ = 0;
  for (int i = 0; i < 100; ++i) differ += c.sample(10.0).value != d.sample(10.0).value;
  CHECK(differ > 0);
}

TEST_CASE("exponential smoothing") {
  auto stream = [](std::vector<std::optional<double>> xs) {
    std::vector<Measurement> out;
    for (std::size_t i = 0; i < xs.size(); ++i) out.push_back({0.01 * i, xs[i]});
    return out;
  };

  SUBCASE("alpha = 1 is the identity") {
    const auto in = stream({3.0, 1.0, std::nullopt, 7.5});
    const auto out = smooth(in, 1.0);
    CHECK(*out[0].value == 3.0);
    CHECK(*out[1].value == 1.0);
    CHECK(*out[2].value == 1.0);  // dropout holds
    CHECK(*out[3].value == 7.5);
  }
  SUBCASE("constant input is a fixed point") {
    for (const auto& m : smooth(stream({4.0, 4.0, 4.0, 4.0}), 0.3)) CHECK(*m.value == 4.0);
  }
  SUBCASE("step response approaches geometrically") {
    const auto out = smooth(stream({0.0, 10.0, 10.0, 10.0, 10.0}), 0.5);
    for (std::size_t k = 1; k < out.size(); ++k) {
      CHECK(*out[k].value == doctest::Approx(10.0 * (1.0 - std::pow(0.5, k))));
    }
  }
  SUBCASE("dropouts hold, leading dropouts stay empty") {
    const auto out = smooth(stream({std::nullopt, 2.0, std::nullopt, 4.0}), 0.5);
    CHECK_FALSE(out[0].value);
    CHECK(*out[1].value == 2.0);
    CHECK(*out[2].value == 2.0);
    CHECK(*out[3].value == 3.0);
  }
  SUBCASE("empty stream") { CHECK(smooth({}, 0.5).empty()); }
  SUBCASE("bad alpha") {
    CHECK_THROWS_AS(ExponentialSmoother(0.0), InvalidParameter);
    CHECK_THROWS_AS(ExponentialSmoother(1.2), InvalidParameter);
  }
  SUBCASE("output stays inside the input envelope") {
    DetectionSampler s(DetectionNoiseModel{});
    std::vector<Measurement> in;
    for (int i = 0; i < 2000; ++i) in.push_back(s.sample(12.0, 0.01 * i));
    double lo = 1e9, hi = -1e9;
    for (const auto& m : in) {
      if (m.value) {
        lo = std::min(lo, *m.value);
        hi = std::max(hi, *m.value);
      }
    }
    for (double alpha : {0.05, 0.3, 0.9}) {
      for (const auto& m : smooth(in, alpha)) {
        if (!m.value) continue;
        CHECK(*m.value >= lo);
        CHECK(*m.value <= hi);
      }
    }
  }
}
