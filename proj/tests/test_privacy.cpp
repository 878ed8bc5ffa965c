// Copyright 2026 The privstat Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "privstat/privacy.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>
#include <vector>

#include <gtest/gtest.h>

#include "privstat/random.hpp"

namespace privstat {
namespace {

TEST(PrivacyParams, AcceptsValidBudgets) {
  PrivacyParams p(1.0, 0.05);
  EXPECT_DOUBLE_EQ(p.epsilon(), 1.0);
  EXPECT_DOUBLE_EQ(p.delta(), 0.05);
}

TEST(PrivacyParams, RejectsBadEpsilon) {
  EXPECT_THROW(PrivacyParams(0.0, 0.05), std::invalid_argument);
  EXPECT_THROW(PrivacyParams(-1.0, 0.05), std::invalid_argument);
  EXPECT_THROW(PrivacyParams(std::numeric_limits<double>::infinity(), 0.05),
               std::invalid_argument);
  EXPECT_THROW(PrivacyParams(std::nan(""), 0.05), std::invalid_argument);
}

TEST(PrivacyParams, RejectsBadDelta) {
  EXPECT_THROW(PrivacyParams(1.0, 0.0), std::invalid_argument);
  EXPECT_THROW(PrivacyParams(1.0, 1.0), std::invalid_argument);
  EXPECT_THROW(PrivacyParams(1.0, -0.1), std::invalid_argument);
  EXPECT_THROW(PrivacyParams(1.0, std::nan("")), std::invalid_argument);
}

TEST(Sensitivity, Validation) {
  EXPECT_DOUBLE_EQ(Sensitivity(2.5).l2(), 2.5);
  EXPECT_DOUBLE_EQ(Sensitivity(0.0).l2(), 0.0);
  EXPECT_THROW(Sensitivity(-1.0), std::invalid_argument);
  EXPECT_THROW(Sensitivity(std::numeric_limits<double>::infinity()),
               std::invalid_argument);
}

// sigma = sqrt(2 ln(2/delta)) * Delta / eps. The frozen value is
// sqrt(2 ln 40) for the unit case.
TEST(GaussianNoiseScale, MatchesClosedForm) {
  double sigma = gaussian_noise_scale(Sensitivity(1.0), PrivacyParams(1.0, 0.05));
  EXPECT_DOUBLE_EQ(sigma, 2.7162030314812391);
  EXPECT_NEAR(sigma * sigma, 2.0 * std::log(40.0), 1e-12);
}

TEST(GaussianNoiseScale, ScalesWithSensitivityAndEpsilon) {
  PrivacyParams p(1.0, 0.05);
  double base = gaussian_noise_scale(Sensitivity(1.0), p);
  EXPECT_DOUBLE_EQ(gaussian_noise_scale(Sensitivity(3.0), p), 3.0 * base);
  EXPECT_DOUBLE_EQ(gaussian_noise_scale(Sensitivity(1.0), PrivacyParams(2.0, 0.05)),
                   base / 2.0);
  EXPECT_DOUBLE_EQ(gaussian_noise_scale(Sensitivity(0.0), p), 0.0);
}

TEST(GaussianNoiseScale, MonotoneInDelta) {
  Sensitivity s(1.0);
  double loose = gaussian_noise_scale(s, PrivacyParams(1.0, 0.1));
  double tight = gaussian_noise_scale(s, PrivacyParams(1.0, 1e-6));
  EXPECT_LT(loose, tight);
}

TEST(GaussianMechanism, GoldenOutput) {
  RandomSource rng(2024);
  std::vector<double> value = {0.25, -0.5, 1.0};
  std::vector<double> out =
      gaussian_mechanism(value, Sensitivity(1.0), PrivacyParams(1.0, 0.05), rng);
  ASSERT_EQ(out.size(), 3u);
  EXPECT_DOUBLE_EQ(out[0], 0.68938981077163386);
  EXPECT_DOUBLE_EQ(out[1], -1.8707102647013911);
  EXPECT_DOUBLE_EQ(out[2], -1.823126567419);
}

TEST(GaussianMechanism, ZeroSensitivityIsIdentity) {
  RandomSource rng(1);
  std::vector<double> value = {0.25, -0.5, 1.0};
  std::vector<double> out =
      gaussian_mechanism(value, Sensitivity(0.0), PrivacyParams(1.0, 0.05), rng);
  EXPECT_EQ(out, value);
}

TEST(GaussianMechanism, RejectsNonFiniteInput) {
  RandomSource rng(1);
  std::vector<double> value = {0.0, std::numeric_limits<double>::infinity()};
  EXPECT_THROW(
      gaussian_mechanism(value, Sensitivity(1.0), PrivacyParams(1.0, 0.05), rng),
      std::invalid_argument);
}

// Sample variance of the additive noise over many scalar calls; the
// acceptance suite runs the full-size version of this check.
TEST(GaussianMechanism, NoiseVarianceMatchesScale) {
  RandomSource rng(99);
  const PrivacyParams p(1.0, 0.05);
  const Sensitivity s(1.0);
  const double sigma_sq = 2.0 * std::log(40.0);
  const int kCalls = 20000;
  double sum = 0.0;
  double sumsq = 0.0;
  std::vector<double> zero = {0.0};
  for (int i = 0; i < kCalls; ++i) {
    double noise = gaussian_mechanism(zero, s, p, rng)[0];
    sum += noise;
    sumsq += noise * noise;
  }
  double mean = sum / kCalls;
  double var = sumsq / kCalls - mean * mean;
  // 4-sigma band on a variance estimate: sd ~ sigma^2 sqrt(2/N).
  EXPECT_NEAR(var, sigma_sq, 4.0 * sigma_sq * std::sqrt(2.0 / kCalls));
  EXPECT_NEAR(mean, 0.0, 4.0 * std::sqrt(sigma_sq / kCalls));
}

}  // namespace
}  // namespace privstat
