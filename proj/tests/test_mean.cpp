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

#include "privstat/mean.hpp"

#include <cmath>
#include <stdexcept>
#include <vector>

#include <gtest/gtest.h>

#include "privstat/distributions.hpp"
#include "privstat/privacy.hpp"
#include "privstat/random.hpp"

namespace privstat {
namespace {

TEST(MeanSensitivity, ClosedForm) {
  // 2 sqrt(d) / n.
  EXPECT_DOUBLE_EQ(mean_sensitivity(10, 1000).l2(), 0.0063245553203367588);
  EXPECT_DOUBLE_EQ(mean_sensitivity(1, 2).l2(), 1.0);
  EXPECT_DOUBLE_EQ(mean_sensitivity(4, 100).l2(), 4.0 / 100.0);
  EXPECT_THROW(mean_sensitivity(0, 10), std::invalid_argument);
  EXPECT_THROW(mean_sensitivity(10, 0), std::invalid_argument);
}

// Replacing one row moves the empirical mean by at most 2 sqrt(d) / n; the
// bound is attained when every coordinate of the row flips.
TEST(MeanSensitivity, BoundsRealizedShift) {
  RandomSource rng(17);
  const std::size_t n = 8;
  const std::size_t d = 4;
  MeanDataset data = sample_product(sample_uniform_mean(d, rng), n, rng);
  const double bound = mean_sensitivity(d, n).l2();
  double worst = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    MeanDataset flipped = data;
    for (std::size_t j = 0; j < d; ++j) {
      flipped.entries[i * d + j] = static_cast<std::int8_t>(-flipped.entries[i * d + j]);
    }
    double shift = std::sqrt(l2sq_error(empirical_mean(flipped), empirical_mean(data)));
    worst = std::max(worst, shift);
    EXPECT_LE(shift, bound + 1e-12);
  }
  EXPECT_NEAR(worst, bound, 1e-12);
}

TEST(PrivateMean, GoldenOutput) {
  MeanDataset data;
  data.d = 2;
  data.entries = {1, 1, -1, 1, 1, -1, -1, -1};
  RandomSource rng(7);
  std::vector<double> out = private_mean(data, PrivacyParams(1.0, 0.01), rng);
  ASSERT_EQ(out.size(), 2u);
  EXPECT_DOUBLE_EQ(out[0], 1.0);  // clamped
  EXPECT_DOUBLE_EQ(out[1], 0.88509641694646723);
}

TEST(PrivateMean, ClampKeepsOutputInCube) {
  MeanDataset data;
  data.d = 3;
  data.entries = {1, 1, 1, 1, 1, 1};  // n=2, tiny n so noise dominates
  RandomSource rng(3);
  for (int rep = 0; rep < 200; ++rep) {
    std::vector<double> out = private_mean(data, PrivacyParams(0.1, 0.01), rng);
    for (double v : out) {
      EXPECT_GE(v, -1.0);
      EXPECT_LE(v, 1.0);
    }
  }
}

TEST(PrivateMean, NoClampMatchesEmpiricalPlusNoise) {
  MeanDataset data;
  data.d = 2;
  data.entries = {1, 1, -1, 1, 1, -1, -1, -1};
  const PrivacyParams p(1.0, 0.01);
  PrivateMeanOptions options;
  options.clamp = false;
  RandomSource rng_a(55);
  std::vector<double> out = private_mean(data, p, rng_a, options);
  // Reconstruct by hand with the same stream.
  RandomSource rng_b(55);
  std::vector<double> expected = empirical_mean(data);
  double sigma = gaussian_noise_scale(mean_sensitivity(2, 4), p);
  for (double& v : expected) v += sigma * rng_b.normal();
  ASSERT_EQ(out.size(), expected.size());
  EXPECT_DOUBLE_EQ(out[0], expected[0]);
  EXPECT_DOUBLE_EQ(out[1], expected[1]);
}

TEST(PrivateMean, HighEpsilonApproachesEmpirical) {
  RandomSource rng(101);
  MeanDataset data = sample_product(sample_uniform_mean(5, rng), 500, rng);
  std::vector<double> emp = empirical_mean(data);
  std::vector<double> out = private_mean(data, PrivacyParams(1e6, 0.01), rng);
  EXPECT_LT(linf_distance(out, emp), 1e-3);
}

TEST(PrivateMean, RejectsEmptyDataset) {
  MeanDataset data;
  data.d = 2;
  RandomSource rng(1);
  EXPECT_THROW(private_mean(data, PrivacyParams(1.0, 0.01), rng),
               std::invalid_argument);
}

// Without clamping the error splits exactly into sampling error plus an
// independent noise term: MSE(private) - MSE(empirical) = sigma^2 d in
// expectation. The acceptance suite runs this at full scale.
TEST(PrivateMean, ErrorDecomposition) {
  const std::size_t d = 5;
  const std::size_t n = 100;
  const PrivacyParams p(1.0, 0.01);
  const double sigma = gaussian_noise_scale(mean_sensitivity(d, n), p);
  const int kTrials = 4000;
  PrivateMeanOptions options;
  options.clamp = false;
  RandomSource rng(616);
  double gap_sum = 0.0;
  double gap_sumsq = 0.0;
  for (int t = 0; t < kTrials; ++t) {
    ProductDistribution prior = sample_uniform_mean(d, rng);
    MeanDataset data = sample_product(prior, n, rng);
    double mse_priv = l2sq_error(private_mean(data, p, rng, options), prior.mean());
    double mse_emp = l2sq_error(empirical_mean(data), prior.mean());
    double gap = mse_priv - mse_emp;
    gap_sum += gap;
    gap_sumsq += gap * gap;
  }
  double mean_gap = gap_sum / kTrials;
  double var_gap = gap_sumsq / kTrials - mean_gap * mean_gap;
  double sem = std::sqrt(var_gap / kTrials);
  EXPECT_NEAR(mean_gap, sigma * sigma * d, 4.0 * sem);
}

}  // namespace
}  // namespace privstat
