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

#include "privstat/attack.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <numeric>
#include <stdexcept>
#include <vector>

#include <gtest/gtest.h>

#include "privstat/distributions.hpp"
#include "privstat/mean.hpp"
#include "privstat/privacy.hpp"
#include "privstat/random.hpp"

namespace privstat {
namespace {

MeanDataset MakeData(std::size_t d, std::vector<std::int8_t> entries) {
  MeanDataset data;
  data.d = d;
  data.entries = std::move(entries);
  return data;
}

TEST(ScoreIn, ZeroWhenOutputEqualsTrueMean) {
  std::vector<double> mu = {0.3, -0.7, 0.1};
  std::vector<std::int8_t> row = {1, -1, 1};
  EXPECT_DOUBLE_EQ(score_in(mu, row, mu), 0.0);
}

TEST(ScoreIn, HandComputedCases) {
  {
    std::vector<double> m_out = {1.0, 0.0};
    std::vector<double> mu = {0.0, 0.0};
    std::vector<std::int8_t> row = {1, -1};
    EXPECT_DOUBLE_EQ(score_in(m_out, row, mu), 1.0);
  }
  {
    std::vector<double> m_out = {1.0, -1.0};
    std::vector<double> mu = {0.5, -0.5};
    std::vector<std::int8_t> row = {-1, 1};
    // (0.5)(-1.5) + (-0.5)(1.5) = -1.5
    EXPECT_DOUBLE_EQ(score_in(m_out, row, mu), -1.5);
  }
}

// Both factors are coordinatewise at most 2 in magnitude, so the score can
// never exceed 4d no matter what the mechanism outputs.
TEST(ScoreIn, MagnitudeNeverExceedsFourD) {
  RandomSource rng(301);
  const std::size_t d = 17;
  for (int rep = 0; rep < 200; ++rep) {
    std::vector<double> m_out(d), mu(d);
    std::vector<std::int8_t> row(d);
    for (std::size_t j = 0; j < d; ++j) {
      m_out[j] = rng.uniform(-1.0, 1.0);
      mu[j] = rng.uniform(-1.0, 1.0);
      row[j] = rng.uniform01() < 0.5 ? -1 : 1;
    }
    EXPECT_LE(std::abs(score_in(m_out, row, mu)), 4.0 * d);
  }
}

TEST(ScoreIn, RejectsDimensionMismatch) {
  std::vector<double> m_out = {0.0, 0.0};
  std::vector<double> mu = {0.0, 0.0, 0.0};
  std::vector<std::int8_t> row = {1, 1};
  EXPECT_THROW(score_in(m_out, row, mu), std::invalid_argument);
}

TEST(ScoreOut, OracleMechanismScoresZero) {
  MeanDataset data = MakeData(2, {1, 1, -1, 1, 1, -1});
  std::vector<double> mu = {0.2, -0.2};
  std::vector<std::int8_t> fresh = {-1, -1};
  RandomSource rng(5);
  MechanismUnderTest oracle = oracle_mean_mechanism();
  for (std::size_t i = 0; i < data.rows(); ++i) {
    EXPECT_DOUBLE_EQ(score_out(oracle, data, i, fresh, mu, rng), 0.0);
  }
}

TEST(ScoreOut, ValidatesArguments) {
  MeanDataset data = MakeData(2, {1, 1, -1, 1});
  std::vector<double> mu = {0.0, 0.0};
  std::vector<std::int8_t> fresh = {1, -1};
  std::vector<std::int8_t> short_fresh = {1};
  RandomSource rng(6);
  MechanismUnderTest mech = empirical_mean_mechanism();
  EXPECT_THROW(score_out(mech, data, 2, fresh, mu, rng), std::out_of_range);
  EXPECT_THROW(score_out(mech, data, 0, short_fresh, mu, rng),
               std::invalid_argument);
}

// score_out must leave the dataset it probes unchanged: the swapped row is
// restored before returning.
TEST(ScoreOut, RestoresDataset) {
  MeanDataset data = MakeData(3, {1, -1, 1, -1, -1, 1});
  MeanDataset copy = data;
  std::vector<double> mu = {0.0, 0.0, 0.0};
  std::vector<std::int8_t> fresh = {-1, 1, -1};
  RandomSource rng(7);
  MechanismUnderTest mech = empirical_mean_mechanism();
  score_out(mech, data, 0, fresh, mu, rng);
  EXPECT_EQ(data.entries, copy.entries);
}

TEST(RunAttackTrial, OracleLeavesNoTrace) {
  RandomSource prior(41), mech(42);
  AttackScores scores = run_attack_trial(oracle_mean_mechanism(), 12, 6, prior, mech);
  ASSERT_EQ(scores.z_in.size(), 12u);
  ASSERT_EQ(scores.z_out.size(), 12u);
  EXPECT_DOUBLE_EQ(scores.alpha_sq_sample, 0.0);
  for (double z : scores.z_in) EXPECT_DOUBLE_EQ(z, 0.0);
  for (double z : scores.z_out) EXPECT_DOUBLE_EQ(z, 0.0);
}

TEST(RunAttackTrial, ConstantMechanismGivesEqualInOutScores) {
  RandomSource prior(43), mech(44);
  AttackScores scores =
      run_attack_trial(constant_zero_mechanism(), 8, 5, prior, mech);
  for (std::size_t k = 0; k < scores.z_in.size(); ++k) {
    EXPECT_DOUBLE_EQ(scores.z_in[k], scores.z_out[k]);
  }
}

TEST(RunAttackTrial, ScoresAllRowsByDefault) {
  RandomSource prior(45), mech(46);
  AttackScores scores =
      run_attack_trial(empirical_mean_mechanism(), 9, 4, prior, mech);
  ASSERT_EQ(scores.scored_indices.size(), 9u);
  for (std::size_t k = 0; k < 9; ++k) EXPECT_EQ(scores.scored_indices[k], k);
}

TEST(RunAttackTrial, SubsampleScoresRequestedCount) {
  RandomSource prior(47), mech(48);
  AttackTrialOptions options;
  options.score_subsample = 5;
  AttackScores scores =
      run_attack_trial(empirical_mean_mechanism(), 20, 4, prior, mech, options);
  ASSERT_EQ(scores.scored_indices.size(), 5u);
  ASSERT_EQ(scores.z_in.size(), 5u);
  ASSERT_EQ(scores.z_out.size(), 5u);
  for (std::size_t k = 1; k < scores.scored_indices.size(); ++k) {
    EXPECT_LT(scores.scored_indices[k - 1], scores.scored_indices[k]);
  }
  EXPECT_LT(scores.scored_indices.back(), 20u);
}

TEST(RunAttackTrial, DeterministicGivenStreams) {
  auto run_once = [] {
    RandomSource prior(51), mech(52);
    return run_attack_trial(empirical_mean_mechanism(), 15, 8, prior, mech);
  };
  AttackScores a = run_once();
  AttackScores b = run_once();
  EXPECT_EQ(a.scored_indices, b.scored_indices);
  EXPECT_EQ(a.z_in, b.z_in);
  EXPECT_EQ(a.z_out, b.z_out);
  EXPECT_EQ(a.alpha_sq_sample, b.alpha_sq_sample);
}

TEST(RunAttackTrial, OutScoresStayInHardRange) {
  RandomSource prior(53), mech(54);
  const std::size_t d = 30;
  for (int rep = 0; rep < 20; ++rep) {
    AttackScores scores =
        run_attack_trial(empirical_mean_mechanism(), 10, d, prior, mech);
    for (double z : scores.z_out) EXPECT_LE(std::abs(z), 4.0 * d);
    for (double z : scores.z_in) EXPECT_LE(std::abs(z), 4.0 * d);
  }
}

TEST(RunAttackTrial, RejectsMisbehavingMechanism) {
  MechanismUnderTest wrong_dim;
  wrong_dim.label = "wrong_dim";
  wrong_dim.run = [](const MeanDataset& data, std::span<const double>,
                     RandomSource&) {
    return std::vector<double>(data.d + 1, 0.0);
  };
  MechanismUnderTest out_of_cube;
  out_of_cube.label = "out_of_cube";
  out_of_cube.run = [](const MeanDataset& data, std::span<const double>,
                       RandomSource&) {
    return std::vector<double>(data.d, 2.0);
  };
  RandomSource prior(55), mech(56);
  EXPECT_THROW(run_attack_trial(wrong_dim, 4, 3, prior, mech),
               std::runtime_error);
  EXPECT_THROW(run_attack_trial(out_of_cube, 4, 3, prior, mech),
               std::runtime_error);
  EXPECT_THROW(run_attack_trial(empirical_mean_mechanism(), 0, 3, prior, mech),
               std::invalid_argument);
}

// Null-distribution checks for out-of-sample scores: the scored row is
// independent of the mechanism's run, so the scores are centered and their
// variance is controlled by the mechanism's squared error.
TEST(RunAttackTrial, OutScoresCenteredWithBoundedVariance) {
  RandomSource prior(57), mech(58);
  const std::size_t n = 30, d = 20, trials = 300;
  std::vector<double> trial_means;
  double pooled_sum = 0.0, pooled_sumsq = 0.0;
  double alpha_sum = 0.0;
  std::size_t pooled_count = 0;
  for (std::size_t t = 0; t < trials; ++t) {
    AttackScores scores =
        run_attack_trial(empirical_mean_mechanism(), n, d, prior, mech);
    double m = std::accumulate(scores.z_out.begin(), scores.z_out.end(), 0.0) /
               static_cast<double>(scores.z_out.size());
    trial_means.push_back(m);
    for (double z : scores.z_out) {
      pooled_sum += z;
      pooled_sumsq += z * z;
      ++pooled_count;
    }
    alpha_sum += scores.alpha_sq_sample;
  }
  double grand_mean = pooled_sum / pooled_count;
  double mean_sq = 0.0;
  for (double m : trial_means) mean_sq += (m - grand_mean) * (m - grand_mean);
  double se = std::sqrt(mean_sq / (trials - 1) / trials);
  EXPECT_LE(std::abs(grand_mean), 5.0 * se);

  double pooled_var =
      (pooled_sumsq - pooled_sum * pooled_sum / pooled_count) /
      (pooled_count - 1);
  double mean_alpha = alpha_sum / trials;
  EXPECT_LE(pooled_var, 4.0 * mean_alpha);
}

TEST(MembershipAdvantage, ConstantMechanismHasNoAdvantage) {
  RandomSource prior(61), mech(62);
  std::vector<AttackScores> scores;
  for (int t = 0; t < 20; ++t) {
    scores.push_back(run_attack_trial(constant_zero_mechanism(), 10, 6, prior, mech));
  }
  MembershipRates rates = membership_advantage(scores, 0.1);
  EXPECT_DOUBLE_EQ(rates.tpr, rates.fpr);
  EXPECT_DOUBLE_EQ(rates.advantage, 0.0);
}

TEST(MembershipAdvantage, InfiniteThresholdRejectsEverything) {
  RandomSource prior(63), mech(64);
  std::vector<AttackScores> scores = {
      run_attack_trial(empirical_mean_mechanism(), 6, 4, prior, mech)};
  MembershipRates rates =
      membership_advantage(scores, std::numeric_limits<double>::infinity());
  EXPECT_DOUBLE_EQ(rates.tpr, 0.0);
  EXPECT_DOUBLE_EQ(rates.fpr, 0.0);
}

TEST(MembershipAdvantage, EmpiricalMeanIsTraceableInHighDimension) {
  RandomSource prior(65), mech(66);
  const std::size_t n = 20, d = 200;
  std::vector<AttackScores> scores;
  std::vector<double> pooled_out;
  for (int t = 0; t < 50; ++t) {
    scores.push_back(run_attack_trial(empirical_mean_mechanism(), n, d, prior, mech));
    for (double z : scores.back().z_out) pooled_out.push_back(z);
  }
  std::nth_element(pooled_out.begin(),
                   pooled_out.begin() + pooled_out.size() / 2,
                   pooled_out.end());
  double threshold = pooled_out[pooled_out.size() / 2];
  MembershipRates rates = membership_advantage(scores, threshold);
  EXPECT_GT(rates.advantage, 0.3);
  EXPECT_GT(rates.tpr, rates.fpr);
}

TEST(MembershipAdvantage, RejectsEmptyInput) {
  std::vector<AttackScores> empty;
  EXPECT_THROW(membership_advantage(empty, 0.0), std::invalid_argument);
}

TEST(FingerprintingCheck, ReportsFixedStatisticLibrary) {
  RandomSource rng(71);
  std::vector<FingerprintEntry> report = fingerprinting_check(10, 2000, rng);
  ASSERT_EQ(report.size(), 6u);
  EXPECT_EQ(report[0].label, "empirical_mean");
  EXPECT_EQ(report[1].label, "noisy_mean(tau=0.25)");
  EXPECT_EQ(report[2].label, "noisy_mean(tau=1)");
  EXPECT_EQ(report[3].label, "noisy_mean(tau=4)");
  EXPECT_EQ(report[4].label, "constant_zero");
  EXPECT_EQ(report[5].label, "sign_of_sum");
}

TEST(FingerprintingCheck, KnownStatisticsMatchTheory) {
  RandomSource rng(72);
  const std::size_t n = 10, trials = 20000;
  std::vector<FingerprintEntry> report = fingerprinting_check(n, trials, rng);

  const FingerprintEntry& emp = report[0];
  // Empirical mean: correlation 2/3, squared error 2/(3n).
  EXPECT_NEAR(emp.lhs_estimate, 2.0 / 3.0, 0.067);
  EXPECT_NEAR(emp.mse_estimate, 2.0 / (3.0 * n), 0.01);

  const FingerprintEntry& zero = report[4];
  // Constant zero cannot correlate with the data; its error is E[mu^2] = 1/3.
  EXPECT_NEAR(zero.lhs_estimate, 0.0, 0.05);
  EXPECT_NEAR(zero.mse_estimate, 1.0 / 3.0, 0.02);

  for (const FingerprintEntry& entry : report) {
    EXPECT_TRUE(entry.bound_satisfied) << entry.label;
    EXPECT_GT(entry.slack, 0.0);
    EXPECT_GE(entry.lhs_estimate,
              1.0 / 3.0 - entry.mse_estimate - entry.slack);
  }
}

TEST(FingerprintingCheck, ValidatesArguments) {
  RandomSource rng(73);
  EXPECT_THROW(fingerprinting_check(0, 100, rng), std::invalid_argument);
  EXPECT_THROW(fingerprinting_check(10, 1, rng), std::invalid_argument);
}

TEST(PrivacyGapCheck, PrivateMechanismStaysWithinBudget) {
  const PrivacyParams p(1.0, 0.01);
  RandomSource rng(81);
  PrivacyGapReport report =
      privacy_gap_check(private_mean_mechanism(p), p, 100, 20, 300, rng);
  EXPECT_FALSE(report.violation);
  EXPECT_DOUBLE_EQ(report.rhs,
                   report.mean_z_out + 2.0 * p.epsilon() * std::sqrt(report.var_z_out) +
                       2.0 * p.delta() * report.max_abs_z_out);
  EXPECT_LE(report.max_abs_z_out, 4.0 * 20);
  EXPECT_GT(report.var_z_out, 0.0);
}

// Labeling the empirical mean with a tiny budget must be caught: its
// in-sample correlation is far larger than any (0.01, 1e-6)-private
// mechanism could produce.
TEST(PrivacyGapCheck, FlagsFalselyLabeledMechanism) {
  const PrivacyParams claimed(0.01, 1e-6);
  RandomSource rng(82);
  const std::size_t n = 50, d = 500;
  PrivacyGapReport report = privacy_gap_check(empirical_mean_mechanism(),
                                              claimed, n, d, 50, rng);
  EXPECT_TRUE(report.violation);
  // Mean per-row score concentrates near d * E[1 - mu^2] / n = 2d/(3n).
  EXPECT_NEAR(report.mean_z_in, 2.0 * d / (3.0 * n), 1.5);
  EXPECT_GT(report.mean_z_in, 10.0 * (report.rhs + report.slack));
}

TEST(PrivacyGapCheck, ValidatesArguments) {
  RandomSource rng(83);
  EXPECT_THROW(privacy_gap_check(empirical_mean_mechanism(),
                                 PrivacyParams(1.0, 0.01), 10, 5, 1, rng),
               std::invalid_argument);
}

}  // namespace
}  // namespace privstat
