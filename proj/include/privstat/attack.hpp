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

#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include "privstat/distributions.hpp"
#include "privstat/privacy.hpp"
#include "privstat/random.hpp"

namespace privstat {

// Tracing scores from one attack trial. z_in[k] is the score of scored row
// i_k against the mechanism's output on the real dataset; z_out[k] is the
// score of the same row against a re-run where that row was replaced by a
// fresh draw from the population. alpha_sq_sample is the realized squared
// l2 error of the in-sample run against the true mean.
struct AttackScores {
  std::vector<double> z_in;
  std::vector<double> z_out;
  std::vector<std::size_t> scored_indices;
  double alpha_sq_sample = 0.0;
};

// A mechanism the attack machinery can probe: maps a dataset over {-1,+1}^d
// to an estimate in [-1,1]^d. The true mean is passed alongside so that the
// oracle baseline can exist; honest mechanisms ignore it. epsilon/delta are
// the claimed privacy budget and are only meaningful when is_dp is set.
struct MechanismUnderTest {
  std::string label;
  bool is_dp = false;
  double epsilon = 0.0;
  double delta = 0.0;
  std::function<std::vector<double>(const MeanDataset&, std::span<const double>,
                                    RandomSource&)>
      run;
};

MechanismUnderTest empirical_mean_mechanism();
MechanismUnderTest private_mean_mechanism(const PrivacyParams& p);
MechanismUnderTest constant_zero_mechanism();
// Outputs the true mean itself: perfectly accurate, maximally non-private.
MechanismUnderTest oracle_mean_mechanism();

// In-sample tracing score <m_out - mu, row - mu>.
double score_in(std::span<const double> m_out, std::span<const std::int8_t> row,
                std::span<const double> mu);

// Out-of-sample score: re-runs the mechanism with row i replaced by
// fresh_row, then scores the original row i against that output. fresh_row
// must be an independent draw from the same population for the score's
// null-distribution guarantees to hold.
double score_out(const MechanismUnderTest& mechanism, const MeanDataset& data,
                 std::size_t i, std::span<const std::int8_t> fresh_row,
                 std::span<const double> mu, RandomSource& rng);

struct AttackTrialOptions {
  // Score only this many randomly chosen rows (0 means all n). Each scored
  // row still costs one full mechanism re-run for its z_out.
  std::size_t score_subsample = 0;
};

// One full tracing experiment: draws mu from the uniform prior on [-1,1]^d,
// draws the dataset, runs the mechanism once for the in-sample scores and
// once per scored row for the out-of-sample scores. prior_rng drives the
// population draws and the subsample choice; mech_rng drives the mechanism.
AttackScores run_attack_trial(const MechanismUnderTest& mechanism, std::size_t n,
                              std::size_t d, RandomSource& prior_rng,
                              RandomSource& mech_rng,
                              const AttackTrialOptions& options = {});

// One row of a fingerprinting correlation report: for a scalar statistic f,
// lhs estimates E[(f(X) - mu) * sum_i (X_i - mu)] and mse estimates
// E[(f(X) - mu)^2]. The correlation bound asserts lhs >= 1/3 - mse; slack is
// a 4-sigma Monte Carlo band on lhs + mse.
struct FingerprintEntry {
  std::string label;
  double lhs_estimate = 0.0;
  double mse_estimate = 0.0;
  double slack = 0.0;
  bool bound_satisfied = false;
};

// Monte Carlo check of the scalar correlation bound over a fixed library of
// statistics: empirical mean, clamped noisy means at several noise scales,
// constant zero, and sign of the sum.
std::vector<FingerprintEntry> fingerprinting_check(std::size_t n,
                                                   std::size_t trials,
                                                   RandomSource& rng);

// Two-sided summary of the in/out score gap for a mechanism claiming
// (epsilon, delta)-privacy. The right-hand side bounds what privacy permits:
// mean_z_out + 2*epsilon*sqrt(var_z_out) + 2*delta*max_abs_z_out, all three
// estimated from the out-of-sample scores themselves. violation is set when
// the in-sample mean exceeds that budget beyond the 4-sigma slack, which is
// evidence the privacy label is wrong.
struct PrivacyGapReport {
  double mean_z_in = 0.0;
  double mean_z_out = 0.0;
  double var_z_out = 0.0;
  double max_abs_z_out = 0.0;
  double rhs = 0.0;
  double slack = 0.0;
  bool violation = false;
};

PrivacyGapReport privacy_gap_check(const MechanismUnderTest& mechanism,
                                   const PrivacyParams& p, std::size_t n,
                                   std::size_t d, std::size_t trials,
                                   RandomSource& rng);

// Thresholding scores as a membership test: tpr is the fraction of
// in-sample scores above the threshold, fpr the same for out-of-sample
// scores, advantage their difference.
struct MembershipRates {
  double tpr = 0.0;
  double fpr = 0.0;
  double advantage = 0.0;
};

MembershipRates membership_advantage(std::span<const AttackScores> scores,
                                     double threshold);

}  // namespace privstat
