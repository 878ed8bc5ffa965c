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
#include <cstdio>
#include <numeric>
#include <stdexcept>
#include <utility>

#include "privstat/mean.hpp"

namespace privstat {
namespace {

std::string FormatBudget(const char* name, const PrivacyParams& p) {
  char buf[96];
  std::snprintf(buf, sizeof(buf), "%s(eps=%g delta=%g)", name, p.epsilon(),
                p.delta());
  return buf;
}

std::vector<double> RunChecked(const MechanismUnderTest& mechanism,
                               const MeanDataset& data,
                               std::span<const double> mu, RandomSource& rng) {
  std::vector<double> out = mechanism.run(data, mu, rng);
  if (out.size() != data.d) {
    throw std::runtime_error("attack: mechanism '" + mechanism.label +
                             "' returned dimension " + std::to_string(out.size()) +
                             ", expected " + std::to_string(data.d));
  }
  for (double v : out) {
    if (!(v >= -1.0 && v <= 1.0)) {
      throw std::runtime_error("attack: mechanism '" + mechanism.label +
                               "' returned a value outside [-1,1]");
    }
  }
  return out;
}

// Mean and sample standard deviation of per-trial summaries.
std::pair<double, double> MeanAndStd(const std::vector<double>& xs) {
  const double n = static_cast<double>(xs.size());
  double mean = std::accumulate(xs.begin(), xs.end(), 0.0) / n;
  double ss = 0.0;
  for (double x : xs) ss += (x - mean) * (x - mean);
  double sd = xs.size() > 1 ? std::sqrt(ss / (n - 1.0)) : 0.0;
  return {mean, sd};
}

}  // namespace

MechanismUnderTest empirical_mean_mechanism() {
  MechanismUnderTest m;
  m.label = "empirical_mean";
  m.run = [](const MeanDataset& data, std::span<const double>, RandomSource&) {
    return empirical_mean(data);
  };
  return m;
}

MechanismUnderTest private_mean_mechanism(const PrivacyParams& p) {
  MechanismUnderTest m;
  m.label = FormatBudget("private_mean", p);
  m.is_dp = true;
  m.epsilon = p.epsilon();
  m.delta = p.delta();
  m.run = [p](const MeanDataset& data, std::span<const double>,
              RandomSource& rng) { return private_mean(data, p, rng); };
  return m;
}

MechanismUnderTest constant_zero_mechanism() {
  MechanismUnderTest m;
  m.label = "constant_zero";
  m.is_dp = true;  // data-independent output satisfies any budget
  m.run = [](const MeanDataset& data, std::span<const double>, RandomSource&) {
    return std::vector<double>(data.d, 0.0);
  };
  return m;
}

MechanismUnderTest oracle_mean_mechanism() {
  MechanismUnderTest m;
  m.label = "oracle_mean";
  m.run = [](const MeanDataset& data, std::span<const double> mu, RandomSource&) {
    if (mu.size() != data.d) {
      throw std::invalid_argument("oracle_mean: true mean has dimension " +
                                  std::to_string(mu.size()) + ", expected " +
                                  std::to_string(data.d));
    }
    return std::vector<double>(mu.begin(), mu.end());
  };
  return m;
}

double score_in(std::span<const double> m_out, std::span<const std::int8_t> row,
                std::span<const double> mu) {
  if (m_out.size() != row.size() || m_out.size() != mu.size()) {
    throw std::invalid_argument("score_in: dimension mismatch (" +
                                std::to_string(m_out.size()) + ", " +
                                std::to_string(row.size()) + ", " +
                                std::to_string(mu.size()) + ")");
  }
  double z = 0.0;
  for (std::size_t j = 0; j < m_out.size(); ++j) {
    z += (m_out[j] - mu[j]) * (static_cast<double>(row[j]) - mu[j]);
  }
  return z;
}

double score_out(const MechanismUnderTest& mechanism, const MeanDataset& data,
                 std::size_t i, std::span<const std::int8_t> fresh_row,
                 std::span<const double> mu, RandomSource& rng) {
  const std::size_t n = data.rows();
  if (i >= n) {
    throw std::out_of_range("score_out: row " + std::to_string(i) +
                            " out of range for n=" + std::to_string(n));
  }
  if (fresh_row.size() != data.d) {
    throw std::invalid_argument("score_out: fresh row has dimension " +
                                std::to_string(fresh_row.size()) +
                                ", expected " + std::to_string(data.d));
  }
  MeanDataset swapped = data;
  std::copy(fresh_row.begin(), fresh_row.end(),
            swapped.entries.begin() + static_cast<std::ptrdiff_t>(i * data.d));
  std::vector<double> out = RunChecked(mechanism, swapped, mu, rng);
  return score_in(out, data.row(i), mu);
}

AttackScores run_attack_trial(const MechanismUnderTest& mechanism, std::size_t n,
                              std::size_t d, RandomSource& prior_rng,
                              RandomSource& mech_rng,
                              const AttackTrialOptions& options) {
  if (n == 0 || d == 0) {
    throw std::invalid_argument("run_attack_trial: n and d must be positive");
  }
  const ProductDistribution prior = sample_uniform_mean(d, prior_rng);
  const std::vector<double>& mu = prior.mean();
  MeanDataset data = sample_product(prior, n, prior_rng);

  std::vector<std::size_t> indices(n);
  std::iota(indices.begin(), indices.end(), std::size_t{0});
  std::size_t k = options.score_subsample;
  if (k == 0 || k > n) k = n;
  // Partial Fisher-Yates, then sort the chosen prefix so downstream records
  // are in row order.
  for (std::size_t t = 0; t < k; ++t) {
    std::size_t pick = t + static_cast<std::size_t>(prior_rng.uniform01() *
                                                    static_cast<double>(n - t));
    pick = std::min(pick, n - 1);
    std::swap(indices[t], indices[pick]);
  }
  indices.resize(k);
  std::sort(indices.begin(), indices.end());

  AttackScores scores;
  scores.scored_indices = indices;
  scores.z_in.reserve(k);
  scores.z_out.reserve(k);

  std::vector<double> in_out = RunChecked(mechanism, data, mu, mech_rng);
  scores.alpha_sq_sample = l2sq_error(in_out, mu);
  for (std::size_t i : indices) {
    scores.z_in.push_back(score_in(in_out, data.row(i), mu));
  }

  // Swap each scored row out, re-run, score the original row, swap back.
  // Equivalent to score_out on a copy, without the per-row dataset copy.
  std::vector<std::int8_t> original(d);
  for (std::size_t i : indices) {
    auto row_begin = data.entries.begin() + static_cast<std::ptrdiff_t>(i * d);
    std::copy(row_begin, row_begin + static_cast<std::ptrdiff_t>(d),
              original.begin());
    for (std::size_t j = 0; j < d; ++j) {
      double p_plus = 0.5 * (1.0 + mu[j]);
      data.entries[i * d + j] = prior_rng.uniform01() < p_plus ? 1 : -1;
    }
    std::vector<double> out = RunChecked(mechanism, data, mu, mech_rng);
    scores.z_out.push_back(score_in(out, original, mu));
    std::copy(original.begin(), original.end(), row_begin);
  }
  return scores;
}

std::vector<FingerprintEntry> fingerprinting_check(std::size_t n,
                                                   std::size_t trials,
                                                   RandomSource& rng) {
  if (n == 0 || trials < 2) {
    throw std::invalid_argument(
        "fingerprinting_check: need n >= 1 and trials >= 2");
  }

  struct Statistic {
    std::string label;
    std::function<double(std::span<const std::int8_t>, RandomSource&)> eval;
  };
  auto noisy_mean = [](double tau) {
    return [tau](std::span<const std::int8_t> xs, RandomSource& r) {
      double sum = 0.0;
      for (auto x : xs) sum += x;
      double v = sum / static_cast<double>(xs.size()) + tau * r.normal();
      return std::clamp(v, -1.0, 1.0);
    };
  };
  const std::vector<Statistic> library = {
      {"empirical_mean",
       [](std::span<const std::int8_t> xs, RandomSource&) {
         double sum = 0.0;
         for (auto x : xs) sum += x;
         return sum / static_cast<double>(xs.size());
       }},
      {"noisy_mean(tau=0.25)", noisy_mean(0.25)},
      {"noisy_mean(tau=1)", noisy_mean(1.0)},
      {"noisy_mean(tau=4)", noisy_mean(4.0)},
      {"constant_zero",
       [](std::span<const std::int8_t>, RandomSource&) { return 0.0; }},
      {"sign_of_sum",
       [](std::span<const std::int8_t> xs, RandomSource&) {
         int sum = 0;
         for (auto x : xs) sum += x;
         return sum > 0 ? 1.0 : (sum < 0 ? -1.0 : 0.0);
       }},
  };

  std::vector<std::vector<double>> lhs_samples(library.size());
  std::vector<std::vector<double>> mse_samples(library.size());
  for (auto& v : lhs_samples) v.reserve(trials);
  for (auto& v : mse_samples) v.reserve(trials);

  std::vector<std::int8_t> xs(n);
  for (std::size_t t = 0; t < trials; ++t) {
    double mu = rng.uniform(-1.0, 1.0);
    double centered_sum = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      xs[i] = rng.uniform01() < 0.5 * (1.0 + mu) ? 1 : -1;
      centered_sum += static_cast<double>(xs[i]) - mu;
    }
    for (std::size_t s = 0; s < library.size(); ++s) {
      double dev = library[s].eval(xs, rng) - mu;
      lhs_samples[s].push_back(dev * centered_sum);
      mse_samples[s].push_back(dev * dev);
    }
  }

  std::vector<FingerprintEntry> report;
  report.reserve(library.size());
  for (std::size_t s = 0; s < library.size(); ++s) {
    auto [lhs, lhs_sd] = MeanAndStd(lhs_samples[s]);
    auto [mse, mse_sd] = MeanAndStd(mse_samples[s]);
    // Band for lhs + mse jointly, since the bound constrains their sum.
    std::vector<double> combined(trials);
    for (std::size_t t = 0; t < trials; ++t) {
      combined[t] = lhs_samples[s][t] + mse_samples[s][t];
    }
    auto [_, comb_sd] = MeanAndStd(combined);
    double slack = 4.0 * comb_sd / std::sqrt(static_cast<double>(trials));
    FingerprintEntry entry;
    entry.label = library[s].label;
    entry.lhs_estimate = lhs;
    entry.mse_estimate = mse;
    entry.slack = slack;
    entry.bound_satisfied = lhs >= 1.0 / 3.0 - mse - slack;
    report.push_back(std::move(entry));
  }
  return report;
}

PrivacyGapReport privacy_gap_check(const MechanismUnderTest& mechanism,
                                   const PrivacyParams& p, std::size_t n,
                                   std::size_t d, std::size_t trials,
                                   RandomSource& rng) {
  if (trials < 2) {
    throw std::invalid_argument("privacy_gap_check: need trials >= 2");
  }
  std::vector<double> trial_mean_in(trials);
  std::vector<double> trial_mean_out(trials);
  double sum_out = 0.0;
  double sumsq_out = 0.0;
  double max_abs_out = 0.0;
  std::size_t count_out = 0;

  for (std::size_t t = 0; t < trials; ++t) {
    RandomSource prior = rng.substream(2 * t);
    RandomSource mech = rng.substream(2 * t + 1);
    AttackScores scores = run_attack_trial(mechanism, n, d, prior, mech);
    double in_acc = 0.0;
    double out_acc = 0.0;
    for (double z : scores.z_in) in_acc += z;
    for (double z : scores.z_out) {
      out_acc += z;
      sum_out += z;
      sumsq_out += z * z;
      max_abs_out = std::max(max_abs_out, std::abs(z));
      ++count_out;
    }
    trial_mean_in[t] = in_acc / static_cast<double>(scores.z_in.size());
    trial_mean_out[t] = out_acc / static_cast<double>(scores.z_out.size());
  }

  PrivacyGapReport report;
  auto [mean_in, sd_in] = MeanAndStd(trial_mean_in);
  auto [mean_out, sd_out] = MeanAndStd(trial_mean_out);
  report.mean_z_in = mean_in;
  report.mean_z_out = mean_out;
  double m = static_cast<double>(count_out);
  report.var_z_out = std::max(0.0, (sumsq_out - sum_out * sum_out / m) / (m - 1.0));
  report.max_abs_z_out = max_abs_out;
  report.rhs = report.mean_z_out + 2.0 * p.epsilon() * std::sqrt(report.var_z_out) +
               2.0 * p.delta() * report.max_abs_z_out;
  double t_count = static_cast<double>(trials);
  report.slack = 4.0 * (sd_in + sd_out) / std::sqrt(t_count);
  report.violation = report.mean_z_in > report.rhs + report.slack;
  return report;
}

MembershipRates membership_advantage(std::span<const AttackScores> scores,
                                     double threshold) {
  std::size_t in_total = 0;
  std::size_t out_total = 0;
  std::size_t in_hits = 0;
  std::size_t out_hits = 0;
  for (const AttackScores& s : scores) {
    for (double z : s.z_in) {
      ++in_total;
      if (z > threshold) ++in_hits;
    }
    for (double z : s.z_out) {
      ++out_total;
      if (z > threshold) ++out_hits;
    }
  }
  if (in_total == 0 || out_total == 0) {
    throw std::invalid_argument("membership_advantage: no scores provided");
  }
  MembershipRates rates;
  rates.tpr = static_cast<double>(in_hits) / static_cast<double>(in_total);
  rates.fpr = static_cast<double>(out_hits) / static_cast<double>(out_total);
  rates.advantage = rates.tpr - rates.fpr;
  return rates;
}

}  // namespace privstat
