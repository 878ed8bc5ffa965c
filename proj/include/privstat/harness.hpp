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
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "privstat/random.hpp"

namespace privstat {

// One experiment description: a task, parameter grids, and execution
// settings. Grids are swept as a full cross product. An empty delta grid
// means delta = 1/n at each grid point, the largest value at which the
// privacy guarantee is still meaningful.
struct ExperimentConfig {
  std::string task;  // mean-estimate | cdf-estimate | attack | fingerprint-check | sweep

  std::vector<std::size_t> n_grid = {1000};
  std::vector<std::size_t> d_grid = {10};        // mean/attack dimension
  std::vector<std::size_t> domain_grid = {1024}; // CDF domain size D
  std::vector<double> eps_grid = {1.0};
  std::vector<double> delta_grid;                // empty: delta = 1/n

  std::size_t trials = 100;
  std::uint64_t seed = 1;
  std::string out_path;        // empty: no file written
  std::string format = "csv";  // csv | json
  std::size_t workers = 1;

  std::vector<std::string> mechanisms;  // attack task; empty: default set
  std::string cdf_dist = "uniform";     // uniform | geometric | point
  bool clamp = true;                    // mean task: clamp output to [-1,1]^d
  std::size_t score_subsample = 0;      // attack task: rows scored per trial (0: all)
  double threshold_quantile = 0.95;     // attack task: membership threshold

  // Throws std::invalid_argument naming the offending field.
  void validate() const;
};

// Parses a config from a JSON document. Grid fields accept a scalar or an
// array. Unknown keys are rejected so typos fail loudly.
ExperimentConfig config_from_json_text(const std::string& text);
ExperimentConfig config_from_json_file(const std::string& path);

// One trial's coordinates and metrics. Fields that a task does not produce
// stay unset: blank in CSV, omitted in JSON. seed is the exact stream key
// that reproduces the trial via RandomSource::from_stream_key.
struct TrialRecord {
  std::string task;
  std::string mechanism;
  std::size_t n = 0;
  std::size_t dim = 0;  // d for mean/attack, D for cdf, 1 for fingerprint
  double epsilon = 0.0;
  double delta = 0.0;
  std::size_t trial = 0;
  std::uint64_t seed = 0;

  std::optional<double> l2sq_private;
  std::optional<double> l2sq_empirical;
  std::optional<double> linf_private;
  std::optional<double> linf_empirical;
  std::optional<double> alpha_sq;
  std::optional<double> sum_z_in;
  std::optional<double> mean_z_out;
  std::optional<double> max_abs_z_out;
  std::optional<double> tpr;
  std::optional<double> fpr;
  std::optional<double> fp_lhs;
  std::optional<double> fp_mse;
  std::optional<double> fp_slack;
  std::optional<double> fp_bound_ok;  // 1.0 or 0.0

  // Wall-clock duration of the trial. Kept for interactive inspection;
  // deliberately never serialized so output files stay byte-stable across
  // machines and worker counts.
  double wall_time_ms = 0.0;

  // Equality over every serialized field (wall_time_ms excluded).
  bool same_serialized(const TrialRecord& other) const;
};

// Deterministic per-trial stream: derived by hashing the coordinates, not a
// positional index, so growing a grid never reseeds existing trials.
RandomSource trial_stream(std::uint64_t master_seed, std::string_view task,
                          std::size_t n, std::size_t dim, double eps,
                          double delta, std::size_t trial);

// Per grid point and trial: draws mu from the uniform prior, a dataset from
// the product distribution, and records squared l2 errors of the private
// and empirical means against mu.
std::vector<TrialRecord> run_mean_sweep(const ExperimentConfig& config);

// Per grid point and trial: draws a dataset from the configured discrete
// distribution and records l-infinity errors of the private and empirical
// CDFs against the population CDF.
std::vector<TrialRecord> run_cdf_sweep(const ExperimentConfig& config);

// Runs tracing trials for each configured mechanism. Mechanisms at the same
// grid point share trial streams, so they see identical datasets (paired
// comparison). After all trials of a grid point, in/out scores are pooled,
// the membership threshold is set at the configured quantile of the pooled
// out-scores, and each record gets its trial's tpr/fpr at that threshold.
std::vector<TrialRecord> run_attack_experiment(const ExperimentConfig& config);

// Runs the scalar correlation check for each n in the grid; one record per
// statistic in the library.
std::vector<TrialRecord> run_fingerprint_experiment(const ExperimentConfig& config);

// task = sweep: the mean and CDF sweeps back to back. Records are identical
// to running the two tasks separately with the same settings.
std::vector<TrialRecord> run_sweep(const ExperimentConfig& config);

// Dispatches on config.task.
std::vector<TrialRecord> run_experiment(const ExperimentConfig& config);

// Group summary keyed by (task, mechanism, n, dim, epsilon, delta), in
// first-seen order. stats holds named values: means and sample stds of the
// metrics present, plus task-specific derived quantities (closed-form error
// bounds, tracing budgets and floors, membership advantage).
struct AggregateRow {
  std::string task;
  std::string mechanism;
  std::size_t n = 0;
  std::size_t dim = 0;
  double epsilon = 0.0;
  double delta = 0.0;
  std::size_t trials = 0;
  std::vector<std::pair<std::string, double>> stats;
};

std::vector<AggregateRow> aggregate_records(const std::vector<TrialRecord>& records);

// Looks up a named stat in an aggregate row.
std::optional<double> aggregate_stat(const AggregateRow& row, std::string_view name);

// Closed-form reference rates used in aggregates and acceptance checks.
double mean_mse_bound(std::size_t d, std::size_t n, double eps, double delta);
double cdf_linf_bound(std::size_t domain, std::size_t n, double eps, double delta);

// Writes records as CSV (fixed header, one row per record) or a JSON array.
// Floats are written with 17 significant digits; output is byte-stable for
// identical record lists.
void write_records(const std::vector<TrialRecord>& records,
                   const std::string& path, const std::string& format);

// Reads back a JSON records file written by write_records.
std::vector<TrialRecord> read_records_json(const std::string& path);

// Empirical quantile (linear interpolation between order statistics).
double quantile(std::vector<double> values, double q);

}  // namespace privstat
