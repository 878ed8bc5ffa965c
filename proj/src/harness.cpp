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

#include "privstat/harness.hpp"

#include <algorithm>
#include <atomic>
#include <bit>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <mutex>
#include <numeric>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "json.hpp"

#include "privstat/attack.hpp"
#include "privstat/cdf.hpp"
#include "privstat/distributions.hpp"
#include "privstat/mean.hpp"
#include "privstat/privacy.hpp"

namespace privstat {
namespace {

using nlohmann::json;

const std::vector<std::string> kTasks = {"mean-estimate", "cdf-estimate", "attack",
                                         "fingerprint-check", "sweep"};
const std::vector<std::string> kMechanismNames = {"empirical_mean", "private_mean",
                                                  "constant_zero", "oracle_mean"};

bool Contains(const std::vector<std::string>& xs, const std::string& x) {
  return std::find(xs.begin(), xs.end(), x) != xs.end();
}

std::vector<double> EffectiveDeltas(const ExperimentConfig& config, std::size_t n) {
  if (!config.delta_grid.empty()) return config.delta_grid;
  return {1.0 / static_cast<double>(n)};
}

// Runs body(t) for t in [0, trials), spreading trials over workers. Each
// trial writes only its own output slot, so scheduling order is invisible
// in the results. The first exception, if any, is rethrown after join.
void RunTrials(std::size_t trials, std::size_t workers,
               const std::function<void(std::size_t)>& body) {
  if (workers <= 1 || trials <= 1) {
    for (std::size_t t = 0; t < trials; ++t) body(t);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr first_error;
  std::mutex error_mutex;
  auto worker = [&] {
    for (;;) {
      std::size_t t = next.fetch_add(1);
      if (t >= trials) return;
      try {
        body(t);
      } catch (...) {
        std::lock_guard<std::mutex> lock(error_mutex);
        if (!first_error) first_error = std::current_exception();
        return;
      }
    }
  };
  std::vector<std::thread> pool;
  std::size_t count = std::min(workers, trials);
  pool.reserve(count);
  for (std::size_t w = 0; w < count; ++w) pool.emplace_back(worker);
  for (auto& th : pool) th.join();
  if (first_error) std::rethrow_exception(first_error);
}

double ElapsedMs(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() -
                                                   start)
      .count();
}

DiscreteDistribution MakeCdfDistribution(const std::string& name, std::size_t domain) {
  if (name == "uniform") return DiscreteDistribution::uniform(domain);
  if (name == "geometric") return DiscreteDistribution::geometric_like(domain, 0.9);
  if (name == "point") return DiscreteDistribution::point_mass((domain + 1) / 2, domain);
  throw std::invalid_argument("config: unknown cdf_dist '" + name + "'");
}

MechanismUnderTest MakeMechanism(const std::string& name, const PrivacyParams& p) {
  if (name == "empirical_mean") return empirical_mean_mechanism();
  if (name == "private_mean") return private_mean_mechanism(p);
  if (name == "constant_zero") return constant_zero_mechanism();
  if (name == "oracle_mean") return oracle_mean_mechanism();
  throw std::invalid_argument("config: unknown mechanism '" + name + "'");
}

std::string FormatDouble(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

void JsonEscapeTo(std::string& out, const std::string& s) {
  for (char c : s) {
    switch (c) {
      case '"': out += "\\\""; break;
      case '\\': out += "\\\\"; break;
      case '\n': out += "\\n"; break;
      case '\t': out += "\\t"; break;
      case '\r': out += "\\r"; break;
      default:
        if (static_cast<unsigned char>(c) < 0x20) {
          char buf[8];
          std::snprintf(buf, sizeof(buf), "\\u%04x", c);
          out += buf;
        } else {
          out += c;
        }
    }
  }
}

struct MetricField {
  const char* name;
  std::optional<double> TrialRecord::* member;
};

constexpr MetricField kMetricFields[] = {
    {"l2sq_private", &TrialRecord::l2sq_private},
    {"l2sq_empirical", &TrialRecord::l2sq_empirical},
    {"linf_private", &TrialRecord::linf_private},
    {"linf_empirical", &TrialRecord::linf_empirical},
    {"alpha_sq", &TrialRecord::alpha_sq},
    {"sum_z_in", &TrialRecord::sum_z_in},
    {"mean_z_out", &TrialRecord::mean_z_out},
    {"max_abs_z_out", &TrialRecord::max_abs_z_out},
    {"tpr", &TrialRecord::tpr},
    {"fpr", &TrialRecord::fpr},
    {"fp_lhs", &TrialRecord::fp_lhs},
    {"fp_mse", &TrialRecord::fp_mse},
    {"fp_slack", &TrialRecord::fp_slack},
    {"fp_bound_ok", &TrialRecord::fp_bound_ok},
};

constexpr const char* kCsvHeader =
    "task,mechanism,n,dim,epsilon,delta,trial,seed,l2sq_private,l2sq_empirical,"
    "linf_private,linf_empirical,alpha_sq,sum_z_in,mean_z_out,max_abs_z_out,"
    "tpr,fpr,fp_lhs,fp_mse,fp_slack,fp_bound_ok";

std::pair<double, double> MeanAndStd(const std::vector<double>& xs) {
  const double m = static_cast<double>(xs.size());
  double mean = std::accumulate(xs.begin(), xs.end(), 0.0) / m;
  double ss = 0.0;
  for (double x : xs) ss += (x - mean) * (x - mean);
  double sd = xs.size() > 1 ? std::sqrt(ss / (m - 1.0)) : 0.0;
  return {mean, sd};
}

}  // namespace

void ExperimentConfig::validate() const {
  if (!Contains(kTasks, task)) {
    throw std::invalid_argument("config: task must be one of mean-estimate, "
                                "cdf-estimate, attack, fingerprint-check, sweep; got '" +
                                task + "'");
  }
  if (n_grid.empty()) throw std::invalid_argument("config: n grid is empty");
  if (eps_grid.empty()) throw std::invalid_argument("config: eps grid is empty");
  for (std::size_t n : n_grid) {
    if (n == 0) throw std::invalid_argument("config: n must be >= 1");
  }
  const bool uses_d = task == "mean-estimate" || task == "attack" || task == "sweep";
  const bool uses_domain = task == "cdf-estimate" || task == "sweep";
  if (uses_d) {
    if (d_grid.empty()) throw std::invalid_argument("config: d grid is empty");
    for (std::size_t d : d_grid) {
      if (d == 0) throw std::invalid_argument("config: d must be >= 1");
    }
  }
  if (uses_domain) {
    if (domain_grid.empty()) throw std::invalid_argument("config: D grid is empty");
    for (std::size_t domain : domain_grid) {
      if (domain < 2) throw std::invalid_argument("config: D must be >= 2");
    }
  }
  for (double e : eps_grid) {
    if (!(e > 0.0) || !std::isfinite(e)) {
      throw std::invalid_argument("config: eps values must be positive and finite");
    }
  }
  for (double del : delta_grid) {
    if (!(del > 0.0 && del < 1.0)) {
      throw std::invalid_argument("config: delta values must lie in (0,1)");
    }
  }
  if (trials == 0) throw std::invalid_argument("config: trials must be >= 1");
  if (workers == 0) throw std::invalid_argument("config: workers must be >= 1");
  if (format != "csv" && format != "json") {
    throw std::invalid_argument("config: format must be csv or json; got '" + format +
                                "'");
  }
  if (cdf_dist != "uniform" && cdf_dist != "geometric" && cdf_dist != "point") {
    throw std::invalid_argument("config: cdf_dist must be uniform, geometric, or "
                                "point; got '" + cdf_dist + "'");
  }
  if (!(threshold_quantile >= 0.0 && threshold_quantile <= 1.0)) {
    throw std::invalid_argument("config: threshold_quantile must lie in [0,1]");
  }
  for (const std::string& m : mechanisms) {
    if (!Contains(kMechanismNames, m)) {
      throw std::invalid_argument("config: unknown mechanism '" + m + "'");
    }
  }
}

namespace {

template <typename T>
std::vector<T> GridFromJson(const json& j, const char* field) {
  std::vector<T> out;
  try {
    if (j.is_array()) {
      for (const auto& v : j) out.push_back(v.get<T>());
    } else {
      out.push_back(j.get<T>());
    }
  } catch (const json::exception&) {
    throw std::invalid_argument(std::string("config: field '") + field +
                                "' has the wrong type");
  }
  return out;
}

template <typename T>
T ScalarFromJson(const json& j, const char* field) {
  try {
    return j.get<T>();
  } catch (const json::exception&) {
    throw std::invalid_argument(std::string("config: field '") + field +
                                "' has the wrong type");
  }
}

}  // namespace

ExperimentConfig config_from_json_text(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception& e) {
    throw std::invalid_argument(std::string("config: invalid JSON: ") + e.what());
  }
  if (!j.is_object()) throw std::invalid_argument("config: document is not an object");

  ExperimentConfig config;
  for (const auto& [key, value] : j.items()) {
    if (key == "task") config.task = ScalarFromJson<std::string>(value, "task");
    else if (key == "n") config.n_grid = GridFromJson<std::size_t>(value, "n");
    else if (key == "d") config.d_grid = GridFromJson<std::size_t>(value, "d");
    else if (key == "D") config.domain_grid = GridFromJson<std::size_t>(value, "D");
    else if (key == "eps") config.eps_grid = GridFromJson<double>(value, "eps");
    else if (key == "delta") config.delta_grid = GridFromJson<double>(value, "delta");
    else if (key == "trials") config.trials = ScalarFromJson<std::size_t>(value, "trials");
    else if (key == "seed") config.seed = ScalarFromJson<std::uint64_t>(value, "seed");
    else if (key == "out") config.out_path = ScalarFromJson<std::string>(value, "out");
    else if (key == "format") config.format = ScalarFromJson<std::string>(value, "format");
    else if (key == "workers") config.workers = ScalarFromJson<std::size_t>(value, "workers");
    else if (key == "mechanisms")
      config.mechanisms = GridFromJson<std::string>(value, "mechanisms");
    else if (key == "cdf_dist") config.cdf_dist = ScalarFromJson<std::string>(value, "cdf_dist");
    else if (key == "clamp") config.clamp = ScalarFromJson<bool>(value, "clamp");
    else if (key == "score_subsample")
      config.score_subsample = ScalarFromJson<std::size_t>(value, "score_subsample");
    else if (key == "threshold_quantile")
      config.threshold_quantile = ScalarFromJson<double>(value, "threshold_quantile");
    else throw std::invalid_argument("config: unknown field '" + key + "'");
  }
  return config;
}

ExperimentConfig config_from_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("config: cannot open '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return config_from_json_text(buf.str());
}

bool TrialRecord::same_serialized(const TrialRecord& other) const {
  auto metrics_equal = [&] {
    for (const MetricField& f : kMetricFields) {
      if (this->*(f.member) != other.*(f.member)) return false;
    }
    return true;
  };
  return task == other.task && mechanism == other.mechanism && n == other.n &&
         dim == other.dim && epsilon == other.epsilon && delta == other.delta &&
         trial == other.trial && seed == other.seed && metrics_equal();
}

RandomSource trial_stream(std::uint64_t master_seed, std::string_view task,
                          std::size_t n, std::size_t dim, double eps,
                          double delta, std::size_t trial) {
  // FNV-1a over the task name keeps the derivation order-free: a stream is
  // a pure function of the coordinates, never of grid enumeration order.
  std::uint64_t task_hash = 1469598103934665603ULL;
  for (char c : task) {
    task_hash ^= static_cast<unsigned char>(c);
    task_hash *= 1099511628211ULL;
  }
  return RandomSource(master_seed)
      .substream(task_hash)
      .substream(static_cast<std::uint64_t>(n))
      .substream(static_cast<std::uint64_t>(dim))
      .substream(std::bit_cast<std::uint64_t>(eps))
      .substream(std::bit_cast<std::uint64_t>(delta))
      .substream(static_cast<std::uint64_t>(trial));
}

std::vector<TrialRecord> run_mean_sweep(const ExperimentConfig& config) {
  config.validate();
  const std::string label = config.clamp ? "private_mean" : "private_mean_noclamp";
  std::vector<TrialRecord> records;
  for (std::size_t n : config.n_grid) {
    for (std::size_t d : config.d_grid) {
      for (double eps : config.eps_grid) {
        for (double delta : EffectiveDeltas(config, n)) {
          const PrivacyParams p(eps, delta);
          std::vector<TrialRecord> slot(config.trials);
          RunTrials(config.trials, config.workers, [&](std::size_t t) {
            auto start = std::chrono::steady_clock::now();
            RandomSource src =
                trial_stream(config.seed, "mean-estimate", n, d, eps, delta, t);
            TrialRecord rec;
            rec.task = "mean-estimate";
            rec.mechanism = label;
            rec.n = n;
            rec.dim = d;
            rec.epsilon = eps;
            rec.delta = delta;
            rec.trial = t;
            rec.seed = src.stream_key();
            const ProductDistribution prior = sample_uniform_mean(d, src);
            const std::vector<double>& mu = prior.mean();
            MeanDataset data = sample_product(prior, n, src);
            std::vector<double> emp = empirical_mean(data);
            PrivateMeanOptions options;
            options.clamp = config.clamp;
            std::vector<double> priv = private_mean(data, p, src, options);
            rec.l2sq_private = l2sq_error(priv, mu);
            rec.l2sq_empirical = l2sq_error(emp, mu);
            rec.wall_time_ms = ElapsedMs(start);
            slot[t] = std::move(rec);
          });
          for (auto& rec : slot) records.push_back(std::move(rec));
        }
      }
    }
  }
  return records;
}

std::vector<TrialRecord> run_cdf_sweep(const ExperimentConfig& config) {
  config.validate();
  std::vector<TrialRecord> records;
  for (std::size_t n : config.n_grid) {
    for (std::size_t domain : config.domain_grid) {
      const DiscreteDistribution dist = MakeCdfDistribution(config.cdf_dist, domain);
      const CdfVector truth = true_cdf(dist);
      for (double eps : config.eps_grid) {
        for (double delta : EffectiveDeltas(config, n)) {
          const PrivacyParams p(eps, delta);
          std::vector<TrialRecord> slot(config.trials);
          RunTrials(config.trials, config.workers, [&](std::size_t t) {
            auto start = std::chrono::steady_clock::now();
            RandomSource src =
                trial_stream(config.seed, "cdf-estimate", n, domain, eps, delta, t);
            TrialRecord rec;
            rec.task = "cdf-estimate";
            rec.mechanism = "private_cdf";
            rec.n = n;
            rec.dim = domain;
            rec.epsilon = eps;
            rec.delta = delta;
            rec.trial = t;
            rec.seed = src.stream_key();
            DiscreteDataset data = sample_discrete(dist, n, src);
            CdfVector emp = empirical_cdf(data);
            CdfVector priv = private_cdf(data, p, src);
            rec.linf_private = linf_distance(priv, truth);
            rec.linf_empirical = linf_distance(emp, truth);
            rec.wall_time_ms = ElapsedMs(start);
            slot[t] = std::move(rec);
          });
          for (auto& rec : slot) records.push_back(std::move(rec));
        }
      }
    }
  }
  return records;
}

std::vector<TrialRecord> run_attack_experiment(const ExperimentConfig& config) {
  config.validate();
  std::vector<std::string> names = config.mechanisms;
  if (names.empty()) names = {"empirical_mean", "private_mean", "constant_zero"};

  std::vector<TrialRecord> records;
  for (std::size_t n : config.n_grid) {
    for (std::size_t d : config.d_grid) {
      for (double eps : config.eps_grid) {
        for (double delta : EffectiveDeltas(config, n)) {
          const PrivacyParams p(eps, delta);
          for (const std::string& name : names) {
            const MechanismUnderTest mechanism = MakeMechanism(name, p);
            std::vector<TrialRecord> slot(config.trials);
            std::vector<AttackScores> scores(config.trials);
            RunTrials(config.trials, config.workers, [&](std::size_t t) {
              auto start = std::chrono::steady_clock::now();
              RandomSource src =
                  trial_stream(config.seed, "attack", n, d, eps, delta, t);
              RandomSource prior = src.substream(0);
              RandomSource mech = src.substream(1);
              AttackTrialOptions options;
              options.score_subsample = config.score_subsample;
              scores[t] = run_attack_trial(mechanism, n, d, prior, mech, options);
              TrialRecord rec;
              rec.task = "attack";
              rec.mechanism = mechanism.label;
              rec.n = n;
              rec.dim = d;
              rec.epsilon = eps;
              rec.delta = delta;
              rec.trial = t;
              rec.seed = src.stream_key();
              rec.alpha_sq = scores[t].alpha_sq_sample;
              double sum_in = 0.0;
              for (double z : scores[t].z_in) sum_in += z;
              rec.sum_z_in = sum_in;
              double sum_out = 0.0;
              double max_abs = 0.0;
              for (double z : scores[t].z_out) {
                sum_out += z;
                max_abs = std::max(max_abs, std::abs(z));
              }
              rec.mean_z_out = sum_out / static_cast<double>(scores[t].z_out.size());
              rec.max_abs_z_out = max_abs;
              rec.wall_time_ms = ElapsedMs(start);
              slot[t] = std::move(rec);
            });
            // Membership threshold from the pooled out-scores of this grid
            // point, then per-trial rates at that common threshold.
            std::vector<double> pooled_out;
            for (const AttackScores& s : scores) {
              pooled_out.insert(pooled_out.end(), s.z_out.begin(), s.z_out.end());
            }
            const double threshold =
                quantile(std::move(pooled_out), config.threshold_quantile);
            for (std::size_t t = 0; t < config.trials; ++t) {
              std::size_t in_hits = 0;
              std::size_t out_hits = 0;
              for (double z : scores[t].z_in) in_hits += z > threshold ? 1 : 0;
              for (double z : scores[t].z_out) out_hits += z > threshold ? 1 : 0;
              slot[t].tpr = static_cast<double>(in_hits) /
                            static_cast<double>(scores[t].z_in.size());
              slot[t].fpr = static_cast<double>(out_hits) /
                            static_cast<double>(scores[t].z_out.size());
            }
            for (auto& rec : slot) records.push_back(std::move(rec));
          }
        }
      }
    }
  }
  return records;
}

std::vector<TrialRecord> run_fingerprint_experiment(const ExperimentConfig& config) {
  config.validate();
  std::vector<TrialRecord> records;
  for (std::size_t n : config.n_grid) {
    auto start = std::chrono::steady_clock::now();
    RandomSource src = trial_stream(config.seed, "fingerprint-check", n, 1, 0.0, 0.0, 0);
    const std::uint64_t key = src.stream_key();
    std::vector<FingerprintEntry> report = fingerprinting_check(n, config.trials, src);
    const double elapsed = ElapsedMs(start);
    for (const FingerprintEntry& entry : report) {
      TrialRecord rec;
      rec.task = "fingerprint-check";
      rec.mechanism = entry.label;
      rec.n = n;
      rec.dim = 1;
      rec.trial = 0;
      rec.seed = key;
      rec.fp_lhs = entry.lhs_estimate;
      rec.fp_mse = entry.mse_estimate;
      rec.fp_slack = entry.slack;
      rec.fp_bound_ok = entry.bound_satisfied ? 1.0 : 0.0;
      rec.wall_time_ms = elapsed;
      records.push_back(std::move(rec));
    }
  }
  return records;
}

std::vector<TrialRecord> run_sweep(const ExperimentConfig& config) {
  config.validate();
  ExperimentConfig mean_config = config;
  mean_config.task = "mean-estimate";
  ExperimentConfig cdf_config = config;
  cdf_config.task = "cdf-estimate";
  std::vector<TrialRecord> records = run_mean_sweep(mean_config);
  std::vector<TrialRecord> cdf_records = run_cdf_sweep(cdf_config);
  records.insert(records.end(), std::make_move_iterator(cdf_records.begin()),
                 std::make_move_iterator(cdf_records.end()));
  return records;
}

std::vector<TrialRecord> run_experiment(const ExperimentConfig& config) {
  config.validate();
  if (config.task == "mean-estimate") return run_mean_sweep(config);
  if (config.task == "cdf-estimate") return run_cdf_sweep(config);
  if (config.task == "attack") return run_attack_experiment(config);
  if (config.task == "fingerprint-check") return run_fingerprint_experiment(config);
  return run_sweep(config);
}

std::vector<AggregateRow> aggregate_records(const std::vector<TrialRecord>& records) {
  struct Key {
    std::string task;
    std::string mechanism;
    std::size_t n;
    std::size_t dim;
    double epsilon;
    double delta;
    bool operator==(const Key&) const = default;
  };
  std::vector<Key> keys;
  std::vector<std::vector<const TrialRecord*>> groups;
  for (const TrialRecord& rec : records) {
    Key key{rec.task, rec.mechanism, rec.n, rec.dim, rec.epsilon, rec.delta};
    auto it = std::find(keys.begin(), keys.end(), key);
    if (it == keys.end()) {
      keys.push_back(key);
      groups.emplace_back();
      it = keys.end() - 1;
    }
    groups[static_cast<std::size_t>(it - keys.begin())].push_back(&rec);
  }

  std::vector<AggregateRow> rows;
  rows.reserve(groups.size());
  for (std::size_t g = 0; g < groups.size(); ++g) {
    const Key& key = keys[g];
    AggregateRow row;
    row.task = key.task;
    row.mechanism = key.mechanism;
    row.n = key.n;
    row.dim = key.dim;
    row.epsilon = key.epsilon;
    row.delta = key.delta;
    row.trials = groups[g].size();

    for (const MetricField& field : kMetricFields) {
      std::vector<double> values;
      for (const TrialRecord* rec : groups[g]) {
        if (const auto& v = rec->*(field.member)) values.push_back(*v);
      }
      if (values.empty()) continue;
      auto [mean, sd] = MeanAndStd(values);
      row.stats.emplace_back(std::string("mean_") + field.name, mean);
      if (values.size() > 1) {
        row.stats.emplace_back(std::string("std_") + field.name, sd);
      }
    }

    const double d = static_cast<double>(key.dim);
    const double n = static_cast<double>(key.n);
    if (key.task == "mean-estimate") {
      row.stats.emplace_back("mse_bound",
                             mean_mse_bound(key.dim, key.n, key.epsilon, key.delta));
      row.stats.emplace_back("emp_rate_uniform_prior", 2.0 * d / (3.0 * n));
    } else if (key.task == "cdf-estimate") {
      row.stats.emplace_back("linf_bound",
                             cdf_linf_bound(key.dim, key.n, key.epsilon, key.delta));
      auto mp = aggregate_stat(row, "mean_linf_private");
      auto me = aggregate_stat(row, "mean_linf_empirical");
      if (mp && me) {
        row.stats.emplace_back("gap_private_minus_empirical", *mp - *me);
      }
    } else if (key.task == "attack") {
      if (auto ma = aggregate_stat(row, "mean_alpha_sq")) {
        const double alpha_bar = std::sqrt(std::max(0.0, *ma));
        row.stats.emplace_back("alpha_bar", alpha_bar);
        row.stats.emplace_back("claim3_floor", d / 3.0 - *ma);
        if (key.epsilon > 0.0) {
          row.stats.emplace_back("claim2_budget",
                                 4.0 * n * alpha_bar * key.epsilon +
                                     8.0 * n * key.delta * d);
          row.stats.emplace_back(
              "minimax_floor",
              std::min(d / 6.0, d * d / (2304.0 * key.epsilon * key.epsilon * n * n)));
        }
      }
      auto mt = aggregate_stat(row, "mean_tpr");
      auto mf = aggregate_stat(row, "mean_fpr");
      if (mt && mf) row.stats.emplace_back("advantage", *mt - *mf);
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

std::optional<double> aggregate_stat(const AggregateRow& row, std::string_view name) {
  for (const auto& [key, value] : row.stats) {
    if (key == name) return value;
  }
  return std::nullopt;
}

double mean_mse_bound(std::size_t d, std::size_t n, double eps, double delta) {
  const double dd = static_cast<double>(d);
  const double nn = static_cast<double>(n);
  return dd / nn + 8.0 * dd * dd * std::log(2.0 / delta) / (eps * eps * nn * nn);
}

double cdf_linf_bound(std::size_t domain, std::size_t n, double eps, double delta) {
  const double nn = static_cast<double>(n);
  const double levels = std::log2(static_cast<double>(domain));
  return std::sqrt(1.0 / nn) +
         3.0 * std::pow(levels, 1.5) * std::sqrt(std::log(1.0 / delta)) / (eps * nn);
}

void write_records(const std::vector<TrialRecord>& records, const std::string& path,
                   const std::string& format) {
  if (records.empty()) {
    throw std::invalid_argument("write_records: record list is empty");
  }
  if (format != "csv" && format != "json") {
    throw std::invalid_argument("write_records: format must be csv or json; got '" +
                                format + "'");
  }
  std::string out;
  if (format == "csv") {
    out += kCsvHeader;
    out += '\n';
    char buf[64];
    for (const TrialRecord& rec : records) {
      out += rec.task;
      out += ',';
      out += rec.mechanism;
      std::snprintf(buf, sizeof(buf), ",%zu,%zu,", rec.n, rec.dim);
      out += buf;
      out += FormatDouble(rec.epsilon);
      out += ',';
      out += FormatDouble(rec.delta);
      std::snprintf(buf, sizeof(buf), ",%zu,%llu", rec.trial,
                    static_cast<unsigned long long>(rec.seed));
      out += buf;
      for (const MetricField& field : kMetricFields) {
        out += ',';
        if (const auto& v = rec.*(field.member)) out += FormatDouble(*v);
      }
      out += '\n';
    }
  } else {
    out += "[\n";
    for (std::size_t i = 0; i < records.size(); ++i) {
      const TrialRecord& rec = records[i];
      out += "  {\"task\": \"";
      JsonEscapeTo(out, rec.task);
      out += "\", \"mechanism\": \"";
      JsonEscapeTo(out, rec.mechanism);
      out += "\"";
      char buf[96];
      std::snprintf(buf, sizeof(buf), ", \"n\": %zu, \"dim\": %zu", rec.n, rec.dim);
      out += buf;
      out += ", \"epsilon\": " + FormatDouble(rec.epsilon);
      out += ", \"delta\": " + FormatDouble(rec.delta);
      std::snprintf(buf, sizeof(buf), ", \"trial\": %zu, \"seed\": %llu", rec.trial,
                    static_cast<unsigned long long>(rec.seed));
      out += buf;
      for (const MetricField& field : kMetricFields) {
        if (const auto& v = rec.*(field.member)) {
          out += ", \"";
          out += field.name;
          out += "\": ";
          out += FormatDouble(*v);
        }
      }
      out += i + 1 < records.size() ? "},\n" : "}\n";
    }
    out += "]\n";
  }
  std::ofstream file(path, std::ios::binary);
  if (!file) throw std::runtime_error("write_records: cannot open '" + path + "'");
  file << out;
  file.flush();
  if (!file) throw std::runtime_error("write_records: failed writing '" + path + "'");
}

std::vector<TrialRecord> read_records_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("read_records_json: cannot open '" + path + "'");
  json doc;
  try {
    doc = json::parse(in);
  } catch (const json::exception& e) {
    throw std::runtime_error("read_records_json: invalid JSON in '" + path +
                             "': " + e.what());
  }
  if (!doc.is_array()) {
    throw std::runtime_error("read_records_json: '" + path + "' is not a JSON array");
  }
  std::vector<TrialRecord> records;
  records.reserve(doc.size());
  for (const auto& item : doc) {
    TrialRecord rec;
    rec.task = item.at("task").get<std::string>();
    rec.mechanism = item.at("mechanism").get<std::string>();
    rec.n = item.at("n").get<std::size_t>();
    rec.dim = item.at("dim").get<std::size_t>();
    rec.epsilon = item.at("epsilon").get<double>();
    rec.delta = item.at("delta").get<double>();
    rec.trial = item.at("trial").get<std::size_t>();
    rec.seed = item.at("seed").get<std::uint64_t>();
    for (const MetricField& field : kMetricFields) {
      if (item.contains(field.name)) {
        rec.*(field.member) = item.at(field.name).get<double>();
      }
    }
    records.push_back(std::move(rec));
  }
  return records;
}

double quantile(std::vector<double> values, double q) {
  if (values.empty()) throw std::invalid_argument("quantile: empty input");
  if (!(q >= 0.0 && q <= 1.0)) {
    throw std::invalid_argument("quantile: q must lie in [0,1]");
  }
  std::sort(values.begin(), values.end());
  const double pos = q * static_cast<double>(values.size() - 1);
  const std::size_t lo = static_cast<std::size_t>(pos);
  const std::size_t hi = std::min(lo + 1, values.size() - 1);
  const double frac = pos - static_cast<double>(lo);
  return values[lo] * (1.0 - frac) + values[hi] * frac;
}

}  // namespace privstat
