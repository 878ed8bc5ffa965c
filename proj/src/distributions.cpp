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

#include "privstat/distributions.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace privstat {

ProductDistribution::ProductDistribution(std::vector<double> mu) : mu_(std::move(mu)) {
  if (mu_.empty()) {
    throw std::invalid_argument("ProductDistribution: dimension must be >= 1");
  }
  for (double m : mu_) {
    if (!(m >= -1.0 && m <= 1.0)) {
      throw std::invalid_argument("ProductDistribution: every coordinate mean must lie in [-1, 1]");
    }
  }
}

DiscreteDistribution::DiscreteDistribution(std::vector<double> probs)
    : probs_(std::move(probs)) {
  if (probs_.empty()) {
    throw std::invalid_argument("DiscreteDistribution: domain size must be >= 1");
  }
  double total = 0.0;
  for (double p : probs_) {
    if (!(p >= 0.0) || !std::isfinite(p)) {
      throw std::invalid_argument("DiscreteDistribution: probabilities must be non-negative");
    }
    total += p;
  }
  if (std::fabs(total - 1.0) > 1e-12) {
    throw std::invalid_argument("DiscreteDistribution: probabilities must sum to 1 within 1e-12");
  }
}

DiscreteDistribution DiscreteDistribution::uniform(std::size_t domain_size) {
  if (domain_size == 0) {
    throw std::invalid_argument("DiscreteDistribution::uniform: domain size must be >= 1");
  }
  return DiscreteDistribution(
      std::vector<double>(domain_size, 1.0 / static_cast<double>(domain_size)));
}

DiscreteDistribution DiscreteDistribution::point_mass(std::size_t at,
                                                      std::size_t domain_size) {
  if (at < 1 || at > domain_size) {
    throw std::invalid_argument("DiscreteDistribution::point_mass: at must lie in {1..D}");
  }
  std::vector<double> probs(domain_size, 0.0);
  probs[at - 1] = 1.0;
  return DiscreteDistribution(std::move(probs));
}

DiscreteDistribution DiscreteDistribution::geometric_like(std::size_t domain_size,
                                                          double ratio) {
  if (domain_size == 0) {
    throw std::invalid_argument("DiscreteDistribution::geometric_like: domain size must be >= 1");
  }
  if (!(ratio > 0.0) || !std::isfinite(ratio)) {
    throw std::invalid_argument("DiscreteDistribution::geometric_like: ratio must be finite and > 0");
  }
  std::vector<double> probs(domain_size);
  double mass = 0.0;
  double term = 1.0;
  for (std::size_t j = 0; j < domain_size; ++j) {
    probs[j] = term;
    mass += term;
    term *= ratio;
  }
  for (double& p : probs) p /= mass;
  // Nudge the largest entry so rounding errors cannot trip the 1e-12 gate.
  double total = 0.0;
  for (double p : probs) total += p;
  auto it = std::max_element(probs.begin(), probs.end());
  *it += 1.0 - total;
  return DiscreteDistribution(std::move(probs));
}

ProductDistribution sample_uniform_mean(std::size_t d, RandomSource& rng) {
  if (d < 1) {
    throw std::invalid_argument("sample_uniform_mean: d must be >= 1");
  }
  std::vector<double> mu(d);
  for (double& m : mu) {
    m = rng.uniform(-1.0, 1.0);
  }
  return ProductDistribution(std::move(mu));
}

MeanDataset sample_product(const ProductDistribution& dist, std::size_t n,
                           RandomSource& rng) {
  if (n < 1) {
    throw std::invalid_argument("sample_product: n must be >= 1");
  }
  const auto& mu = dist.mean();
  MeanDataset data;
  data.d = dist.dimension();
  data.entries.resize(n * data.d);
  std::size_t k = 0;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < data.d; ++j, ++k) {
      const double p_plus = 0.5 * (1.0 + mu[j]);
      data.entries[k] = rng.uniform01() < p_plus ? 1 : -1;
    }
  }
  return data;
}

DiscreteDataset sample_discrete(const DiscreteDistribution& dist, std::size_t n,
                                RandomSource& rng) {
  if (n < 1) {
    throw std::invalid_argument("sample_discrete: n must be >= 1");
  }
  std::vector<double> cum(dist.probs());
  for (std::size_t j = 1; j < cum.size(); ++j) cum[j] += cum[j - 1];
  DiscreteDataset data;
  data.domain_size = dist.domain_size();
  data.values.resize(n);
  for (auto& v : data.values) {
    const double u = rng.uniform01();
    const auto it = std::upper_bound(cum.begin(), cum.end(), u);
    auto idx = static_cast<std::size_t>(it - cum.begin());
    if (idx >= cum.size()) idx = cum.size() - 1;
    v = static_cast<std::uint32_t>(idx + 1);
  }
  return data;
}

std::vector<double> empirical_mean(const MeanDataset& data) {
  const std::size_t n = data.rows();
  if (n == 0) {
    throw std::invalid_argument("empirical_mean: dataset must be nonempty");
  }
  std::vector<double> mean(data.d, 0.0);
  std::size_t k = 0;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < data.d; ++j, ++k) {
      mean[j] += data.entries[k];
    }
  }
  for (double& m : mean) m /= static_cast<double>(n);
  return mean;
}

CdfVector empirical_cdf(const DiscreteDataset& data) {
  const std::size_t n = data.rows();
  if (n == 0) {
    throw std::invalid_argument("empirical_cdf: dataset must be nonempty");
  }
  std::vector<std::int64_t> counts(data.domain_size, 0);
  for (std::uint32_t v : data.values) {
    if (v < 1 || v > data.domain_size) {
      throw std::invalid_argument("empirical_cdf: entry outside {1..D}");
    }
    counts[v - 1] += 1;
  }
  CdfVector cdf(data.domain_size);
  std::int64_t cum = 0;
  for (std::size_t j = 0; j < data.domain_size; ++j) {
    cum += counts[j];
    cdf[j] = static_cast<double>(cum) / static_cast<double>(n);
  }
  return cdf;
}

CdfVector true_cdf(const DiscreteDistribution& dist) {
  CdfVector cdf(dist.probs());
  for (std::size_t j = 1; j < cdf.size(); ++j) cdf[j] += cdf[j - 1];
  return cdf;
}

double linf_distance(std::span<const double> a, std::span<const double> b) {
  if (a.size() != b.size()) {
    throw std::invalid_argument("linf_distance: length mismatch");
  }
  double worst = 0.0;
  for (std::size_t j = 0; j < a.size(); ++j) {
    worst = std::max(worst, std::fabs(a[j] - b[j]));
  }
  return worst;
}

double l2sq_error(std::span<const double> a, std::span<const double> b) {
  if (a.size() != b.size()) {
    throw std::invalid_argument("l2sq_error: length mismatch");
  }
  double total = 0.0;
  for (std::size_t j = 0; j < a.size(); ++j) {
    const double diff = a[j] - b[j];
    total += diff * diff;
  }
  return total;
}

void write_mean_dataset(const MeanDataset& data, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) {
    throw std::runtime_error("write_mean_dataset: cannot open " + path.string());
  }
  const std::size_t n = data.rows();
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < data.d; ++j) {
      if (j) out << ' ';
      out << static_cast<int>(data.entries[i * data.d + j]);
    }
    out << '\n';
  }
  if (!out) {
    throw std::runtime_error("write_mean_dataset: write failed for " + path.string());
  }
}

MeanDataset read_mean_dataset(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) {
    throw std::runtime_error("read_mean_dataset: cannot open " + path.string());
  }
  MeanDataset data;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::istringstream row(line);
    std::size_t width = 0;
    int value = 0;
    while (row >> value) {
      if (value != 1 && value != -1) {
        throw std::runtime_error("read_mean_dataset: entries must be +1 or -1 in " + path.string());
      }
      data.entries.push_back(static_cast<std::int8_t>(value));
      ++width;
    }
    if (data.d == 0) {
      data.d = width;
    } else if (width != data.d) {
      throw std::runtime_error("read_mean_dataset: ragged rows in " + path.string());
    }
  }
  if (data.d == 0) {
    throw std::runtime_error("read_mean_dataset: no rows in " + path.string());
  }
  return data;
}

void write_discrete_dataset(const DiscreteDataset& data,
                            const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) {
    throw std::runtime_error("write_discrete_dataset: cannot open " + path.string());
  }
  for (std::uint32_t v : data.values) {
    out << v << '\n';
  }
  if (!out) {
    throw std::runtime_error("write_discrete_dataset: write failed for " + path.string());
  }
}

DiscreteDataset read_discrete_dataset(const std::filesystem::path& path,
                                      std::size_t domain_size) {
  std::ifstream in(path);
  if (!in) {
    throw std::runtime_error("read_discrete_dataset: cannot open " + path.string());
  }
  DiscreteDataset data;
  data.domain_size = domain_size;
  std::uint64_t value = 0;
  while (in >> value) {
    if (value < 1 || value > domain_size) {
      throw std::runtime_error("read_discrete_dataset: entry outside {1..D} in " + path.string());
    }
    data.values.push_back(static_cast<std::uint32_t>(value));
  }
  if (data.values.empty()) {
    throw std::runtime_error("read_discrete_dataset: no values in " + path.string());
  }
  return data;
}

}  // namespace privstat
