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

#include <cstdint>
#include <filesystem>
#include <span>
#include <string>
#include <vector>

#include "privstat/random.hpp"

namespace privstat {

// CDF values Phi(1), ..., Phi(D). Exact CDFs are non-decreasing in [0, 1]
// and end at 1; noisy estimates may violate both until post-processed.
using CdfVector = std::vector<double>;

// Product distribution on {-1, +1}^d with coordinate means mu in [-1, 1]^d.
class ProductDistribution {
 public:
  explicit ProductDistribution(std::vector<double> mu);

  std::size_t dimension() const { return mu_.size(); }
  const std::vector<double>& mean() const { return mu_; }

 private:
  std::vector<double> mu_;
};

// Distribution on the ordered domain {1, ..., D}.
class DiscreteDistribution {
 public:
  // probs must be non-negative and sum to 1 within 1e-12.
  explicit DiscreteDistribution(std::vector<double> probs);

  static DiscreteDistribution uniform(std::size_t domain_size);
  // Point mass on `at` (1-based) over {1..domain_size}.
  static DiscreteDistribution point_mass(std::size_t at, std::size_t domain_size);
  // Geometric-like preset: probs proportional to ratio^(j-1).
  static DiscreteDistribution geometric_like(std::size_t domain_size, double ratio);

  std::size_t domain_size() const { return probs_.size(); }
  const std::vector<double>& probs() const { return probs_; }

 private:
  std::vector<double> probs_;
};

// n rows of {-1, +1}^d, row-major.
struct MeanDataset {
  std::size_t d = 0;
  std::vector<std::int8_t> entries;

  std::size_t rows() const { return d == 0 ? 0 : entries.size() / d; }
  std::span<const std::int8_t> row(std::size_t i) const {
    return {entries.data() + i * d, d};
  }
};

// n values in {1, ..., domain_size}.
struct DiscreteDataset {
  std::size_t domain_size = 0;
  std::vector<std::uint32_t> values;

  std::size_t rows() const { return values.size(); }
};

// mu with d i.i.d. coordinates uniform on [-1, 1].
ProductDistribution sample_uniform_mean(std::size_t d, RandomSource& rng);

// n i.i.d. rows; coordinate j is +1 with probability (1 + mu_j) / 2.
MeanDataset sample_product(const ProductDistribution& dist, std::size_t n,
                           RandomSource& rng);

// n i.i.d. draws by inverse CDF over precomputed prefix sums.
DiscreteDataset sample_discrete(const DiscreteDistribution& dist, std::size_t n,
                                RandomSource& rng);

// Coordinate-wise average of the rows. Rejects empty datasets.
std::vector<double> empirical_mean(const MeanDataset& data);

// Phi_X(j) = #{i : X_i <= j} / n. Exact, monotone, ends at 1.
CdfVector empirical_cdf(const DiscreteDataset& data);

CdfVector true_cdf(const DiscreteDistribution& dist);

double linf_distance(std::span<const double> a, std::span<const double> b);

double l2sq_error(std::span<const double> a, std::span<const double> b);

// Newline-delimited text: one row per line, space-separated +1/-1 entries.
void write_mean_dataset(const MeanDataset& data, const std::filesystem::path& path);
MeanDataset read_mean_dataset(const std::filesystem::path& path);

// One value per line.
void write_discrete_dataset(const DiscreteDataset& data, const std::filesystem::path& path);
DiscreteDataset read_discrete_dataset(const std::filesystem::path& path,
                                      std::size_t domain_size);

}  // namespace privstat
