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

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace privstat {

Sensitivity mean_sensitivity(std::size_t d, std::size_t n) {
  if (d < 1 || n < 1) {
    throw std::invalid_argument("mean_sensitivity: d and n must be >= 1");
  }
  return Sensitivity(2.0 * std::sqrt(static_cast<double>(d)) / static_cast<double>(n));
}

std::vector<double> private_mean(const MeanDataset& data, const PrivacyParams& p,
                                 RandomSource& rng,
                                 const PrivateMeanOptions& options) {
  const std::size_t n = data.rows();
  if (n == 0) {
    throw std::invalid_argument("private_mean: dataset must be nonempty");
  }
  std::vector<double> estimate = gaussian_mechanism(
      empirical_mean(data), mean_sensitivity(data.d, n), p, rng);
  if (options.clamp) {
    for (double& v : estimate) {
      v = std::clamp(v, -1.0, 1.0);
    }
  }
  return estimate;
}

}  // namespace privstat
