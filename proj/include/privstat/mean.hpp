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

#include "privstat/distributions.hpp"
#include "privstat/privacy.hpp"
#include "privstat/random.hpp"

namespace privstat {

// l2-sensitivity of the empirical mean over {-1,+1}^d rows: replacing one
// row moves each coordinate of the mean by at most 2/n, so
// Delta = 2*sqrt(d)/n. The bound is tight (flip a whole row).
Sensitivity mean_sensitivity(std::size_t d, std::size_t n);

struct PrivateMeanOptions {
  // Clamp the noisy mean back into [-1,1]^d. Projection onto a convex set
  // containing the true mean never increases the l2 error; disable only to
  // measure the raw noise decomposition.
  bool clamp = true;
};

// Gaussian-mechanism release of the empirical mean:
//   clamp(mean(X) + N(0, sigma^2 I), [-1,1]^d)
// with sigma = gaussian_noise_scale(mean_sensitivity(d, n), p). Expected
// l2^2 error is at most d/n + 8 d^2 ln(2/delta) / (epsilon^2 n^2).
std::vector<double> private_mean(const MeanDataset& data, const PrivacyParams& p,
                                 RandomSource& rng,
                                 const PrivateMeanOptions& options = {});

}  // namespace privstat
