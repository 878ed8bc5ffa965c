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

#include <span>
#include <vector>

#include "privstat/random.hpp"

namespace privstat {

// (epsilon, delta) privacy budget. epsilon > 0 and delta in (0, 1);
// the constructor rejects anything else.
class PrivacyParams {
 public:
  PrivacyParams(double epsilon, double delta);

  double epsilon() const { return epsilon_; }
  double delta() const { return delta_; }

 private:
  double epsilon_;
  double delta_;
};

// l2-sensitivity of a statistic: the largest l2 change any single-record
// replacement can cause. Callers derive and document their own bound; this
// module cannot verify it.
class Sensitivity {
 public:
  explicit Sensitivity(double l2);

  double l2() const { return l2_; }

 private:
  double l2_;
};

// Noise standard deviation of the Gaussian mechanism:
//   sigma = sqrt(2 * ln(2/delta)) * Delta / epsilon.
// ln is the natural logarithm. Zero sensitivity gives sigma = 0 exactly.
double gaussian_noise_scale(const Sensitivity& sens, const PrivacyParams& p);

// Adds i.i.d. N(0, sigma^2) noise to each coordinate, with sigma from
// gaussian_noise_scale. Output length equals input length. The result is
// (epsilon, delta)-differentially private provided sens upper-bounds the
// true l2-sensitivity of how `value` was computed.
std::vector<double> gaussian_mechanism(std::span<const double> value,
                                       const Sensitivity& sens,
                                       const PrivacyParams& p,
                                       RandomSource& rng);

}  // namespace privstat
