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

#include "privstat/privacy.hpp"

#include <cmath>
#include <stdexcept>

namespace privstat {

PrivacyParams::PrivacyParams(double epsilon, double delta)
    : epsilon_(epsilon), delta_(delta) {
  if (!std::isfinite(epsilon) || epsilon <= 0.0) {
    throw std::invalid_argument("PrivacyParams: epsilon must be finite and > 0");
  }
  if (!std::isfinite(delta) || delta <= 0.0 || delta >= 1.0) {
    throw std::invalid_argument("PrivacyParams: delta must lie in (0, 1)");
  }
}

Sensitivity::Sensitivity(double l2) : l2_(l2) {
  if (!std::isfinite(l2) || l2 < 0.0) {
    throw std::invalid_argument("Sensitivity: l2 must be finite and >= 0");
  }
}

double gaussian_noise_scale(const Sensitivity& sens, const PrivacyParams& p) {
  // PrivacyParams already bounds delta below 1; guard the log anyway so a
  // future caller cannot produce sigma from a nonpositive log argument.
  if (p.delta() >= 2.0) {
    throw std::invalid_argument("gaussian_noise_scale: delta >= 2 leaves log(2/delta) nonpositive");
  }
  if (sens.l2() == 0.0) {
    return 0.0;
  }
  return std::sqrt(2.0 * std::log(2.0 / p.delta())) * sens.l2() / p.epsilon();
}

std::vector<double> gaussian_mechanism(std::span<const double> value,
                                       const Sensitivity& sens,
                                       const PrivacyParams& p,
                                       RandomSource& rng) {
  for (double v : value) {
    if (!std::isfinite(v)) {
      throw std::invalid_argument("gaussian_mechanism: value must be finite");
    }
  }
  const double sigma = gaussian_noise_scale(sens, p);
  std::vector<double> out(value.begin(), value.end());
  for (double& v : out) {
    v += sigma * rng.normal();
  }
  return out;
}

}  // namespace privstat
