# Copyright 2026 The privstat Authors
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#      http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.

"""Differentially private mean and CDF estimation."""

from privstat._core import (
    RandomSource,
    dyadic_decompose,
    empirical_cdf,
    empirical_mean,
    fingerprinting_check,
    gaussian_noise_scale,
    mean_sensitivity,
    private_cdf,
    private_mean,
    __version__,
)

__all__ = [
    "RandomSource",
    "dyadic_decompose",
    "empirical_cdf",
    "empirical_mean",
    "fingerprinting_check",
    "gaussian_noise_scale",
    "mean_sensitivity",
    "private_cdf",
    "private_mean",
    "__version__",
]
