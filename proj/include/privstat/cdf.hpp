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
#include <vector>

#include "privstat/distributions.hpp"
#include "privstat/privacy.hpp"
#include "privstat/random.hpp"

namespace privstat {

// One interval of the dyadic hierarchy over {1..D}: level l, 1-based index j,
// covering {(j-1)*2^l + 1, ..., j*2^l}. Stored levels run 0..log2(D)-1, so
// interval widths are 1, 2, ..., D/2 (no root; its count is identically 1).
struct IntervalRef {
  std::size_t level = 0;
  std::size_t index = 0;

  std::size_t first() const { return (index - 1) * (std::size_t{1} << level) + 1; }
  std::size_t last() const { return index * (std::size_t{1} << level); }

  bool operator==(const IntervalRef&) const = default;
};

// The 2D-2 normalized interval counts f_{l,j} of the binary-tree mechanism:
// for each level l, f_{l,j} is the fraction of sample points inside the
// interval (j-1)*2^l + 1 .. j*2^l.
//
// Counts are stored at the raw scale (count, not count/n) with the sample
// size alongside; value() normalizes on access. Exact trees therefore keep
// integer-valued raws, which lets reconstruct_cdf() sum them without
// rounding and divide once, matching empirical_cdf() bitwise. Noise enters
// at the matching raw scale (n * sigma), so value() still carries noise of
// scale sigma per entry.
class DyadicTree {
 public:
  // Zero-filled tree. domain_size must be a power of two >= 2.
  DyadicTree(std::size_t domain_size, std::size_t sample_size);

  std::size_t domain_size() const { return domain_size_; }
  std::size_t depth() const { return depth_; }  // log2(domain_size)
  std::size_t sample_size() const { return sample_size_; }
  std::size_t entry_count() const { return 2 * domain_size_ - 2; }

  // Number of intervals at a level: 2^(depth - level).
  std::size_t level_width(std::size_t level) const;

  // f_{l,j} = raw(l, j) / n. Index is 1-based.
  double value(std::size_t level, std::size_t index) const;
  double value(const IntervalRef& ref) const { return value(ref.level, ref.index); }

  double raw(std::size_t level, std::size_t index) const;
  void set_raw(std::size_t level, std::size_t index, double raw_value);

 private:
  std::size_t domain_size_;
  std::size_t depth_;
  std::size_t sample_size_;
  std::vector<std::vector<double>> levels_;
};

// Exact normalized interval counts of the dataset over {1..tree_domain}.
// tree_domain must be a power of two >= 2 and at least the dataset's domain
// (padding with zero-count symbols realizes non-power-of-two domains).
DyadicTree build_tree_counts(const DiscreteDataset& data, std::size_t tree_domain);

// l2-sensitivity of the full count vector: one replaced point alters at most
// two entries per level by 1/n each across log2(D) levels, so
// Delta^2 = 2*log2(D)/n^2.
Sensitivity tree_sensitivity(std::size_t domain_size, std::size_t n);

// Adds i.i.d. Gaussian noise of scale gaussian_noise_scale(tree_sensitivity)
// to every entry, level 0 upward, ascending index. The result may violate
// [0,1] and parent-child consistency; reconstruction and post-processing
// handle that downstream.
DyadicTree noisy_tree(const DyadicTree& tree, const PrivacyParams& p,
                      RandomSource& rng);

// Disjoint tree intervals whose union is exactly {1..j}, greedy from the
// high bits of j. At most log2(D) parts for j < D; the full domain j = D
// needs the two top-level halves.
std::vector<IntervalRef> dyadic_decompose(std::size_t j, std::size_t domain_size);

// CDF values from interval sums: values[j-1] = sum of tree entries over
// dyadic_decompose(j). On an exact tree this equals empirical_cdf bitwise.
// The linear map is applied as these sparse sums; no matrix is materialized.
CdfVector reconstruct_cdf(const DyadicTree& tree);

// Clamp to [0,1], then running max. An l-infinity projection toward the
// monotone staircase: never increases the distance to any true CDF.
CdfVector postprocess_monotone(const CdfVector& raw);

// The full binary-tree mechanism: exact counts -> Gaussian noise ->
// dyadic reconstruction -> monotone post-processing. Domains that are not a
// power of two are padded to the next one internally; only the first D
// entries are returned. Expected l-infinity error is
// O(sqrt(1/n) + log^{3/2}(D) sqrt(ln(1/delta)) / (epsilon n)).
CdfVector private_cdf(const DiscreteDataset& data, const PrivacyParams& p,
                      RandomSource& rng);

}  // namespace privstat
