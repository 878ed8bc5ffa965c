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

#include "privstat/cdf.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <stdexcept>
#include <string>

namespace privstat {
namespace {

std::size_t CheckedDepth(std::size_t domain_size, const char* op) {
  if (domain_size < 2 || !std::has_single_bit(domain_size)) {
    throw std::invalid_argument(std::string(op) + ": domain size " +
                                std::to_string(domain_size) +
                                " is not a power of two >= 2");
  }
  return static_cast<std::size_t>(std::bit_width(domain_size) - 1);
}

}  // namespace

DyadicTree::DyadicTree(std::size_t domain_size, std::size_t sample_size)
    : domain_size_(domain_size),
      depth_(CheckedDepth(domain_size, "DyadicTree")),
      sample_size_(sample_size) {
  if (sample_size_ == 0) {
    throw std::invalid_argument("DyadicTree: sample size must be positive");
  }
  levels_.resize(depth_);
  for (std::size_t level = 0; level < depth_; ++level) {
    levels_[level].assign(domain_size_ >> level, 0.0);
  }
}

std::size_t DyadicTree::level_width(std::size_t level) const {
  if (level >= depth_) {
    throw std::out_of_range("DyadicTree: level " + std::to_string(level) +
                            " out of range for depth " + std::to_string(depth_));
  }
  return domain_size_ >> level;
}

double DyadicTree::value(std::size_t level, std::size_t index) const {
  return raw(level, index) / static_cast<double>(sample_size_);
}

double DyadicTree::raw(std::size_t level, std::size_t index) const {
  if (index == 0 || index > level_width(level)) {
    throw std::out_of_range("DyadicTree: index " + std::to_string(index) +
                            " out of range at level " + std::to_string(level));
  }
  return levels_[level][index - 1];
}

void DyadicTree::set_raw(std::size_t level, std::size_t index, double raw_value) {
  if (index == 0 || index > level_width(level)) {
    throw std::out_of_range("DyadicTree: index " + std::to_string(index) +
                            " out of range at level " + std::to_string(level));
  }
  levels_[level][index - 1] = raw_value;
}

DyadicTree build_tree_counts(const DiscreteDataset& data, std::size_t tree_domain) {
  CheckedDepth(tree_domain, "build_tree_counts");
  if (data.values.empty()) {
    throw std::invalid_argument("build_tree_counts: dataset is empty");
  }
  DyadicTree tree(tree_domain, data.values.size());

  // Leaf histogram, then each parent as the sum of its two children. All
  // raws stay exact small integers.
  std::vector<double> counts(tree_domain, 0.0);
  for (std::uint32_t v : data.values) {
    if (v < 1 || v > tree_domain) {
      throw std::invalid_argument("build_tree_counts: value " + std::to_string(v) +
                                  " outside domain 1.." + std::to_string(tree_domain));
    }
    counts[v - 1] += 1.0;
  }
  for (std::size_t j = 1; j <= tree_domain; ++j) {
    tree.set_raw(0, j, counts[j - 1]);
  }
  for (std::size_t level = 1; level < tree.depth(); ++level) {
    for (std::size_t j = 1; j <= tree.level_width(level); ++j) {
      tree.set_raw(level, j,
                   tree.raw(level - 1, 2 * j - 1) + tree.raw(level - 1, 2 * j));
    }
  }
  return tree;
}

Sensitivity tree_sensitivity(std::size_t domain_size, std::size_t n) {
  std::size_t depth = CheckedDepth(domain_size, "tree_sensitivity");
  if (n == 0) {
    throw std::invalid_argument("tree_sensitivity: n must be positive");
  }
  // Replacing one point moves it out of one interval and into one interval
  // per level, each a 1/n step: squared norm at most 2*log2(D)/n^2.
  return Sensitivity(std::sqrt(2.0 * static_cast<double>(depth)) /
                     static_cast<double>(n));
}

DyadicTree noisy_tree(const DyadicTree& tree, const PrivacyParams& p,
                      RandomSource& rng) {
  const double sigma =
      gaussian_noise_scale(tree_sensitivity(tree.domain_size(), tree.sample_size()), p);
  const double raw_sigma = sigma * static_cast<double>(tree.sample_size());
  DyadicTree out(tree.domain_size(), tree.sample_size());
  for (std::size_t level = 0; level < tree.depth(); ++level) {
    for (std::size_t j = 1; j <= tree.level_width(level); ++j) {
      out.set_raw(level, j, tree.raw(level, j) + raw_sigma * rng.normal());
    }
  }
  return out;
}

std::vector<IntervalRef> dyadic_decompose(std::size_t j, std::size_t domain_size) {
  std::size_t depth = CheckedDepth(domain_size, "dyadic_decompose");
  if (j < 1 || j > domain_size) {
    throw std::invalid_argument("dyadic_decompose: j " + std::to_string(j) +
                                " outside 1.." + std::to_string(domain_size));
  }
  const std::size_t max_width = domain_size >> 1;  // widest stored level

  std::vector<IntervalRef> parts;
  std::size_t start = 1;
  while (start <= j) {
    std::size_t remaining = j - start + 1;
    std::size_t width = std::size_t{1} << (std::bit_width(remaining) - 1);
    width = std::min(width, max_width);
    // start - 1 is a sum of earlier widths, each a power of two >= width,
    // so the interval is automatically aligned.
    std::size_t level = static_cast<std::size_t>(std::bit_width(width) - 1);
    parts.push_back(IntervalRef{level, (start - 1) / width + 1});
    start += width;
  }
  return parts;
}

CdfVector reconstruct_cdf(const DyadicTree& tree) {
  const std::size_t domain = tree.domain_size();
  CdfVector out(domain, 0.0);
  for (std::size_t j = 1; j <= domain; ++j) {
    double raw_sum = 0.0;
    for (const IntervalRef& part : dyadic_decompose(j, domain)) {
      raw_sum += tree.raw(part.level, part.index);
    }
    out[j - 1] = raw_sum / static_cast<double>(tree.sample_size());
  }
  return out;
}

CdfVector postprocess_monotone(const CdfVector& raw) {
  CdfVector out(raw.size());
  double running = 0.0;
  for (std::size_t i = 0; i < raw.size(); ++i) {
    double clamped = std::clamp(raw[i], 0.0, 1.0);
    running = std::max(running, clamped);
    out[i] = running;
  }
  return out;
}

CdfVector private_cdf(const DiscreteDataset& data, const PrivacyParams& p,
                      RandomSource& rng) {
  if (data.domain_size < 2) {
    throw std::invalid_argument("private_cdf: domain size must be >= 2");
  }
  const std::size_t padded = std::bit_ceil(data.domain_size);
  DyadicTree tree = build_tree_counts(data, padded);
  DyadicTree noisy = noisy_tree(tree, p, rng);
  CdfVector full = reconstruct_cdf(noisy);
  full.resize(data.domain_size);
  return postprocess_monotone(full);
}

}  // namespace privstat
