// Copyright 2026 The streamex Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//  http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "streamex/adwin.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "streamex/core.hpp"

namespace streamex {

double hoeffding_cut_threshold(std::uint64_t n0, std::uint64_t n1,
                               double variance, double delta) {
  if (n0 == 0 || n1 == 0) {
    throw ContractViolation("hoeffding_cut_threshold: both sub-windows must be non-empty");
  }
  const double n = static_cast<double>(n0 + n1);
  const double log_width = std::max(1.0, std::log(n));
  const double log_term = std::log(2.0 * log_width / delta);
  const double inv_m = 1.0 / static_cast<double>(n0) + 1.0 / static_cast<double>(n1);
  return std::sqrt(2.0 * inv_m * variance * log_term) + 2.0 / 3.0 * inv_m * log_term;
}

Adwin::Adwin(double delta) : delta_(delta) {
  if (!(delta > 0.0 && delta < 1.0)) {
    throw ContractViolation("Adwin: delta must lie in (0, 1)");
  }
}

bool Adwin::update(double value) {
  if (!(value >= 0.0 && value <= 1.0)) {
    throw ContractViolation("Adwin::update: value " + std::to_string(value) +
                            " outside [0, 1]");
  }
  insert_bucket(value);
  compress();
  return detect_and_cut();
}

double Adwin::mean() const {
  return width_ == 0 ? 0.0 : total_ / static_cast<double>(width_);
}

double Adwin::variance() const {
  return width_ == 0 ? 0.0 : total_variance_ / static_cast<double>(width_);
}

double Adwin::sample_variance() const {
  return width_ < 2 ? 0.0 : total_variance_ / static_cast<double>(width_ - 1);
}

std::vector<Adwin::Bucket> Adwin::buckets() const {
  std::vector<Bucket> out;
  for (auto level = levels_.rbegin(); level != levels_.rend(); ++level) {
    out.insert(out.end(), level->begin(), level->end());
  }
  return out;
}

void Adwin::insert_bucket(double value) {
  if (width_ > 0) {
    const double diff = value - mean();
    total_variance_ += static_cast<double>(width_) * diff * diff /
                       static_cast<double>(width_ + 1);
  }
  total_ += value;
  ++width_;
  if (levels_.empty()) levels_.emplace_back();
  levels_[0].push_back(Bucket{value, 0.0, 1});
}

void Adwin::compress() {
  for (std::size_t k = 0; k < levels_.size(); ++k) {
    if (levels_[k].size() <= kMaxBucketsPerLevel) break;
    Bucket a = levels_[k].front();
    levels_[k].pop_front();
    Bucket b = levels_[k].front();
    levels_[k].pop_front();
    const double na = static_cast<double>(a.count);
    const double nb = static_cast<double>(b.count);
    const double diff = a.sum / na - b.sum / nb;
    Bucket merged{a.sum + b.sum, a.variance + b.variance + na * nb / (na + nb) * diff * diff,
                  a.count + b.count};
    if (k + 1 == levels_.size()) levels_.emplace_back();
    // The merged pair is newer than anything already on the next level.
    levels_[k + 1].push_back(merged);
  }
}

void Adwin::drop_oldest() {
  while (!levels_.empty() && levels_.back().empty()) levels_.pop_back();
  if (levels_.empty()) return;
  const Bucket oldest = levels_.back().front();
  levels_.back().pop_front();

  const std::uint64_t remaining = width_ - oldest.count;
  if (remaining == 0) {
    width_ = 0;
    total_ = 0.0;
    total_variance_ = 0.0;
  } else {
    const double nb = static_cast<double>(oldest.count);
    const double nr = static_cast<double>(remaining);
    const double rest_mean = (total_ - oldest.sum) / nr;
    const double diff = oldest.sum / nb - rest_mean;
    total_variance_ -= oldest.variance + nb * nr / (nb + nr) * diff * diff;
    total_variance_ = std::max(0.0, total_variance_);
    total_ -= oldest.sum;
    width_ = remaining;
  }
  while (!levels_.empty() && levels_.back().empty()) levels_.pop_back();
}

bool Adwin::detect_and_cut() {
  bool cut = false;
  bool again = true;
  while (again && width_ > 1) {
    again = false;
    std::uint64_t n0 = 0;
    double sum0 = 0.0;
    const double var = variance();
    for (auto level = levels_.rbegin(); level != levels_.rend() && !again; ++level) {
      for (const Bucket& b : *level) {
        n0 += b.count;
        sum0 += b.sum;
        const std::uint64_t n1 = width_ - n0;
        if (n1 == 0) break;
        const double mean0 = sum0 / static_cast<double>(n0);
        const double mean1 = (total_ - sum0) / static_cast<double>(n1);
        if (std::abs(mean0 - mean1) > hoeffding_cut_threshold(n0, n1, var, delta_)) {
          drop_oldest();
          cut = true;
          again = true;
          break;
        }
      }
    }
  }
  if (cut) ++cuts_;
  return cut;
}

}  // namespace streamex
