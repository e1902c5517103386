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

#pragma once

// Reference implementations used by the unit and acceptance tests.

#include <cmath>
#include <cstdint>
#include <span>
#include <vector>

#include "streamex/adwin.hpp"

namespace streamex::testing {

// Exhaustive ADWIN split check over a raw window, oldest first. Returns the
// split sizes n0 (oldest part) whose mean gap exceeds the cut threshold.
inline std::vector<std::uint64_t> violating_splits(std::span<const double> window, double delta) {
  const std::uint64_t n = window.size();
  std::vector<std::uint64_t> out;
  if (n < 2) return out;
  double total = 0.0;
  for (const double v : window) total += v;
  const double mean = total / static_cast<double>(n);
  double ss = 0.0;
  for (const double v : window) ss += (v - mean) * (v - mean);
  const double var = ss / static_cast<double>(n);
  double sum0 = 0.0;
  for (std::uint64_t n0 = 1; n0 < n; ++n0) {
    sum0 += window[n0 - 1];
    const std::uint64_t n1 = n - n0;
    const double gap = std::abs(sum0 / static_cast<double>(n0) - (total - sum0) / static_cast<double>(n1));
    if (gap > hoeffding_cut_threshold(n0, n1, var, delta)) out.push_back(n0);
  }
  return out;
}

// Prefix sizes at the bucket boundaries of a detector (oldest first).
inline std::vector<std::uint64_t> bucket_boundaries(const Adwin& adwin) {
  std::vector<std::uint64_t> out;
  std::uint64_t n0 = 0;
  for (const auto& b : adwin.buckets()) {
    n0 += b.count;
    if (n0 < adwin.width()) out.push_back(n0);
  }
  return out;
}

struct AdwinAgreement {
  std::uint64_t steps = 0;
  std::uint64_t agree = 0;
  std::uint64_t justified = 0;    // disagreements explained by bucket granularity
  std::uint64_t unjustified = 0;
};

// Feeds `values` to a detector and, at each step, compares its cut decision
// with the exhaustive check over the same window. When only the exhaustive
// check cuts, the step is justified if no violating split lies on a bucket
// boundary of the detector's retained window.
inline AdwinAgreement compare_with_exhaustive(std::span<const double> values, double delta) {
  Adwin adwin(delta);
  std::vector<double> history;
  AdwinAgreement out;
  for (const double v : values) {
    const std::uint64_t before = adwin.width();
    history.push_back(v);
    std::vector<double> window(history.end() - static_cast<std::ptrdiff_t>(before + 1), history.end());
    const bool exhaustive_cut = !violating_splits(window, delta).empty();
    const bool bucket_cut = adwin.update(v);
    ++out.steps;
    if (exhaustive_cut == bucket_cut) {
      ++out.agree;
      continue;
    }
    bool ok = false;
    if (exhaustive_cut && !bucket_cut) {
      const auto bounds = bucket_boundaries(adwin);
      ok = true;
      for (const auto n0 : violating_splits(window, delta)) {
        for (const auto b : bounds) ok = ok && b != n0;
      }
    }
    (ok ? out.justified : out.unjustified)++;
  }
  return out;
}

}  // namespace streamex::testing
