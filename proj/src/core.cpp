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

#include "streamex/core.hpp"

#include <cmath>
#include <limits>

namespace streamex {

void normalize(Distribution& dist) {
  double total = 0.0;
  for (const double v : dist) total += v;
  if (!(total > 0.0) || !std::isfinite(total)) {
    if (dist.empty()) return;
    const double u = 1.0 / static_cast<double>(dist.size());
    for (double& v : dist) v = u;
    return;
  }
  for (double& v : dist) v /= total;
}

ClassLabel argmax_label(std::span<const double> dist) {
  if (dist.empty()) throw ContractViolation("argmax_label: empty distribution");
  std::size_t best = 0;
  for (std::size_t i = 1; i < dist.size(); ++i) {
    if (dist[i] > dist[best]) best = i;
  }
  return static_cast<ClassLabel>(best);
}

double top_margin(std::span<const double> dist) {
  if (dist.size() < 2) return dist.empty() ? 0.0 : dist[0];
  double first = -std::numeric_limits<double>::infinity();
  double second = first;
  for (const double v : dist) {
    if (v > first) {
      second = first;
      first = v;
    } else if (v > second) {
      second = v;
    }
  }
  return first - second;
}

void require_finite(std::span<const double> features) {
  for (std::size_t i = 0; i < features.size(); ++i) {
    if (!std::isfinite(features[i])) {
      throw ContractViolation("non-finite feature at index " + std::to_string(i));
    }
  }
}

}  // namespace streamex
