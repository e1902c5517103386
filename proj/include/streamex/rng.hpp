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

#include <cstdint>
#include <random>
#include <string_view>

namespace streamex {

// Deterministic random source. The engine is std::mt19937_64, whose output
// sequence is fixed by the standard; all derived draws (uniform, normal,
// integer ranges) are computed here rather than through <random>
// distributions, whose algorithms vary between standard libraries.
//
// Sub-streams are derived by label: derive("generator") and
// derive("query") of the same root never share state, so changing how many
// numbers one component draws does not shift another component's sequence.
class Rng {
 public:
  explicit Rng(std::uint64_t seed = 0);

  std::uint64_t seed() const { return seed_; }

  std::uint64_t next_u64() { return engine_(); }

  // Uniform on the open interval (0, 1).
  double uniform();

  // Uniform on [lo, hi).
  double uniform(double lo, double hi);

  // Integer uniform on [0, n). n must be positive.
  std::uint64_t below(std::uint64_t n);

  bool bernoulli(double p);

  // Standard normal via Box-Muller (the spare value is cached).
  double normal();
  double normal(double mean, double stddev) { return mean + stddev * normal(); }

  Rng derive(std::string_view label) const;

 private:
  std::uint64_t seed_;
  std::mt19937_64 engine_;
  bool has_spare_ = false;
  double spare_ = 0.0;
};

std::uint64_t splitmix64(std::uint64_t x);

}  // namespace streamex
