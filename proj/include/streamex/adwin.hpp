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

#include <cstddef>
#include <cstdint>
#include <deque>
#include <vector>

namespace streamex {

// ADWIN cut threshold (variance-sensitive form):
//
//   theta = sqrt(2 / m * var * ln(2 / delta')) + 2 / (3 m) * ln(2 / delta')
//
// with m = 1 / (1/n0 + 1/n1) and delta' = delta / max(1, ln(n0 + n1)).
// `variance` is the population variance of the whole window.
double hoeffding_cut_threshold(std::uint64_t n0, std::uint64_t n1,
                               double variance, double delta);

// Adaptive windowing over a bounded signal in [0, 1].
//
// The window is compressed into an exponential histogram: level k holds
// buckets of 2^k values, at most kMaxBucketsPerLevel per level. After every
// insertion each bucket boundary is tested as a split into an older part W0
// and a newer part W1; whenever |mean(W0) - mean(W1)| exceeds the cut
// threshold the oldest bucket is dropped and the scan restarts.
class Adwin {
 public:
  static constexpr std::size_t kMaxBucketsPerLevel = 5;

  struct Bucket {
    double sum = 0.0;
    double variance = 0.0;  // sum of squared deviations from bucket mean
    std::uint64_t count = 0;
  };

  explicit Adwin(double delta = 0.002);

  // Appends a value and shrinks the window if a split violates the test.
  // Returns true when at least one bucket was dropped.
  bool update(double value);

  // 0 when empty.
  double mean() const;
  std::uint64_t width() const { return width_; }
  // Population variance of the retained window (0 when empty).
  double variance() const;
  // Unbiased variance (0 for fewer than two values).
  double sample_variance() const;

  double delta() const { return delta_; }
  std::uint64_t cut_count() const { return cuts_; }

  // Buckets ordered oldest to newest.
  std::vector<Bucket> buckets() const;

 private:
  void insert_bucket(double value);
  void compress();
  void drop_oldest();
  bool detect_and_cut();

  double delta_;
  // levels_[k] holds buckets of size 2^k, front is oldest within the level.
  // Every bucket at level k+1 is older than every bucket at level k.
  std::vector<std::deque<Bucket>> levels_;
  std::uint64_t width_ = 0;
  double total_ = 0.0;
  double total_variance_ = 0.0;
  std::uint64_t cuts_ = 0;
};

}  // namespace streamex
