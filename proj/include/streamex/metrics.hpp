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
#include <optional>
#include <utility>
#include <vector>

#include "streamex/adwin.hpp"
#include "streamex/core.hpp"
#include "streamex/streams.hpp"

namespace streamex {

// Rows are true classes, columns predicted classes.
class ConfusionMatrix {
 public:
  explicit ConfusionMatrix(std::size_t classes);

  void add(ClassLabel truth, ClassLabel predicted, std::int64_t count = 1);
  std::uint64_t at(ClassLabel truth, ClassLabel predicted) const;
  std::uint64_t total() const { return total_; }
  std::size_t classes() const { return classes_; }
  std::uint64_t correct() const;

 private:
  std::size_t classes_;
  std::vector<std::uint64_t> cells_;
  std::uint64_t total_ = 0;
};

// Cohen's kappa (p_o - p_e) / (1 - p_e); 0 when p_e == 1.
// Throws ContractViolation on an empty matrix.
double kappa(const ConfusionMatrix& confusion);

enum class KappaWindow { kGlobal, kSliding, kAdaptive };

// Kappa over all predictions, a fixed sliding window, or an ADWIN window on
// the correctness signal.
class KappaAccumulator {
 public:
  KappaAccumulator(std::size_t classes, KappaWindow mode, std::size_t width = 0,
                   double delta = 0.002);

  void add(ClassLabel truth, ClassLabel predicted);

  // 0 while empty.
  double kappa() const;
  double accuracy() const;
  std::uint64_t count() const { return confusion_.total(); }
  const ConfusionMatrix& confusion() const { return confusion_; }

 private:
  KappaWindow mode_;
  std::size_t width_;
  ConfusionMatrix confusion_;
  std::deque<std::pair<ClassLabel, ClassLabel>> history_;
  Adwin adwin_;
};

struct SeriesPoint {
  std::uint64_t t = 0;  // instances seen so far
  double kappa = 0.0;
  double accuracy = 0.0;
};

// Drift periods of a stream. A series point at time t (instances seen)
// describes instance t - 1.
class SegmentSchedule {
 public:
  SegmentSchedule() = default;
  // Intervals must be sorted, non-overlapping and within [0, length].
  SegmentSchedule(std::vector<Interval> drift_intervals, std::uint64_t length);

  static SegmentSchedule for_preset(const PresetInfo& preset,
                                    std::optional<std::uint64_t> length_override = {});

  bool in_drift(std::uint64_t instance_index) const;
  const std::vector<Interval>& intervals() const { return intervals_; }

 private:
  std::vector<Interval> intervals_;
  std::uint64_t length_ = 0;
};

struct SegmentSummary {
  std::optional<double> stable;
  std::optional<double> drift;
  std::optional<double> balanced;  // (stable + drift) / 2, when both exist
  std::size_t stable_points = 0;
  std::size_t drift_points = 0;
};

// Mean series kappa inside versus outside the drift periods.
SegmentSummary segment_average(const std::vector<SeriesPoint>& series,
                               const SegmentSchedule& schedule, bool use_accuracy = false);

}  // namespace streamex
