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

#include "streamex/metrics.hpp"

#include <algorithm>

namespace streamex {

ConfusionMatrix::ConfusionMatrix(std::size_t classes)
    : classes_(classes), cells_(classes * classes, 0) {
  if (classes == 0) throw ContractViolation("ConfusionMatrix: need at least one class");
}

void ConfusionMatrix::add(ClassLabel truth, ClassLabel predicted, std::int64_t count) {
  if (truth >= classes_ || predicted >= classes_) {
    throw ContractViolation("ConfusionMatrix::add: class out of range");
  }
  auto& cell = cells_[truth * classes_ + predicted];
  if (count < 0 && cell < static_cast<std::uint64_t>(-count)) {
    throw ContractViolation("ConfusionMatrix::add: cell would become negative");
  }
  cell = static_cast<std::uint64_t>(static_cast<std::int64_t>(cell) + count);
  total_ = static_cast<std::uint64_t>(static_cast<std::int64_t>(total_) + count);
}

std::uint64_t ConfusionMatrix::at(ClassLabel truth, ClassLabel predicted) const {
  return cells_.at(truth * classes_ + predicted);
}

std::uint64_t ConfusionMatrix::correct() const {
  std::uint64_t c = 0;
  for (std::size_t k = 0; k < classes_; ++k) c += cells_[k * classes_ + k];
  return c;
}

double kappa(const ConfusionMatrix& m) {
  if (m.total() == 0) throw ContractViolation("kappa: empty confusion matrix");
  const double total = static_cast<double>(m.total());
  const std::size_t c = m.classes();
  double chance = 0.0;
  for (std::size_t k = 0; k < c; ++k) {
    double row = 0.0;
    double col = 0.0;
    for (std::size_t j = 0; j < c; ++j) {
      row += static_cast<double>(m.at(static_cast<ClassLabel>(k), static_cast<ClassLabel>(j)));
      col += static_cast<double>(m.at(static_cast<ClassLabel>(j), static_cast<ClassLabel>(k)));
    }
    chance += row * col;
  }
  const double p_e = chance / (total * total);
  const double p_o = static_cast<double>(m.correct()) / total;
  if (p_e >= 1.0) return 0.0;
  return (p_o - p_e) / (1.0 - p_e);
}

KappaAccumulator::KappaAccumulator(std::size_t classes, KappaWindow mode, std::size_t width,
                                   double delta)
    : mode_(mode), width_(width), confusion_(classes), adwin_(delta) {
  if (mode == KappaWindow::kSliding && width == 0) {
    throw ContractViolation("KappaAccumulator: sliding window needs a positive width");
  }
}

void KappaAccumulator::add(ClassLabel truth, ClassLabel predicted) {
  confusion_.add(truth, predicted);
  if (mode_ == KappaWindow::kGlobal) return;
  history_.emplace_back(truth, predicted);
  std::size_t keep = width_;
  if (mode_ == KappaWindow::kAdaptive) {
    adwin_.update(truth == predicted ? 1.0 : 0.0);
    keep = static_cast<std::size_t>(adwin_.width());
  }
  while (history_.size() > keep) {
    confusion_.add(history_.front().first, history_.front().second, -1);
    history_.pop_front();
  }
}

double KappaAccumulator::kappa() const {
  return confusion_.total() == 0 ? 0.0 : streamex::kappa(confusion_);
}

double KappaAccumulator::accuracy() const {
  return confusion_.total() == 0
             ? 0.0
             : static_cast<double>(confusion_.correct()) / static_cast<double>(confusion_.total());
}

SegmentSchedule::SegmentSchedule(std::vector<Interval> drift_intervals, std::uint64_t length)
    : intervals_(std::move(drift_intervals)), length_(length) {
  for (std::size_t i = 0; i < intervals_.size(); ++i) {
    const auto& [start, end] = intervals_[i];
    if (start >= end || end > length_) throw ContractViolation("SegmentSchedule: invalid interval");
    if (i > 0 && start < intervals_[i - 1].second) {
      throw ContractViolation("SegmentSchedule: intervals overlap or are unsorted");
    }
  }
}

SegmentSchedule SegmentSchedule::for_preset(const PresetInfo& preset,
                                            std::optional<std::uint64_t> length_override) {
  return SegmentSchedule(preset_drift_intervals(preset, length_override),
                         length_override.value_or(preset.length));
}

bool SegmentSchedule::in_drift(std::uint64_t index) const {
  const auto it = std::upper_bound(
      intervals_.begin(), intervals_.end(), index,
      [](std::uint64_t v, const Interval& iv) { return v < iv.first; });
  if (it == intervals_.begin()) return false;
  return index < std::prev(it)->second;
}

SegmentSummary segment_average(const std::vector<SeriesPoint>& series,
                               const SegmentSchedule& schedule, bool use_accuracy) {
  SegmentSummary out;
  double stable_sum = 0.0;
  double drift_sum = 0.0;
  for (const auto& p : series) {
    if (p.t == 0) continue;
    const double v = use_accuracy ? p.accuracy : p.kappa;
    if (schedule.in_drift(p.t - 1)) {
      drift_sum += v;
      ++out.drift_points;
    } else {
      stable_sum += v;
      ++out.stable_points;
    }
  }
  if (out.stable_points > 0) out.stable = stable_sum / static_cast<double>(out.stable_points);
  if (out.drift_points > 0) out.drift = drift_sum / static_cast<double>(out.drift_points);
  if (out.stable && out.drift) out.balanced = 0.5 * (*out.stable + *out.drift);
  return out;
}

}  // namespace streamex
