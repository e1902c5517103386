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
#include <vector>

#include "streamex/active.hpp"
#include "streamex/metrics.hpp"
#include "streamex/streams.hpp"

namespace streamex {

struct EvaluationOptions {
  // Prequential series; stride 0 disables it.
  std::size_t window_width = 1000;
  std::size_t stride = 100;
  bool adaptive_window = false;  // ADWIN-sized window instead of window_width
  // Stop after this many instances (0 = until the source ends).
  std::uint64_t max_instances = 0;
};

struct EvaluationReport {
  std::uint64_t instances = 0;
  double global_kappa = 0.0;  // 0 when no instances were seen
  double accuracy = 0.0;
  double spending = 0.0;
  std::uint64_t labeled = 0;
  std::uint64_t updates = 0;
  double elapsed_ms = 0.0;
  // Prefixes where labeled > budget * seen + 1.
  std::uint64_t budget_violations = 0;
  std::vector<SeriesPoint> series;
};

// Test-then-train: every instance is first predicted (and scored), then
// offered to the learner's query-and-train path.
EvaluationReport run_test_then_train(StreamLearner& learner, InstanceSource& source,
                                     const EvaluationOptions& options = {});

// Windowed kappa sampled every `stride` instances, plus a final point when
// the stream length is not a multiple of the stride.
std::vector<SeriesPoint> prequential_series(StreamLearner& learner, InstanceSource& source,
                                            std::size_t window_width, std::size_t stride,
                                            bool adaptive_window = false);

}  // namespace streamex
