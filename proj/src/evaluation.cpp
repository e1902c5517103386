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

#include "streamex/evaluation.hpp"

#include <chrono>

namespace streamex {

EvaluationReport run_test_then_train(StreamLearner& learner, InstanceSource& source,
                                     const EvaluationOptions& options) {
  const auto start = std::chrono::steady_clock::now();
  const std::size_t classes = source.num_classes();
  EvaluationReport report;
  KappaAccumulator global(classes, KappaWindow::kGlobal);
  const bool want_series = options.stride > 0;
  if (want_series && !options.adaptive_window && options.window_width == 0) {
    throw ContractViolation("run_test_then_train: window width must be positive");
  }
  KappaAccumulator windowed(classes,
                            options.adaptive_window ? KappaWindow::kAdaptive : KappaWindow::kSliding,
                            options.adaptive_window ? 0 : std::max<std::size_t>(1, options.window_width));

  const double budget = learner.budget().budget();
  while (options.max_instances == 0 || report.instances < options.max_instances) {
    auto example = source.next();
    if (!example) break;
    const ClassLabel truth = example->label;

    const ClassLabel predicted = argmax_label(learner.predict(example->instance.features));
    global.add(truth, predicted);
    if (want_series) windowed.add(truth, predicted);
    learner.observe_truth(example->instance, truth);

    learner.process(example->instance, [truth](const Instance&) { return truth; });
    ++report.instances;

    const auto& spent = learner.budget();
    if (static_cast<double>(spent.labeled()) > budget * static_cast<double>(spent.seen()) + 1.0) {
      ++report.budget_violations;
    }
    if (want_series && report.instances % options.stride == 0) {
      report.series.push_back({report.instances, windowed.kappa(), windowed.accuracy()});
    }
  }
  if (want_series && report.instances > 0 &&
      (report.series.empty() || report.series.back().t != report.instances)) {
    report.series.push_back({report.instances, windowed.kappa(), windowed.accuracy()});
  }

  report.global_kappa = global.kappa();
  report.accuracy = global.accuracy();
  report.spending = learner.budget().spending();
  report.labeled = learner.budget().labeled();
  report.updates = learner.update_count();
  report.elapsed_ms =
      std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
  return report;
}

std::vector<SeriesPoint> prequential_series(StreamLearner& learner, InstanceSource& source,
                                            std::size_t window_width, std::size_t stride,
                                            bool adaptive_window) {
  if (stride == 0) throw ContractViolation("prequential_series: stride must be positive");
  EvaluationOptions options;
  options.window_width = window_width;
  options.stride = stride;
  options.adaptive_window = adaptive_window;
  return run_test_then_train(learner, source, options).series;
}

}  // namespace streamex
