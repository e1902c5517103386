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

#include "streamex/exploit.hpp"

#include <algorithm>
#include <cmath>

namespace streamex {

LabeledWindow::LabeledWindow(std::size_t capacity) : capacity_(capacity) {
  if (capacity == 0) throw ContractViolation("LabeledWindow: capacity must be positive");
}

void LabeledWindow::set_capacity(std::size_t capacity) {
  if (capacity == 0) throw ContractViolation("LabeledWindow: capacity must be positive");
  capacity_ = capacity;
  while (buffer_.size() > capacity_) buffer_.pop_front();
}

void LabeledWindow::push(LabeledInstance example) {
  buffer_.push_back(std::move(example));
  while (buffer_.size() > capacity_) buffer_.pop_front();
}

const LabeledInstance& LabeledWindow::at(std::size_t position) const {
  if (position == 0 || position > buffer_.size()) {
    throw ContractViolation("LabeledWindow::at: position " + std::to_string(position) +
                            " outside [1, " + std::to_string(buffer_.size()) + "]");
  }
  return buffer_[position - 1];
}

std::string to_string(ExploitKind kind) {
  switch (kind) {
    case ExploitKind::kUniformWindow:
      return "UW";
    case ExploitKind::kExponentialWindow:
      return "EW";
    case ExploitKind::kSingleExposition:
      return "SE";
  }
  return "?";
}

std::size_t sample_index(std::size_t window_size, double r) {
  if (window_size == 0) throw ContractViolation("sample_index: empty window");
  const double scaled = std::ceil(r * static_cast<double>(window_size));
  if (!(scaled >= 1.0)) return 1;
  if (scaled >= static_cast<double>(window_size)) return window_size;
  return static_cast<std::size_t>(scaled);
}

double exponential_transform(double u, double gamma) { return -std::log(u) / gamma; }

double draw_truncated_exponential(Rng& rng, double gamma) {
  if (!(gamma > 0.0)) throw ContractViolation("draw_truncated_exponential: gamma must be positive");
  for (;;) {
    const double e = exponential_transform(rng.uniform(), gamma);
    if (e <= 1.0) return e;
  }
}

std::vector<std::size_t> select_indices(const ExploitStrategy& strategy, std::size_t window_size,
                                        std::size_t lambda, Rng& rng) {
  if (window_size == 0) throw ContractViolation("select_indices: empty window");
  std::vector<std::size_t> out;
  out.reserve(lambda);
  switch (strategy.kind) {
    case ExploitKind::kUniformWindow:
      for (std::size_t k = 0; k < lambda; ++k) out.push_back(sample_index(window_size, rng.uniform()));
      break;
    case ExploitKind::kExponentialWindow:
      for (std::size_t k = 0; k < lambda; ++k) {
        const double e = draw_truncated_exponential(rng, strategy.gamma);
        out.push_back(sample_index(window_size, 1.0 - e));
      }
      break;
    case ExploitKind::kSingleExposition:
      out.assign(lambda, window_size);
      break;
  }
  return out;
}

std::size_t effective_intensity(double error, std::size_t lambda_max) {
  if (!(error >= 0.0 && error <= 1.0)) {
    throw ContractViolation("effective_intensity: error outside [0, 1]");
  }
  return static_cast<std::size_t>(std::lround(error * static_cast<double>(lambda_max)));
}

std::string to_string(const WindowPolicy& policy) {
  switch (policy.kind) {
    case WindowPolicyKind::kFixed:
      return "fixed(" + std::to_string(policy.max_size) + ")";
    case WindowPolicyKind::kDynamicShrink:
      return "dynamic(" + std::to_string(policy.max_size) + ")";
    case WindowPolicyKind::kAdwinDriven:
      return "adwin";
  }
  return "?";
}

std::size_t effective_window_cap(const WindowPolicy& policy, double error,
                                 std::uint64_t adwin_width) {
  if (!(error >= 0.0 && error <= 1.0)) {
    throw ContractViolation("effective_window_cap: error outside [0, 1]");
  }
  switch (policy.kind) {
    case WindowPolicyKind::kFixed:
      return std::max<std::size_t>(1, policy.max_size);
    case WindowPolicyKind::kDynamicShrink: {
      const double shrunk = std::floor((1.0 - error) * static_cast<double>(policy.max_size));
      return std::max<std::size_t>(1, static_cast<std::size_t>(shrunk));
    }
    case WindowPolicyKind::kAdwinDriven:
      return std::max<std::size_t>(1, static_cast<std::size_t>(adwin_width));
  }
  return 1;
}

Exploiter::Exploiter(ExploitOptions options, Rng rng)
    : options_(options),
      window_(effective_window_cap(options.window, 0.0, 1)),
      monitor_(options.monitor_delta),
      rng_(std::move(rng)) {
  if (!(options_.strategy.gamma > 0.0)) throw ContractViolation("Exploiter: gamma must be positive");
}

Exploiter::Step Exploiter::learn(Classifier& learner, const LabeledInstance& example,
                                 bool was_wrong) {
  learner.update(example);
  monitor_.update(was_wrong ? 1.0 : 0.0);
  const double error = monitor_.mean();

  window_.set_capacity(effective_window_cap(options_.window, error, monitor_.width()));
  window_.push(example);

  Step step;
  step.lambda = options_.dynamic_intensity ? effective_intensity(error, options_.lambda_max)
                                           : options_.lambda_max;
  const auto indices = select_indices(options_.strategy, window_.size(), step.lambda, rng_);
  for (const std::size_t i : indices) learner.update(window_.at(i));
  step.updates = 1 + indices.size();
  return step;
}

ExploitingWrapper::ExploitingWrapper(std::unique_ptr<Classifier> learner, double budget,
                                     QueryOptions query, ExploitOptions exploit, const Rng& rng)
    : learner_(std::move(learner)),
      budget_(budget),
      query_(query),
      query_rng_(rng.derive("query")),
      exploiter_(exploit, rng.derive("exploit")) {
  if (!learner_) throw ContractViolation("ExploitingWrapper: null learner");
}

Distribution ExploitingWrapper::predict(std::span<const double> features) const {
  return learner_->predict(features);
}

ProcessOutcome ExploitingWrapper::process(const Instance& x, const LabelOracle& oracle) {
  ProcessOutcome out;
  out.prediction = learner_->predict(x.features);
  budget_.record_arrival();
  if (budget_.allows() && query_.should_query(out.prediction, query_rng_)) {
    const ClassLabel y = oracle(x);
    budget_.record_label();
    const bool wrong = argmax_label(out.prediction) != y;
    const auto step = exploiter_.learn(*learner_, LabeledInstance{x, y}, wrong);
    updates_ += step.updates;
    out.queried = true;
    out.lambda = step.lambda;
    out.updates = step.updates;
    out.label = y;
  }
  return out;
}

}  // namespace streamex
