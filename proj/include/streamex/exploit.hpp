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
#include <memory>
#include <string>
#include <vector>

#include "streamex/active.hpp"
#include "streamex/adwin.hpp"
#include "streamex/core.hpp"
#include "streamex/rng.hpp"

namespace streamex {

// Bounded FIFO of the most recent labeled instances. Positions are 1-based:
// at(1) is the oldest instance w_1, at(size()) the newest w_omega.
class LabeledWindow {
 public:
  explicit LabeledWindow(std::size_t capacity);

  // Evicts the oldest instances until size() <= capacity.
  void set_capacity(std::size_t capacity);
  void push(LabeledInstance example);

  std::size_t size() const { return buffer_.size(); }
  std::size_t capacity() const { return capacity_; }
  bool empty() const { return buffer_.empty(); }

  const LabeledInstance& at(std::size_t position) const;
  const LabeledInstance& newest() const { return at(size()); }

 private:
  std::deque<LabeledInstance> buffer_;
  std::size_t capacity_;
};

enum class ExploitKind { kUniformWindow, kExponentialWindow, kSingleExposition };

std::string to_string(ExploitKind kind);

struct ExploitStrategy {
  ExploitKind kind = ExploitKind::kExponentialWindow;
  double gamma = 4.0;  // exponential window rate
};

// ceil(r * window_size), clamped to [1, window_size].
std::size_t sample_index(std::size_t window_size, double r);

// -ln(u) / gamma.
double exponential_transform(double u, double gamma);

// Draws e = -ln(u) / gamma, rejecting draws above 1. Result lies in (0, 1].
double draw_truncated_exponential(Rng& rng, double gamma);

// Multiset of lambda window positions.
//   UW: ceil(u * omega)
//   EW: ceil((1 - e) * omega) with e truncated-exponential, so small e
//       lands on the newest positions
//   SE: omega, lambda times
std::vector<std::size_t> select_indices(const ExploitStrategy& strategy, std::size_t window_size,
                                        std::size_t lambda, Rng& rng);

// round(error * lambda_max), halves rounded away from zero.
std::size_t effective_intensity(double error, std::size_t lambda_max);

enum class WindowPolicyKind { kFixed, kDynamicShrink, kAdwinDriven };

struct WindowPolicy {
  WindowPolicyKind kind = WindowPolicyKind::kAdwinDriven;
  std::size_t max_size = 1000;  // ignored by kAdwinDriven
};

std::string to_string(const WindowPolicy& policy);

// Fixed: max_size. DynamicShrink: max(1, floor((1 - error) * max_size)).
// AdwinDriven: max(1, adwin_width).
std::size_t effective_window_cap(const WindowPolicy& policy, double error,
                                 std::uint64_t adwin_width);

struct ExploitOptions {
  ExploitStrategy strategy;
  std::size_t lambda_max = 100;
  bool dynamic_intensity = false;
  WindowPolicy window;
  double monitor_delta = 0.002;  // ADWIN confidence of the error monitor
};

// The exploitation half of the wrapper: owns the labeled window, the error
// monitor driving the dynamic controls, and the index sampler's random
// stream. Used by ExploitingWrapper and by the risky side of PairedEnsemble.
class Exploiter {
 public:
  struct Step {
    std::size_t lambda = 0;
    std::size_t updates = 0;
  };

  Exploiter(ExploitOptions options, Rng rng);

  // Trains `learner` on a freshly labeled example, then replays lambda
  // window entries. `was_wrong` is the learner's error on the example before
  // this update.
  Step learn(Classifier& learner, const LabeledInstance& example, bool was_wrong);

  const LabeledWindow& window() const { return window_; }
  const Adwin& error_monitor() const { return monitor_; }
  const ExploitOptions& options() const { return options_; }

 private:
  ExploitOptions options_;
  LabeledWindow window_;
  Adwin monitor_;
  Rng rng_;
};

// Active learning combined with instance exploitation: after each queried
// instance the learner is updated with it and then with lambda instances
// drawn from the labeled window.
class ExploitingWrapper final : public StreamLearner {
 public:
  // Query decisions draw from rng.derive("query"), index sampling from
  // rng.derive("exploit").
  ExploitingWrapper(std::unique_ptr<Classifier> learner, double budget, QueryOptions query,
                    ExploitOptions exploit, const Rng& rng);

  Distribution predict(std::span<const double> features) const override;
  ProcessOutcome process(const Instance& x, const LabelOracle& oracle) override;
  const BudgetTracker& budget() const override { return budget_; }
  std::uint64_t update_count() const override { return updates_; }

  const Classifier& learner() const { return *learner_; }
  const Exploiter& exploiter() const { return exploiter_; }

 private:
  std::unique_ptr<Classifier> learner_;
  BudgetTracker budget_;
  QueryStrategy query_;
  Rng query_rng_;
  Exploiter exploiter_;
  std::uint64_t updates_ = 0;
};

}  // namespace streamex
