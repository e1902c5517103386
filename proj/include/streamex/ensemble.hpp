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
#include <memory>
#include <optional>
#include <string>

#include "streamex/active.hpp"
#include "streamex/adwin.hpp"
#include "streamex/exploit.hpp"
#include "streamex/welch.hpp"

namespace streamex {

enum class EnsembleMode { kSwitching, kElevating };

std::string to_string(EnsembleMode mode);

enum class Slot { kRisky, kStandard };

// Windowed error estimates of the two paired learners plus the elevation
// decision. Errors are tracked by one ADWIN per learner; the Welch test
// compares their means using the unbiased window variances.
//
// Elevation is suppressed for `cooldown` labeled examples after the start
// and after every elevation.
class ElevationGate {
 public:
  ElevationGate(double alpha, double delta, std::uint64_t cooldown = 30);

  void observe(double risky_error, double standard_error);

  // Runs the test. When it fires, the worse slot's estimator becomes a copy
  // of the better one and that slot is returned.
  std::optional<Slot> try_elevate();

  WelchResult test() const;
  // Strictly lower risky error; ties go to the standard learner.
  bool prefers_risky() const { return risky_.mean() < standard_.mean(); }

  const Adwin& risky_error() const { return risky_; }
  const Adwin& standard_error() const { return standard_; }
  double alpha() const { return alpha_; }

 private:
  double alpha_;
  std::uint64_t cooldown_;
  Adwin risky_;
  Adwin standard_;
  std::uint64_t since_last_ = 0;
};

struct EnsembleOptions {
  EnsembleMode mode = EnsembleMode::kSwitching;
  double alpha = 0.05;          // elevating significance level
  double error_delta = 0.002;   // ADWIN confidence of the error estimators
  std::uint64_t cooldown = 30;
  // Maintain full-label error estimates for judging elevations. Requires the
  // runner to call observe_truth().
  bool track_truth = false;
};

struct ElevationStats {
  std::uint64_t total = 0;
  std::uint64_t replaced_risky = 0;
  std::uint64_t replaced_standard = 0;
  std::uint64_t true_positive = 0;   // replaced learner had the higher full-label error
  std::uint64_t false_positive = 0;
};

// Risky learner (instance exploitation) paired with a standard learner
// trained on the same labels. Predictions come from the learner with the
// lower current error estimate.
class PairedEnsemble final : public StreamLearner {
 public:
  // Both learners start as copies of `prototype`. Query decisions draw from
  // rng.derive("query"), exploitation from rng.derive("exploit").
  PairedEnsemble(std::unique_ptr<Classifier> prototype, double budget, QueryOptions query,
                 ExploitOptions exploit, EnsembleOptions options, const Rng& rng);

  Distribution predict(std::span<const double> features) const override;
  ProcessOutcome process(const Instance& x, const LabelOracle& oracle) override;
  const BudgetTracker& budget() const override { return budget_; }
  std::uint64_t update_count() const override { return updates_; }
  void observe_truth(const Instance& x, ClassLabel label) override;

  const Classifier& risky() const { return *risky_; }
  const Classifier& standard() const { return *standard_; }
  const ElevationGate& gate() const { return gate_; }
  const ElevationStats& elevations() const { return stats_; }
  // Labeled examples delivered to each learner.
  std::uint64_t risky_labels() const { return risky_labels_; }
  std::uint64_t standard_labels() const { return standard_labels_; }

 private:
  void elevate(Slot worse);

  EnsembleOptions options_;
  std::unique_ptr<Classifier> risky_;
  std::unique_ptr<Classifier> standard_;
  BudgetTracker budget_;
  QueryStrategy query_;
  Rng query_rng_;
  Exploiter exploiter_;
  ElevationGate gate_;
  Adwin truth_risky_;
  Adwin truth_standard_;
  ElevationStats stats_;
  std::uint64_t updates_ = 0;
  std::uint64_t risky_labels_ = 0;
  std::uint64_t standard_labels_ = 0;
};

}  // namespace streamex
