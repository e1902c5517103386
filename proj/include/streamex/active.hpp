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
#include <functional>
#include <memory>
#include <optional>
#include <span>
#include <string>

#include "streamex/core.hpp"
#include "streamex/rng.hpp"

namespace streamex {

// Labeling expenses. Spending is the exact running ratio labeled / seen.
class BudgetTracker {
 public:
  explicit BudgetTracker(double budget);

  double budget() const { return budget_; }
  std::uint64_t labeled() const { return labeled_; }
  std::uint64_t seen() const { return seen_; }

  // labeled / max(seen, 1)
  double spending() const;
  // spending < budget
  bool allows() const { return spending() < budget_; }

  void record_arrival() { ++seen_; }
  void record_label();

 private:
  double budget_;
  std::uint64_t labeled_ = 0;
  std::uint64_t seen_ = 0;
};

enum class QueryKind { kRandom, kRandVar, kSelective };

std::string to_string(QueryKind kind);

struct QueryOptions {
  QueryKind kind = QueryKind::kRandVar;
  double budget = 1.0;            // Bernoulli rate for kRandom
  double initial_threshold = 1.0;  // theta_q for kRandVar
  double adjust_step = 0.01;       // s_q
  double spread = 1.0;             // sigma_q of the threshold multiplier
  double sampling_slope = 0.01;    // c_q for kSelective
};

// Bernoulli(budget) query decision.
bool should_query_random(Rng& rng, double budget);

// Query probability c / (c + |margin|).
double selective_query_probability(double slope, double margin);

// Online query strategy. Stateful for RandVar (the variable threshold).
class QueryStrategy {
 public:
  explicit QueryStrategy(QueryOptions options = {});

  bool should_query(std::span<const double> posterior, Rng& rng);

  QueryKind kind() const { return options_.kind; }
  double threshold() const { return threshold_; }
  const QueryOptions& options() const { return options_; }

 private:
  bool randvar(std::span<const double> posterior, Rng& rng);
  bool selective(std::span<const double> posterior, Rng& rng);

  QueryOptions options_;
  double threshold_;
};

// Supplies the true label of a queried instance.
using LabelOracle = std::function<ClassLabel(const Instance&)>;

struct ProcessOutcome {
  bool queried = false;
  std::size_t lambda = 0;        // exploitation intensity used
  std::size_t updates = 0;       // learner updates performed
  Distribution prediction;       // made before any update
  std::optional<ClassLabel> label;
};

// A learner wrapped with its labeling policy: what the evaluation runner
// drives. predict() is pure; process() runs one arrival through the
// query-then-train path.
class StreamLearner {
 public:
  virtual ~StreamLearner() = default;

  virtual Distribution predict(std::span<const double> features) const = 0;
  virtual ProcessOutcome process(const Instance& x, const LabelOracle& oracle) = 0;

  virtual const BudgetTracker& budget() const = 0;
  virtual std::uint64_t update_count() const = 0;

  // Full-label feedback for diagnostics only. Must not influence learning.
  virtual void observe_truth(const Instance& /*x*/, ClassLabel /*label*/) {}
};

// Plain online active learning: query gate, then a single update.
class ActiveLearner final : public StreamLearner {
 public:
  // The query decisions draw from rng.derive("query").
  ActiveLearner(std::unique_ptr<Classifier> learner, double budget, QueryOptions query,
                const Rng& rng);

  Distribution predict(std::span<const double> features) const override;
  ProcessOutcome process(const Instance& x, const LabelOracle& oracle) override;
  const BudgetTracker& budget() const override { return budget_; }
  std::uint64_t update_count() const override { return updates_; }

  const Classifier& learner() const { return *learner_; }

 private:
  std::unique_ptr<Classifier> learner_;
  BudgetTracker budget_;
  QueryStrategy query_;
  Rng query_rng_;
  std::uint64_t updates_ = 0;
};

}  // namespace streamex
