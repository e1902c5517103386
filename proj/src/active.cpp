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

#include "streamex/active.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace streamex {

BudgetTracker::BudgetTracker(double budget) : budget_(budget) {
  if (!(budget >= 0.0 && budget <= 1.0)) {
    throw ContractViolation("BudgetTracker: budget must lie in [0, 1]");
  }
}

double BudgetTracker::spending() const {
  return static_cast<double>(labeled_) / static_cast<double>(std::max<std::uint64_t>(seen_, 1));
}

void BudgetTracker::record_label() {
  if (labeled_ >= seen_) throw ContractViolation("BudgetTracker: more labels than arrivals");
  ++labeled_;
}

std::string to_string(QueryKind kind) {
  switch (kind) {
    case QueryKind::kRandom:
      return "ALR";
    case QueryKind::kRandVar:
      return "RandVar";
    case QueryKind::kSelective:
      return "ALS";
  }
  return "?";
}

bool should_query_random(Rng& rng, double budget) { return rng.bernoulli(budget); }

double selective_query_probability(double slope, double margin) {
  return slope / (slope + std::abs(margin));
}

QueryStrategy::QueryStrategy(QueryOptions options)
    : options_(options), threshold_(options.initial_threshold) {
  if (!(threshold_ > 0.0 && threshold_ <= 1.0)) {
    throw ContractViolation("QueryStrategy: threshold must lie in (0, 1]");
  }
  if (!(options_.adjust_step > 0.0 && options_.spread > 0.0 && options_.sampling_slope > 0.0)) {
    throw ContractViolation("QueryStrategy: step, spread and slope must be positive");
  }
}

bool QueryStrategy::should_query(std::span<const double> posterior, Rng& rng) {
  switch (options_.kind) {
    case QueryKind::kRandom:
      return should_query_random(rng, options_.budget);
    case QueryKind::kRandVar:
      return randvar(posterior, rng);
    case QueryKind::kSelective:
      return selective(posterior, rng);
  }
  return false;
}

bool QueryStrategy::randvar(std::span<const double> posterior, Rng& rng) {
  const double certainty = posterior.empty() ? 0.0 : *std::max_element(posterior.begin(), posterior.end());
  // Multiplier ~ Normal(1, spread) truncated to (0, inf).
  double multiplier;
  do {
    multiplier = rng.normal(1.0, options_.spread);
  } while (!(multiplier > 0.0));

  const bool query = certainty < threshold_ * multiplier;
  if (query) {
    threshold_ *= 1.0 - options_.adjust_step;
  } else {
    threshold_ *= 1.0 + options_.adjust_step;
  }
  threshold_ = std::clamp(threshold_, std::numeric_limits<double>::min(), 1.0);
  return query;
}

bool QueryStrategy::selective(std::span<const double> posterior, Rng& rng) {
  return rng.bernoulli(selective_query_probability(options_.sampling_slope, top_margin(posterior)));
}

ActiveLearner::ActiveLearner(std::unique_ptr<Classifier> learner, double budget,
                             QueryOptions query, const Rng& rng)
    : learner_(std::move(learner)),
      budget_(budget),
      query_(query),
      query_rng_(rng.derive("query")) {
  if (!learner_) throw ContractViolation("ActiveLearner: null learner");
}

Distribution ActiveLearner::predict(std::span<const double> features) const {
  return learner_->predict(features);
}

ProcessOutcome ActiveLearner::process(const Instance& x, const LabelOracle& oracle) {
  ProcessOutcome out;
  out.prediction = learner_->predict(x.features);
  budget_.record_arrival();
  if (budget_.allows() && query_.should_query(out.prediction, query_rng_)) {
    const ClassLabel y = oracle(x);
    budget_.record_label();
    learner_->update(LabeledInstance{x, y});
    ++updates_;
    out.queried = true;
    out.updates = 1;
    out.label = y;
  }
  return out;
}

}  // namespace streamex
