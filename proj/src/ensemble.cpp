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

#include "streamex/ensemble.hpp"

namespace streamex {

std::string to_string(EnsembleMode mode) {
  return mode == EnsembleMode::kSwitching ? "switching" : "elevating";
}

ElevationGate::ElevationGate(double alpha, double delta, std::uint64_t cooldown)
    : alpha_(alpha), cooldown_(cooldown), risky_(delta), standard_(delta) {
  if (!(alpha >= 0.0 && alpha < 1.0)) throw ContractViolation("ElevationGate: alpha must lie in [0, 1)");
}

void ElevationGate::observe(double risky_error, double standard_error) {
  risky_.update(risky_error);
  standard_.update(standard_error);
  ++since_last_;
}

WelchResult ElevationGate::test() const {
  if (risky_.width() < 2 || standard_.width() < 2) return {};
  return welch_test(risky_.mean(), risky_.sample_variance(), risky_.width(), standard_.mean(),
                    standard_.sample_variance(), standard_.width(), alpha_);
}

std::optional<Slot> ElevationGate::try_elevate() {
  if (since_last_ < cooldown_) return std::nullopt;
  if (risky_.width() < 2 || standard_.width() < 2) return std::nullopt;
  if (!test().significant) return std::nullopt;
  since_last_ = 0;
  if (risky_.mean() > standard_.mean()) {
    risky_ = standard_;
    return Slot::kRisky;
  }
  standard_ = risky_;
  return Slot::kStandard;
}

PairedEnsemble::PairedEnsemble(std::unique_ptr<Classifier> prototype, double budget,
                               QueryOptions query, ExploitOptions exploit,
                               EnsembleOptions options, const Rng& rng)
    : options_(options),
      budget_(budget),
      query_(query),
      query_rng_(rng.derive("query")),
      exploiter_(exploit, rng.derive("exploit")),
      gate_(options.alpha, options.error_delta, options.cooldown),
      truth_risky_(options.error_delta),
      truth_standard_(options.error_delta) {
  if (!prototype) throw ContractViolation("PairedEnsemble: null learner");
  risky_ = prototype->clone();
  standard_ = std::move(prototype);
}

Distribution PairedEnsemble::predict(std::span<const double> features) const {
  return gate_.prefers_risky() ? risky_->predict(features) : standard_->predict(features);
}

void PairedEnsemble::observe_truth(const Instance& x, ClassLabel label) {
  if (!options_.track_truth) return;
  truth_risky_.update(argmax_label(risky_->predict(x.features)) != label ? 1.0 : 0.0);
  truth_standard_.update(argmax_label(standard_->predict(x.features)) != label ? 1.0 : 0.0);
}

void PairedEnsemble::elevate(Slot worse) {
  ++stats_.total;
  if (worse == Slot::kRisky) {
    ++stats_.replaced_risky;
    if (options_.track_truth) {
      (truth_risky_.mean() > truth_standard_.mean() ? stats_.true_positive : stats_.false_positive)++;
      truth_risky_ = truth_standard_;
    }
    risky_ = standard_->clone();
  } else {
    ++stats_.replaced_standard;
    if (options_.track_truth) {
      (truth_standard_.mean() > truth_risky_.mean() ? stats_.true_positive : stats_.false_positive)++;
      truth_standard_ = truth_risky_;
    }
    standard_ = risky_->clone();
  }
}

ProcessOutcome PairedEnsemble::process(const Instance& x, const LabelOracle& oracle) {
  const Distribution risky_pred = risky_->predict(x.features);
  const Distribution standard_pred = standard_->predict(x.features);

  ProcessOutcome out;
  out.prediction = gate_.prefers_risky() ? risky_pred : standard_pred;
  budget_.record_arrival();
  if (!(budget_.allows() && query_.should_query(out.prediction, query_rng_))) return out;

  const ClassLabel y = oracle(x);
  budget_.record_label();
  const bool risky_wrong = argmax_label(risky_pred) != y;
  const bool standard_wrong = argmax_label(standard_pred) != y;
  gate_.observe(risky_wrong ? 1.0 : 0.0, standard_wrong ? 1.0 : 0.0);
  if (options_.mode == EnsembleMode::kElevating) {
    if (const auto worse = gate_.try_elevate()) elevate(*worse);
  }

  const LabeledInstance example{x, y};
  const auto step = exploiter_.learn(*risky_, example, risky_wrong);
  standard_->update(example);
  ++risky_labels_;
  ++standard_labels_;

  out.queried = true;
  out.lambda = step.lambda;
  out.updates = step.updates + 1;
  out.label = y;
  updates_ += out.updates;
  return out;
}

}  // namespace streamex
