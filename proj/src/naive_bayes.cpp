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

#include <algorithm>
#include <cmath>
#include <numbers>

#include "streamex/learners.hpp"

namespace streamex {

void GaussianEstimator::add(double x, double weight) {
  if (weight <= 0.0) return;
  const double new_weight = weight_ + weight;
  const double delta = x - mean_;
  mean_ += delta * weight / new_weight;
  m2_ += weight * delta * (x - mean_);
  weight_ = new_weight;
  min_ = std::min(min_, x);
  max_ = std::max(max_, x);
}

double GaussianEstimator::variance() const {
  return weight_ > 1.0 ? std::max(0.0, m2_ / (weight_ - 1.0)) : 0.0;
}

double GaussianEstimator::log_density(double x, double variance_floor) const {
  const double var = std::max(variance(), variance_floor);
  const double diff = x - mean_;
  return -0.5 * std::log(2.0 * std::numbers::pi * var) - diff * diff / (2.0 * var);
}

double GaussianEstimator::cdf(double x) const {
  if (weight_ <= 0.0 || x < min_) return 0.0;
  if (x >= max_) return 1.0;
  const double var = variance();
  if (var <= 0.0) return x >= mean_ ? 1.0 : 0.0;
  return 0.5 * std::erfc(-(x - mean_) / std::sqrt(2.0 * var));
}

NaiveBayes::NaiveBayes(std::size_t num_classes, std::size_t num_features,
                       double variance_floor)
    : num_features_(num_features),
      variance_floor_(variance_floor),
      class_counts_(num_classes, 0.0),
      stats_(num_classes * num_features) {
  if (num_classes == 0) throw ContractViolation("NaiveBayes: need at least one class");
}

void NaiveBayes::update(const LabeledInstance& example) {
  const auto x = example.features();
  if (x.size() != num_features_) {
    throw ContractViolation("NaiveBayes::update: expected " + std::to_string(num_features_) +
                            " features, got " + std::to_string(x.size()));
  }
  if (example.label >= class_counts_.size()) {
    throw ContractViolation("NaiveBayes::update: label out of range");
  }
  class_counts_[example.label] += 1.0;
  GaussianEstimator* row = &stats_[example.label * num_features_];
  for (std::size_t j = 0; j < num_features_; ++j) row[j].add(x[j]);
}

Distribution NaiveBayes::predict(std::span<const double> x) const {
  if (x.size() != num_features_) {
    throw ContractViolation("NaiveBayes::predict: expected " + std::to_string(num_features_) +
                            " features, got " + std::to_string(x.size()));
  }
  const std::size_t classes = class_counts_.size();
  double total = 0.0;
  for (const double c : class_counts_) total += c;
  Distribution dist(classes, 0.0);
  if (total <= 0.0) {
    normalize(dist);
    return dist;
  }

  std::vector<double> log_post(classes, -std::numeric_limits<double>::infinity());
  double best = -std::numeric_limits<double>::infinity();
  for (std::size_t c = 0; c < classes; ++c) {
    if (class_counts_[c] <= 0.0) continue;
    double lp = std::log(class_counts_[c] / total);
    const GaussianEstimator* row = &stats_[c * num_features_];
    for (std::size_t j = 0; j < num_features_; ++j) {
      lp += row[j].log_density(x[j], variance_floor_);
    }
    log_post[c] = lp;
    best = std::max(best, lp);
  }
  for (std::size_t c = 0; c < classes; ++c) {
    if (std::isfinite(log_post[c])) dist[c] = std::exp(log_post[c] - best);
  }
  normalize(dist);
  return dist;
}

std::unique_ptr<Classifier> NaiveBayes::clone() const {
  return std::make_unique<NaiveBayes>(*this);
}

const GaussianEstimator& NaiveBayes::estimator(ClassLabel c, std::size_t feature) const {
  return stats_.at(c * num_features_ + feature);
}

}  // namespace streamex
