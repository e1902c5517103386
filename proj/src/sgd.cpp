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

#include "streamex/learners.hpp"

namespace streamex {

SgdLinear::SgdLinear(std::size_t num_classes, std::size_t num_features, SgdOptions options)
    : num_classes_(num_classes),
      num_features_(num_features),
      options_(options),
      weights_(num_classes * (num_features + 1), 0.0) {
  if (num_classes == 0) throw ContractViolation("SgdLinear: need at least one class");
  if (options.learning_rate < 0.0) throw ContractViolation("SgdLinear: negative learning rate");
}

std::vector<double> SgdLinear::margins(std::span<const double> x) const {
  if (x.size() != num_features_) {
    throw ContractViolation("SgdLinear: expected " + std::to_string(num_features_) +
                            " features, got " + std::to_string(x.size()));
  }
  std::vector<double> out(num_classes_, 0.0);
  const std::size_t stride = row_stride();
  for (std::size_t k = 0; k < num_classes_; ++k) {
    const double* w = &weights_[k * stride];
    double m = w[num_features_];
    for (std::size_t j = 0; j < num_features_; ++j) m += w[j] * x[j];
    out[k] = m;
  }
  return out;
}

namespace {

double target_sign(std::size_t k, ClassLabel label) { return k == label ? 1.0 : -1.0; }

double softplus(double z) {
  // log(1 + e^z) without overflow
  return z > 0.0 ? z + std::log1p(std::exp(-z)) : std::log1p(std::exp(z));
}

double sigmoid(double z) {
  if (z >= 0.0) return 1.0 / (1.0 + std::exp(-z));
  const double e = std::exp(z);
  return e / (1.0 + e);
}

}  // namespace

double SgdLinear::loss(const LabeledInstance& example) const {
  const auto m = margins(example.features());
  double total = 0.0;
  for (std::size_t k = 0; k < num_classes_; ++k) {
    const double ym = target_sign(k, example.label) * m[k];
    total += options_.loss == SgdLoss::kHinge ? std::max(0.0, 1.0 - ym) : softplus(-ym);
  }
  return total;
}

std::vector<double> SgdLinear::gradient(const LabeledInstance& example) const {
  const auto x = example.features();
  const auto m = margins(x);
  const std::size_t stride = row_stride();
  std::vector<double> grad(weights_.size(), 0.0);
  for (std::size_t k = 0; k < num_classes_; ++k) {
    const double t = target_sign(k, example.label);
    double scale = 0.0;  // d loss / d margin
    if (options_.loss == SgdLoss::kHinge) {
      if (t * m[k] < 1.0) scale = -t;
    } else {
      scale = -t * sigmoid(-t * m[k]);
    }
    if (scale == 0.0) continue;
    double* g = &grad[k * stride];
    for (std::size_t j = 0; j < num_features_; ++j) g[j] = scale * x[j];
    g[num_features_] = scale;
  }
  return grad;
}

void SgdLinear::update(const LabeledInstance& example) {
  if (example.label >= num_classes_) throw ContractViolation("SgdLinear::update: label out of range");
  if (options_.learning_rate == 0.0) return;
  const auto grad = gradient(example);
  const std::size_t stride = row_stride();
  for (std::size_t i = 0; i < grad.size(); ++i) {
    const double next = weights_[i] - options_.learning_rate * grad[i];
    if (!std::isfinite(next)) {
      const std::size_t feature = i % stride;
      throw NonFiniteGradient(feature, "SgdLinear::update: non-finite gradient at feature " +
                                           std::to_string(feature));
    }
  }
  for (std::size_t i = 0; i < grad.size(); ++i) weights_[i] -= options_.learning_rate * grad[i];
}

Distribution SgdLinear::predict(std::span<const double> x) const {
  auto m = margins(x);
  Distribution dist(num_classes_);
  if (options_.loss == SgdLoss::kLogistic) {
    const double top = *std::max_element(m.begin(), m.end());
    for (std::size_t k = 0; k < num_classes_; ++k) dist[k] = std::exp(m[k] - top);
  } else {
    // Margins clipped to the hinge's active band [-1, 1] and shifted to be
    // non-negative.
    for (std::size_t k = 0; k < num_classes_; ++k) dist[k] = std::clamp(m[k], -1.0, 1.0) + 1.0;
  }
  normalize(dist);
  return dist;
}

std::unique_ptr<Classifier> SgdLinear::clone() const { return std::make_unique<SgdLinear>(*this); }

}  // namespace streamex
