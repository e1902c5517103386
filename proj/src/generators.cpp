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
#include <boost/math/distributions/normal.hpp>
#include <cmath>
#include <numeric>

#include "streamex/streams.hpp"

namespace streamex {

double sigmoid_probability(const DriftTransition& transition, double t) {
  const double z = transition.slope * (t - transition.center);
  if (z >= 0.0) return 1.0 / (1.0 + std::exp(-z));
  const double e = std::exp(z);
  return e / (1.0 + e);
}

DriftTransition transition_of_width(double center, double width) {
  if (!(width > 0.0)) throw ContractViolation("transition_of_width: width must be positive");
  return DriftTransition{4.0 / width, center};
}

// SEA

SeaConcept::SeaConcept(double threshold) : threshold_(threshold) {}

LabeledInstance SeaConcept::sample(Rng& rng) {
  LabeledInstance out;
  out.instance.features = {rng.uniform(0.0, 10.0), rng.uniform(0.0, 10.0), rng.uniform(0.0, 10.0)};
  out.label = label_of(out.instance.features);
  return out;
}

ClassLabel SeaConcept::label_of(std::span<const double> x) const {
  return x[0] + x[1] <= threshold_ ? 1 : 0;
}

// STAGGER

StaggerConcept::StaggerConcept(int rule) : rule_(rule) {
  if (rule < 1 || rule > 3) throw ContractViolation("StaggerConcept: rule must be 1, 2 or 3");
}

LabeledInstance StaggerConcept::sample(Rng& rng) {
  LabeledInstance out;
  out.instance.features = {static_cast<double>(rng.below(3)), static_cast<double>(rng.below(3)),
                           static_cast<double>(rng.below(3))};
  out.label = label_of(out.instance.features);
  return out;
}

ClassLabel StaggerConcept::label_of(std::span<const double> x) const {
  const int size = static_cast<int>(x[0]);   // small, medium, large
  const int color = static_cast<int>(x[1]);  // red, green, blue
  const int shape = static_cast<int>(x[2]);  // circle, square, triangle
  switch (rule_) {
    case 1:
      return size == 0 && color == 0 ? 1 : 0;
    case 2:
      return color == 1 || shape == 0 ? 1 : 0;
    default:
      return size == 1 || size == 2 ? 1 : 0;
  }
}

// RBF

RbfConcept::RbfConcept(std::size_t dims, std::size_t classes, std::size_t centroids,
                       double spread, Rng model_rng)
    : dims_(dims), classes_(classes) {
  if (dims == 0 || classes == 0 || centroids == 0) {
    throw ContractViolation("RbfConcept: dims, classes and centroids must be positive");
  }
  double running = 0.0;
  for (std::size_t i = 0; i < centroids; ++i) {
    Centroid c;
    c.center.resize(dims);
    for (double& v : c.center) v = model_rng.uniform();
    c.label = static_cast<ClassLabel>(model_rng.below(classes));
    c.weight = model_rng.uniform();
    c.spread = spread;
    running += c.weight;
    cumulative_weight_.push_back(running);
    centroids_.push_back(std::move(c));
  }
}

LabeledInstance RbfConcept::sample(Rng& rng) {
  const double pick = rng.uniform() * cumulative_weight_.back();
  const auto it = std::upper_bound(cumulative_weight_.begin(), cumulative_weight_.end(), pick);
  last_ = std::min<std::size_t>(static_cast<std::size_t>(it - cumulative_weight_.begin()),
                                centroids_.size() - 1);
  const Centroid& c = centroids_[last_];

  std::vector<double> direction(dims_);
  double norm = 0.0;
  do {
    norm = 0.0;
    for (double& v : direction) {
      v = rng.normal();
      norm += v * v;
    }
  } while (norm <= 0.0);
  norm = std::sqrt(norm);
  const double magnitude = rng.normal() * c.spread;

  LabeledInstance out;
  out.instance.features.resize(dims_);
  for (std::size_t j = 0; j < dims_; ++j) {
    out.instance.features[j] = c.center[j] + direction[j] / norm * magnitude;
  }
  out.label = c.label;
  return out;
}

ClassLabel RbfConcept::label_of(std::span<const double> x) const {
  std::size_t best = 0;
  double best_dist = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < centroids_.size(); ++i) {
    double d = 0.0;
    for (std::size_t j = 0; j < dims_; ++j) {
      const double diff = x[j] - centroids_[i].center[j];
      d += diff * diff;
    }
    if (d < best_dist) {
      best_dist = d;
      best = i;
    }
  }
  return centroids_[best].label;
}

// Random tree

RandomTreeConcept::RandomTreeConcept(std::size_t dims, std::size_t classes, std::size_t depth,
                                     Rng model_rng)
    : dims_(dims), classes_(classes), depth_(depth) {
  if (dims == 0 || classes == 0) throw ContractViolation("RandomTreeConcept: dims and classes must be positive");
  const std::size_t total = (std::size_t{1} << (depth + 1)) - 1;
  nodes_.resize(total);
  // Depth-first so each split sees the ranges left by its ancestors.
  std::vector<double> lo(dims, 0.0);
  std::vector<double> hi(dims, 1.0);
  auto build = [&](auto&& self, std::size_t index, std::size_t level) -> void {
    Node& node = nodes_[index];
    if (level == depth_) {
      node.label = static_cast<ClassLabel>(model_rng.below(classes_));
      return;
    }
    node.feature = static_cast<std::size_t>(model_rng.below(dims_));
    node.threshold = model_rng.uniform(lo[node.feature], hi[node.feature]);
    const std::size_t f = node.feature;
    const double t = node.threshold;
    const double saved_hi = hi[f];
    hi[f] = t;
    self(self, 2 * index + 1, level + 1);
    hi[f] = saved_hi;
    const double saved_lo = lo[f];
    lo[f] = t;
    self(self, 2 * index + 2, level + 1);
    lo[f] = saved_lo;
  };
  build(build, 0, 0);
}

LabeledInstance RandomTreeConcept::sample(Rng& rng) {
  LabeledInstance out;
  out.instance.features.resize(dims_);
  for (double& v : out.instance.features) v = rng.uniform();
  out.label = label_of(out.instance.features);
  return out;
}

ClassLabel RandomTreeConcept::label_of(std::span<const double> x) const {
  std::size_t index = 0;
  for (std::size_t level = 0; level < depth_; ++level) {
    const Node& node = nodes_[index];
    index = x[node.feature] <= node.threshold ? 2 * index + 1 : 2 * index + 2;
  }
  return nodes_[index].label;
}

// Hyperplane

HyperplaneConcept::HyperplaneConcept(std::size_t dims, std::size_t classes, double rate,
                                     Rng model_rng, double flip_probability)
    : classes_(classes), rate_(rate), flip_probability_(flip_probability), rng_(model_rng.derive("rotation")) {
  if (dims == 0 || classes < 2) throw ContractViolation("HyperplaneConcept: need dims > 0 and classes >= 2");
  weights_.resize(dims);
  directions_.resize(dims);
  for (std::size_t j = 0; j < dims; ++j) {
    weights_[j] = model_rng.uniform();
    directions_[j] = model_rng.bernoulli(0.5) ? 1.0 : -1.0;
  }
  const boost::math::normal standard;
  for (std::size_t k = 1; k < classes; ++k) {
    quantiles_.push_back(
        boost::math::quantile(standard, static_cast<double>(k) / static_cast<double>(classes)));
  }
}

double HyperplaneConcept::offset() const {
  return 0.5 * std::accumulate(weights_.begin(), weights_.end(), 0.0);
}

LabeledInstance HyperplaneConcept::sample(Rng& rng) {
  LabeledInstance out;
  out.instance.features.resize(weights_.size());
  for (double& v : out.instance.features) v = rng.uniform();
  out.label = label_of(out.instance.features);
  return out;
}

ClassLabel HyperplaneConcept::label_of(std::span<const double> x) const {
  double dot = 0.0;
  double squares = 0.0;
  for (std::size_t j = 0; j < weights_.size(); ++j) {
    dot += weights_[j] * x[j];
    squares += weights_[j] * weights_[j];
  }
  const double center = offset();
  const double scale = std::sqrt(squares / 12.0);
  ClassLabel label = 0;
  for (const double z : quantiles_) {
    if (dot >= center + z * scale) ++label;
  }
  return label;
}

void HyperplaneConcept::advance() {
  for (std::size_t j = 0; j < weights_.size(); ++j) {
    weights_[j] += directions_[j] * rate_;
    if (rng_.bernoulli(flip_probability_)) directions_[j] = -directions_[j];
  }
}

// Drifting stream

DriftingStream::DriftingStream(std::unique_ptr<Concept> base, std::vector<Drift> drifts,
                               double noise_rate, std::uint64_t length, const Rng& rng)
    : noise_rate_(noise_rate),
      length_(length),
      select_rng_(rng.derive("select")),
      sample_rng_(rng.derive("sample")),
      noise_rng_(rng.derive("noise")) {
  if (!base) throw ContractViolation("DriftingStream: null base concept");
  if (!(noise_rate >= 0.0 && noise_rate < 1.0)) {
    throw ContractViolation("DriftingStream: noise rate must lie in [0, 1)");
  }
  concepts_.push_back(std::move(base));
  double previous = -std::numeric_limits<double>::infinity();
  for (auto& d : drifts) {
    if (!d.successor) throw ContractViolation("DriftingStream: null successor concept");
    if (!(d.transition.center > previous)) {
      throw ContractViolation("DriftingStream: drift centers must be strictly increasing");
    }
    if (d.successor->dims() != concepts_.front()->dims() ||
        d.successor->num_classes() != concepts_.front()->num_classes()) {
      throw ContractViolation("DriftingStream: successor shape differs from base concept");
    }
    previous = d.transition.center;
    transitions_.push_back(d.transition);
    concepts_.push_back(std::move(d.successor));
  }
}

std::optional<LabeledInstance> DriftingStream::next() {
  if (t_ >= length_) return std::nullopt;
  const double t = static_cast<double>(t_);

  std::size_t active = 0;
  while (active < transitions_.size() &&
         select_rng_.uniform() < sigmoid_probability(transitions_[active], t)) {
    ++active;
  }
  last_concept_ = active;

  LabeledInstance out = concepts_[active]->sample(sample_rng_);
  out.instance.arrival_index = t_;
  last_noise_ = false;
  const std::size_t classes = num_classes();
  if (classes > 1 && noise_rng_.bernoulli(noise_rate_)) {
    const auto shift = 1 + noise_rng_.below(classes - 1);
    out.label = static_cast<ClassLabel>((out.label + shift) % classes);
    last_noise_ = true;
  }
  for (auto& c : concepts_) c->advance();
  ++t_;
  return out;
}

// Presets

const std::vector<PresetInfo>& preset_catalog() {
  static const std::vector<PresetInfo> catalog = {
      {"RBF1", PresetFamily::kRbf, 1'000'000, 15, 5, 100, 3, 0.05, 0.0},
      {"RBF2", PresetFamily::kRbf, 1'000'000, 15, 5, 10'000, 3, 0.05, 0.0},
      {"RBF3", PresetFamily::kRbf, 1'200'000, 15, 5, 50'000, 2, 0.05, 0.0},
      {"RBF4", PresetFamily::kRbf, 1'200'000, 15, 5, 100'000, 2, 0.05, 0.0},
      {"TREE1", PresetFamily::kTree, 1'000'000, 15, 5, 100, 3, 0.0, 0.0},
      {"TREE2", PresetFamily::kTree, 1'000'000, 15, 5, 10'000, 3, 0.0, 0.0},
      {"TREE3", PresetFamily::kTree, 1'200'000, 15, 5, 50'000, 2, 0.0, 0.0},
      {"TREE4", PresetFamily::kTree, 1'200'000, 15, 5, 100'000, 2, 0.0, 0.0},
      {"SEA1", PresetFamily::kSea, 600'000, 3, 2, 100, 3, 0.05, 0.0},
      {"SEA2", PresetFamily::kSea, 600'000, 3, 2, 10'000, 3, 0.05, 0.0},
      {"STAG1", PresetFamily::kStagger, 600'000, 3, 2, 100, 3, 0.0, 0.0},
      {"STAG2", PresetFamily::kStagger, 600'000, 3, 2, 10'000, 3, 0.0, 0.0},
      {"HYPER1", PresetFamily::kHyperplane, 500'000, 15, 5, 0, 0, 0.05, 0.001},
      {"HYPER2", PresetFamily::kHyperplane, 500'000, 15, 5, 0, 0, 0.05, 0.01},
  };
  return catalog;
}

const PresetInfo& find_preset(const std::string& name) {
  for (const auto& p : preset_catalog()) {
    if (p.name == name) return p;
  }
  throw DataError("unknown stream preset '" + name + "'");
}

std::vector<double> preset_drift_centers(const PresetInfo& preset, std::uint64_t length) {
  std::vector<double> centers;
  for (std::size_t k = 1; k <= preset.drift_count; ++k) {
    centers.push_back(static_cast<double>(length) * static_cast<double>(k) /
                      static_cast<double>(preset.drift_count + 1));
  }
  return centers;
}

namespace {

constexpr std::size_t kRbfCentroids = 50;
constexpr double kRbfSpread = 0.1;
constexpr std::size_t kTreeDepth = 5;

std::unique_ptr<Concept> make_concept(const PresetInfo& preset, std::size_t index, const Rng& rng) {
  const Rng model_rng = rng.derive("concept-" + std::to_string(index));
  switch (preset.family) {
    case PresetFamily::kSea: {
      static constexpr double kThresholds[] = {8.0, 9.0, 7.0, 9.5};
      return std::make_unique<SeaConcept>(kThresholds[index % 4]);
    }
    case PresetFamily::kStagger:
      return std::make_unique<StaggerConcept>(static_cast<int>(index % 3) + 1);
    case PresetFamily::kRbf:
      return std::make_unique<RbfConcept>(preset.dims, preset.classes, kRbfCentroids, kRbfSpread,
                                          model_rng);
    case PresetFamily::kTree:
      return std::make_unique<RandomTreeConcept>(preset.dims, preset.classes, kTreeDepth, model_rng);
    case PresetFamily::kHyperplane:
      return std::make_unique<HyperplaneConcept>(preset.dims, preset.classes,
                                                 preset.rotation_rate, model_rng);
  }
  throw ContractViolation("make_concept: unknown family");
}

}  // namespace

std::unique_ptr<DriftingStream> make_preset_stream(const PresetInfo& preset, const Rng& rng,
                                                   std::optional<std::uint64_t> length_override) {
  const std::uint64_t length = length_override.value_or(preset.length);
  const Rng concepts_rng = rng.derive("concepts");
  std::vector<DriftingStream::Drift> drifts;
  const auto centers = preset_drift_centers(preset, length);
  for (std::size_t k = 0; k < centers.size(); ++k) {
    drifts.push_back({transition_of_width(centers[k], preset.drift_width),
                      make_concept(preset, k + 1, concepts_rng)});
  }
  return std::make_unique<DriftingStream>(make_concept(preset, 0, concepts_rng), std::move(drifts),
                                          preset.noise, length, rng.derive("stream"));
}

std::vector<Interval> preset_drift_intervals(const PresetInfo& preset,
                                             std::optional<std::uint64_t> length_override) {
  const std::uint64_t length = length_override.value_or(preset.length);
  std::vector<Interval> out;
  for (const double c : preset_drift_centers(preset, length)) {
    const double lo = std::max(0.0, std::floor(c - preset.drift_width));
    const double hi = std::min(static_cast<double>(length), std::ceil(c + preset.drift_width));
    const Interval iv{static_cast<std::uint64_t>(lo), static_cast<std::uint64_t>(hi)};
    if (!out.empty() && iv.first <= out.back().second) {
      out.back().second = std::max(out.back().second, iv.second);
    } else {
      out.push_back(iv);
    }
  }
  return out;
}

}  // namespace streamex
