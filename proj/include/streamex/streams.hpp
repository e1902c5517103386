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
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "streamex/core.hpp"
#include "streamex/rng.hpp"

namespace streamex {

// Anything that yields labeled instances in order.
class InstanceSource {
 public:
  virtual ~InstanceSource() = default;
  // nullopt once the source is exhausted.
  virtual std::optional<LabeledInstance> next() = 0;
  virtual std::size_t dims() const = 0;
  virtual std::size_t num_classes() const = 0;
};

// Sigmoid concept transition f(t) = 1 / (1 + exp(-slope * (t - center))).
struct DriftTransition {
  double slope = 1.0;
  double center = 0.0;
};

double sigmoid_probability(const DriftTransition& transition, double t);

// A transition of the given width: slope 4 / width, so f moves from about
// 0.018 to 0.982 across [center - width, center + width].
DriftTransition transition_of_width(double center, double width);

// One stationary concept (or, for the hyperplane, one evolving concept).
class Concept {
 public:
  virtual ~Concept() = default;

  virtual LabeledInstance sample(Rng& rng) = 0;
  // The concept's labeling rule evaluated directly on features.
  virtual ClassLabel label_of(std::span<const double> features) const = 0;
  // Per-instance evolution; a no-op for stationary concepts.
  virtual void advance() {}

  virtual std::size_t dims() const = 0;
  virtual std::size_t num_classes() const = 0;
  virtual std::string name() const = 0;
};

// SEA: three features uniform on [0, 10]; label 1 iff x0 + x1 <= threshold.
class SeaConcept final : public Concept {
 public:
  explicit SeaConcept(double threshold);
  LabeledInstance sample(Rng& rng) override;
  ClassLabel label_of(std::span<const double> x) const override;
  std::size_t dims() const override { return 3; }
  std::size_t num_classes() const override { return 2; }
  std::string name() const override { return "SEA"; }
  double threshold() const { return threshold_; }

 private:
  double threshold_;
};

// STAGGER: size, color and shape, each coded 0..2.
//   rule 1: size = small and color = red
//   rule 2: color = green or shape = circle
//   rule 3: size = medium or size = large
class StaggerConcept final : public Concept {
 public:
  explicit StaggerConcept(int rule);
  LabeledInstance sample(Rng& rng) override;
  ClassLabel label_of(std::span<const double> x) const override;
  std::size_t dims() const override { return 3; }
  std::size_t num_classes() const override { return 2; }
  std::string name() const override { return "STAGGER"; }

 private:
  int rule_;
};

// Random radial basis function clusters in the unit cube.
class RbfConcept final : public Concept {
 public:
  struct Centroid {
    std::vector<double> center;
    ClassLabel label;
    double weight;
    double spread;
  };

  RbfConcept(std::size_t dims, std::size_t classes, std::size_t centroids, double spread,
             Rng model_rng);
  LabeledInstance sample(Rng& rng) override;
  // Class of the nearest centroid.
  ClassLabel label_of(std::span<const double> x) const override;
  std::size_t dims() const override { return dims_; }
  std::size_t num_classes() const override { return classes_; }
  std::string name() const override { return "RBF"; }

  const std::vector<Centroid>& centroids() const { return centroids_; }
  // Centroid that generated the most recent sample.
  std::size_t last_centroid() const { return last_; }

 private:
  std::size_t dims_;
  std::size_t classes_;
  std::vector<Centroid> centroids_;
  std::vector<double> cumulative_weight_;
  std::size_t last_ = 0;
};

// Complete random binary tree over features uniform on [0, 1]. Each split
// threshold is drawn inside the range still reachable along its path.
class RandomTreeConcept final : public Concept {
 public:
  RandomTreeConcept(std::size_t dims, std::size_t classes, std::size_t depth, Rng model_rng);
  LabeledInstance sample(Rng& rng) override;
  ClassLabel label_of(std::span<const double> x) const override;
  std::size_t dims() const override { return dims_; }
  std::size_t num_classes() const override { return classes_; }
  std::string name() const override { return "TREE"; }
  std::size_t depth() const { return depth_; }

 private:
  struct Node {
    std::size_t feature = 0;
    double threshold = 0.0;
    ClassLabel label = 0;  // leaves only
  };
  std::size_t dims_;
  std::size_t classes_;
  std::size_t depth_;
  std::vector<Node> nodes_;  // heap layout: children of i at 2i+1, 2i+2
};

// Rotating hyperplane over features uniform on [0, 1].
//
// Label = number of class thresholds not exceeding w.x. The thresholds sit
// at 0.5 * sum(w) + z_k * sqrt(sum(w^2) / 12) with z_k the standard normal
// quantiles of k / C, so for two classes the label is 1[w.x >= w0] with
// w0 = 0.5 * sum(w). Every advance() moves each weight by rate * direction,
// and each direction flips with probability flip_probability.
class HyperplaneConcept final : public Concept {
 public:
  HyperplaneConcept(std::size_t dims, std::size_t classes, double rate, Rng model_rng,
                    double flip_probability = 0.1);
  LabeledInstance sample(Rng& rng) override;
  ClassLabel label_of(std::span<const double> x) const override;
  void advance() override;
  std::size_t dims() const override { return weights_.size(); }
  std::size_t num_classes() const override { return classes_; }
  std::string name() const override { return "HYPER"; }

  const std::vector<double>& weights() const { return weights_; }
  const std::vector<double>& directions() const { return directions_; }
  double offset() const;

 private:
  std::size_t classes_;
  double rate_;
  double flip_probability_;
  std::vector<double> weights_;
  std::vector<double> directions_;
  std::vector<double> quantiles_;
  Rng rng_;
};

// A base concept followed by an ordered list of sigmoid transitions. At time
// t the stream walks the list: it moves past drift k with probability
// f_k(t) and stops at the first drift it does not pass. The chosen concept
// emits the instance; the label is then replaced by a uniformly random other
// class with probability noise_rate.
class DriftingStream final : public InstanceSource {
 public:
  struct Drift {
    DriftTransition transition;
    std::unique_ptr<Concept> successor;
  };

  DriftingStream(std::unique_ptr<Concept> base, std::vector<Drift> drifts, double noise_rate,
                 std::uint64_t length, const Rng& rng);

  std::optional<LabeledInstance> next() override;
  std::size_t dims() const override { return concepts_.front()->dims(); }
  std::size_t num_classes() const override { return concepts_.front()->num_classes(); }

  std::uint64_t position() const { return t_; }
  std::uint64_t length() const { return length_; }
  double noise_rate() const { return noise_rate_; }
  // Index into concepts() used for the most recent instance.
  std::size_t last_concept() const { return last_concept_; }
  // Whether the most recent label was flipped by noise.
  bool last_was_noise() const { return last_noise_; }
  const Concept& concept_at(std::size_t i) const { return *concepts_.at(i); }
  std::size_t concept_count() const { return concepts_.size(); }
  const std::vector<DriftTransition>& transitions() const { return transitions_; }

 private:
  std::vector<std::unique_ptr<Concept>> concepts_;
  std::vector<DriftTransition> transitions_;
  double noise_rate_;
  std::uint64_t length_;
  std::uint64_t t_ = 0;
  Rng select_rng_;
  Rng sample_rng_;
  Rng noise_rng_;
  std::size_t last_concept_ = 0;
  bool last_noise_ = false;
};

enum class PresetFamily { kRbf, kTree, kSea, kStagger, kHyperplane };

// Benchmark stream shapes: instance count, attributes, classes, drift
// width (or hyperplane rotation rate), drift count and label noise.
struct PresetInfo {
  std::string name;
  PresetFamily family;
  std::uint64_t length;
  std::size_t dims;
  std::size_t classes;
  double drift_width;  // 0 for the hyperplane presets
  std::size_t drift_count;
  double noise;
  double rotation_rate;  // hyperplane only
};

const std::vector<PresetInfo>& preset_catalog();
const PresetInfo& find_preset(const std::string& name);

// Drift centers spread evenly: length * k / (drift_count + 1).
std::vector<double> preset_drift_centers(const PresetInfo& preset, std::uint64_t length);

// Builds the stream for a preset. length_override rescales the stream and
// its drift centers; drift widths stay as listed.
std::unique_ptr<DriftingStream> make_preset_stream(const PresetInfo& preset, const Rng& rng,
                                                   std::optional<std::uint64_t> length_override = {});

// Inclusive-exclusive interval [start, end) of instance indices.
using Interval = std::pair<std::uint64_t, std::uint64_t>;

// Drift periods center +- width, clipped to the stream and merged.
std::vector<Interval> preset_drift_intervals(const PresetInfo& preset,
                                             std::optional<std::uint64_t> length_override = {});

}  // namespace streamex
