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
#include <limits>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "streamex/adwin.hpp"
#include "streamex/core.hpp"

namespace streamex {

// Running weight, mean and squared-deviation sum (Welford).
class GaussianEstimator {
 public:
  void add(double x, double weight = 1.0);

  double weight() const { return weight_; }
  double mean() const { return mean_; }
  double variance() const;  // unbiased; 0 below two observations
  double min() const { return min_; }
  double max() const { return max_; }

  double log_density(double x, double variance_floor) const;
  // P(X <= x) under the fitted normal, clamped to the observed range.
  double cdf(double x) const;

 private:
  double weight_ = 0.0;
  double mean_ = 0.0;
  double m2_ = 0.0;
  double min_ = std::numeric_limits<double>::infinity();
  double max_ = -std::numeric_limits<double>::infinity();
};

// Incremental Gaussian naive Bayes.
class NaiveBayes final : public Classifier {
 public:
  static constexpr double kDefaultVarianceFloor = 1e-6;

  NaiveBayes(std::size_t num_classes, std::size_t num_features,
             double variance_floor = kDefaultVarianceFloor);

  void update(const LabeledInstance& example) override;
  Distribution predict(std::span<const double> features) const override;
  std::unique_ptr<Classifier> clone() const override;
  std::size_t num_classes() const override { return class_counts_.size(); }
  std::string name() const override { return "NB"; }

  double class_count(ClassLabel c) const { return class_counts_.at(c); }
  const GaussianEstimator& estimator(ClassLabel c, std::size_t feature) const;

 private:
  std::size_t num_features_;
  double variance_floor_;
  std::vector<double> class_counts_;
  std::vector<GaussianEstimator> stats_;  // class-major: [c * d + j]
};

enum class SgdLoss { kHinge, kLogistic };

struct SgdOptions {
  double learning_rate = 0.01;
  SgdLoss loss = SgdLoss::kHinge;
};

// Thrown when a gradient step would produce a non-finite weight.
class NonFiniteGradient : public std::runtime_error {
 public:
  NonFiniteGradient(std::size_t feature_index, const std::string& what)
      : std::runtime_error(what), feature_index_(feature_index) {}
  std::size_t feature_index() const { return feature_index_; }

 private:
  std::size_t feature_index_;
};

// One-vs-rest linear model trained by plain stochastic gradient descent.
// Row k of the weight matrix scores class k; the last column is the bias.
class SgdLinear final : public Classifier {
 public:
  SgdLinear(std::size_t num_classes, std::size_t num_features, SgdOptions options = {});

  void update(const LabeledInstance& example) override;
  Distribution predict(std::span<const double> features) const override;
  std::unique_ptr<Classifier> clone() const override;
  std::size_t num_classes() const override { return num_classes_; }
  std::string name() const override { return "SGD"; }

  // Summed one-vs-rest loss of the current weights on one example.
  double loss(const LabeledInstance& example) const;
  // d loss / d weights, laid out like weights().
  std::vector<double> gradient(const LabeledInstance& example) const;
  std::vector<double> margins(std::span<const double> features) const;

  const std::vector<double>& weights() const { return weights_; }
  std::vector<double>& mutable_weights() { return weights_; }
  std::size_t row_stride() const { return num_features_ + 1; }
  const SgdOptions& options() const { return options_; }

 private:
  std::size_t num_classes_;
  std::size_t num_features_;
  SgdOptions options_;
  std::vector<double> weights_;
};

enum class LeafPrediction { kMajorityClass, kNaiveBayes, kNaiveBayesAdaptive };

struct HoeffdingTreeOptions {
  std::uint64_t grace_period = 200;
  double split_confidence = 1e-7;
  double tie_threshold = 0.05;
  std::size_t histogram_bins = 10;
  double min_branch_fraction = 0.01;
  double variance_floor = 1e-6;
  LeafPrediction leaf_prediction = LeafPrediction::kNaiveBayesAdaptive;
};

// Hoeffding bound sqrt(R^2 ln(1/delta) / (2n)).
double hoeffding_bound(double range, double delta, double n);

// Very fast decision tree over numeric features with binary threshold
// splits. Per leaf and per (class, feature) a Gaussian estimator tracks the
// observed values; split candidates are the interior edges of an
// equal-width histogram (histogram_bins bins) over the observed range, and
// the class mass on each side of a candidate is read from the estimators'
// CDFs.
class HoeffdingTree final : public Classifier {
 public:
  struct SplitInfo {
    std::size_t feature;
    double threshold;
  };

  HoeffdingTree(std::size_t num_classes, std::size_t num_features,
                HoeffdingTreeOptions options = {});

  void update(const LabeledInstance& example) override;
  Distribution predict(std::span<const double> features) const override;
  std::unique_ptr<Classifier> clone() const override;
  std::size_t num_classes() const override { return num_classes_; }
  std::string name() const override { return "HT"; }

  std::size_t node_count() const { return nodes_.size(); }
  std::size_t leaf_count() const;
  std::size_t depth() const;
  std::optional<SplitInfo> root_split() const;
  // Class counts observed at the leaf the features route to.
  const std::vector<double>& leaf_class_counts(std::span<const double> features) const;

 private:
  struct Node {
    // Internal node fields.
    bool is_leaf = true;
    std::size_t split_feature = 0;
    double split_threshold = 0.0;
    std::size_t left = 0;
    std::size_t right = 0;
    // Leaf fields.
    std::vector<double> class_counts;
    std::vector<double> prior_counts;  // inherited estimate, used until the leaf sees data
    std::vector<GaussianEstimator> observers;  // [c * d + j]
    double weight_at_last_attempt = 0.0;
    double mc_correct = 0.0;
    double nb_correct = 0.0;
  };

  std::size_t route(std::span<const double> features) const;
  Node make_leaf(std::vector<double> prior) const;
  Distribution naive_bayes_at(const Node& leaf, std::span<const double> features) const;
  Distribution majority_at(const Node& leaf) const;
  void attempt_split(std::size_t leaf_index);

  std::size_t num_classes_;
  std::size_t num_features_;
  HoeffdingTreeOptions options_;
  std::vector<Node> nodes_;  // nodes_[0] is the root
};

struct AdaptiveTreeOptions {
  HoeffdingTreeOptions tree;
  double monitor_delta = 0.002;
  std::uint64_t min_background_age = 300;
};

// Hoeffding tree whose 0/1 prequential error is monitored by ADWIN. A cut
// that raises the error estimate starts a background tree trained on all
// subsequent examples; once that tree has seen at least
// min_background_age examples and its own error estimate is lower than the
// foreground's, it replaces the foreground tree.
class AdaptiveHoeffdingTree final : public Classifier {
 public:
  AdaptiveHoeffdingTree(std::size_t num_classes, std::size_t num_features,
                        AdaptiveTreeOptions options = {});

  void update(const LabeledInstance& example) override;
  Distribution predict(std::span<const double> features) const override;
  std::unique_ptr<Classifier> clone() const override;
  std::size_t num_classes() const override { return foreground_.num_classes(); }
  std::string name() const override { return "AHT"; }

  bool has_background() const { return background_.has_value(); }
  std::uint64_t background_age() const { return background_age_; }
  std::uint64_t swap_count() const { return swaps_; }
  const Adwin& error_monitor() const { return monitor_; }
  const HoeffdingTree& foreground() const { return foreground_; }

 private:
  AdaptiveTreeOptions options_;
  HoeffdingTree foreground_;
  Adwin monitor_;
  std::optional<HoeffdingTree> background_;
  Adwin background_monitor_;
  std::uint64_t background_age_ = 0;
  std::uint64_t swaps_ = 0;
};

}  // namespace streamex
