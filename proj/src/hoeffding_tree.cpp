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
#include <functional>

#include "streamex/learners.hpp"

namespace streamex {

double hoeffding_bound(double range, double delta, double n) {
  return std::sqrt(range * range * std::log(1.0 / delta) / (2.0 * n));
}

namespace {

double entropy(std::span<const double> counts) {
  double total = 0.0;
  for (const double c : counts) total += c;
  if (total <= 0.0) return 0.0;
  double h = 0.0;
  for (const double c : counts) {
    if (c > 0.0) h -= c / total * std::log2(c / total);
  }
  return h;
}

double sum_of(std::span<const double> v) {
  double s = 0.0;
  for (const double x : v) s += x;
  return s;
}

struct Candidate {
  double merit = 0.0;
  std::size_t feature = 0;
  double threshold = 0.0;
  std::vector<double> left;
  std::vector<double> right;
};

}  // namespace

HoeffdingTree::HoeffdingTree(std::size_t num_classes, std::size_t num_features,
                             HoeffdingTreeOptions options)
    : num_classes_(num_classes), num_features_(num_features), options_(options) {
  if (num_classes == 0) throw ContractViolation("HoeffdingTree: need at least one class");
  if (options_.histogram_bins < 2) throw ContractViolation("HoeffdingTree: need at least two bins");
  nodes_.push_back(make_leaf({}));
}

HoeffdingTree::Node HoeffdingTree::make_leaf(std::vector<double> prior) const {
  Node leaf;
  leaf.class_counts.assign(num_classes_, 0.0);
  leaf.prior_counts = prior.empty() ? std::vector<double>(num_classes_, 0.0) : std::move(prior);
  leaf.observers.resize(num_classes_ * num_features_);
  return leaf;
}

std::size_t HoeffdingTree::route(std::span<const double> x) const {
  std::size_t index = 0;
  while (!nodes_[index].is_leaf) {
    const Node& node = nodes_[index];
    index = x[node.split_feature] <= node.split_threshold ? node.left : node.right;
  }
  return index;
}

Distribution HoeffdingTree::majority_at(const Node& leaf) const {
  Distribution dist = sum_of(leaf.class_counts) > 0.0 ? leaf.class_counts : leaf.prior_counts;
  normalize(dist);
  return dist;
}

Distribution HoeffdingTree::naive_bayes_at(const Node& leaf, std::span<const double> x) const {
  const double total = sum_of(leaf.class_counts);
  if (total <= 0.0) return majority_at(leaf);
  std::vector<double> log_post(num_classes_, -std::numeric_limits<double>::infinity());
  double best = -std::numeric_limits<double>::infinity();
  for (std::size_t c = 0; c < num_classes_; ++c) {
    if (leaf.class_counts[c] <= 0.0) continue;
    double lp = std::log(leaf.class_counts[c] / total);
    for (std::size_t j = 0; j < num_features_; ++j) {
      lp += leaf.observers[c * num_features_ + j].log_density(x[j], options_.variance_floor);
    }
    log_post[c] = lp;
    best = std::max(best, lp);
  }
  Distribution dist(num_classes_, 0.0);
  for (std::size_t c = 0; c < num_classes_; ++c) {
    if (std::isfinite(log_post[c])) dist[c] = std::exp(log_post[c] - best);
  }
  normalize(dist);
  return dist;
}

Distribution HoeffdingTree::predict(std::span<const double> x) const {
  if (x.size() != num_features_) {
    throw ContractViolation("HoeffdingTree::predict: expected " + std::to_string(num_features_) +
                            " features, got " + std::to_string(x.size()));
  }
  const Node& leaf = nodes_[route(x)];
  switch (options_.leaf_prediction) {
    case LeafPrediction::kMajorityClass:
      return majority_at(leaf);
    case LeafPrediction::kNaiveBayes:
      return naive_bayes_at(leaf, x);
    case LeafPrediction::kNaiveBayesAdaptive:
      return leaf.mc_correct > leaf.nb_correct ? majority_at(leaf) : naive_bayes_at(leaf, x);
  }
  return majority_at(leaf);
}

void HoeffdingTree::update(const LabeledInstance& example) {
  const auto x = example.features();
  if (x.size() != num_features_) {
    throw ContractViolation("HoeffdingTree::update: expected " + std::to_string(num_features_) +
                            " features, got " + std::to_string(x.size()));
  }
  if (example.label >= num_classes_) throw ContractViolation("HoeffdingTree::update: label out of range");

  const std::size_t index = route(x);
  {
    Node& leaf = nodes_[index];
    if (options_.leaf_prediction == LeafPrediction::kNaiveBayesAdaptive &&
        sum_of(leaf.class_counts) > 0.0) {
      if (argmax_label(majority_at(leaf)) == example.label) leaf.mc_correct += 1.0;
      if (argmax_label(naive_bayes_at(leaf, x)) == example.label) leaf.nb_correct += 1.0;
    }
    leaf.class_counts[example.label] += 1.0;
    for (std::size_t j = 0; j < num_features_; ++j) {
      leaf.observers[example.label * num_features_ + j].add(x[j]);
    }
  }
  const double seen = sum_of(nodes_[index].class_counts);
  if (seen - nodes_[index].weight_at_last_attempt >= static_cast<double>(options_.grace_period)) {
    attempt_split(index);
    // The node may have become internal; the bookkeeping only matters for leaves.
    nodes_[index].weight_at_last_attempt = seen;
  }
}

void HoeffdingTree::attempt_split(std::size_t leaf_index) {
  const Node& leaf = nodes_[leaf_index];
  const auto& counts = leaf.class_counts;
  std::size_t observed_classes = 0;
  for (const double c : counts) observed_classes += c > 0.0 ? 1 : 0;
  if (observed_classes < 2) return;

  const double total = sum_of(counts);
  const double parent_entropy = entropy(counts);

  std::vector<Candidate> best_per_feature;
  for (std::size_t j = 0; j < num_features_; ++j) {
    double lo = std::numeric_limits<double>::infinity();
    double hi = -lo;
    for (std::size_t c = 0; c < num_classes_; ++c) {
      const auto& obs = leaf.observers[c * num_features_ + j];
      if (obs.weight() <= 0.0) continue;
      lo = std::min(lo, obs.min());
      hi = std::max(hi, obs.max());
    }
    if (!(hi > lo)) continue;

    Candidate best;
    best.merit = -std::numeric_limits<double>::infinity();
    const double bin_width = (hi - lo) / static_cast<double>(options_.histogram_bins);
    for (std::size_t b = 1; b < options_.histogram_bins; ++b) {
      const double threshold = lo + bin_width * static_cast<double>(b);
      std::vector<double> left(num_classes_, 0.0);
      std::vector<double> right(num_classes_, 0.0);
      for (std::size_t c = 0; c < num_classes_; ++c) {
        const auto& obs = leaf.observers[c * num_features_ + j];
        const double mass = obs.weight();
        left[c] = mass * obs.cdf(threshold);
        right[c] = mass - left[c];
      }
      const double wl = sum_of(left);
      const double wr = sum_of(right);
      if (wl < options_.min_branch_fraction * total || wr < options_.min_branch_fraction * total) {
        continue;
      }
      const double merit =
          parent_entropy - (wl / total) * entropy(left) - (wr / total) * entropy(right);
      if (merit > best.merit) {
        best = Candidate{merit, j, threshold, std::move(left), std::move(right)};
      }
    }
    if (std::isfinite(best.merit)) best_per_feature.push_back(std::move(best));
  }
  if (best_per_feature.empty()) return;

  std::sort(best_per_feature.begin(), best_per_feature.end(),
            [](const Candidate& a, const Candidate& b) { return a.merit > b.merit; });
  const Candidate& best = best_per_feature.front();
  // Not splitting at all has merit zero and always competes.
  const double second = best_per_feature.size() > 1 ? std::max(0.0, best_per_feature[1].merit) : 0.0;
  if (best.merit <= 0.0) return;

  const double range = std::log2(static_cast<double>(std::max<std::size_t>(num_classes_, 2)));
  const double bound = hoeffding_bound(range, options_.split_confidence, total);
  if (!(best.merit - second > bound || bound < options_.tie_threshold)) return;

  Node left = make_leaf(best.left);
  Node right = make_leaf(best.right);
  const std::size_t left_index = nodes_.size();
  nodes_.push_back(std::move(left));
  nodes_.push_back(std::move(right));

  Node& node = nodes_[leaf_index];
  node.is_leaf = false;
  node.split_feature = best.feature;
  node.split_threshold = best.threshold;
  node.left = left_index;
  node.right = left_index + 1;
  node.class_counts.clear();
  node.prior_counts.clear();
  node.observers.clear();
  node.observers.shrink_to_fit();
}

std::unique_ptr<Classifier> HoeffdingTree::clone() const {
  return std::make_unique<HoeffdingTree>(*this);
}

std::size_t HoeffdingTree::leaf_count() const {
  return static_cast<std::size_t>(
      std::count_if(nodes_.begin(), nodes_.end(), [](const Node& n) { return n.is_leaf; }));
}

std::size_t HoeffdingTree::depth() const {
  std::function<std::size_t(std::size_t)> walk = [&](std::size_t i) -> std::size_t {
    if (nodes_[i].is_leaf) return 0;
    return 1 + std::max(walk(nodes_[i].left), walk(nodes_[i].right));
  };
  return walk(0);
}

std::optional<HoeffdingTree::SplitInfo> HoeffdingTree::root_split() const {
  if (nodes_[0].is_leaf) return std::nullopt;
  return SplitInfo{nodes_[0].split_feature, nodes_[0].split_threshold};
}

const std::vector<double>& HoeffdingTree::leaf_class_counts(std::span<const double> x) const {
  return nodes_[route(x)].class_counts;
}

AdaptiveHoeffdingTree::AdaptiveHoeffdingTree(std::size_t num_classes, std::size_t num_features,
                                             AdaptiveTreeOptions options)
    : options_(options),
      foreground_(num_classes, num_features, options.tree),
      monitor_(options.monitor_delta),
      background_monitor_(options.monitor_delta) {}

void AdaptiveHoeffdingTree::update(const LabeledInstance& example) {
  const auto x = example.features();
  const bool wrong = argmax_label(foreground_.predict(x)) != example.label;
  const double mean_before = monitor_.mean();
  const bool cut = monitor_.update(wrong ? 1.0 : 0.0);

  if (background_) {
    const bool bg_wrong = argmax_label(background_->predict(x)) != example.label;
    background_monitor_.update(bg_wrong ? 1.0 : 0.0);
    background_->update(example);
    ++background_age_;
  }
  foreground_.update(example);

  if (cut && !background_ && monitor_.mean() > mean_before) {
    background_.emplace(foreground_.num_classes(), x.size(), options_.tree);
    background_monitor_ = Adwin(options_.monitor_delta);
    background_age_ = 0;
  }
  if (background_ && background_age_ >= options_.min_background_age &&
      background_monitor_.mean() < monitor_.mean()) {
    foreground_ = std::move(*background_);
    monitor_ = background_monitor_;
    background_.reset();
    background_age_ = 0;
    ++swaps_;
  }
}

Distribution AdaptiveHoeffdingTree::predict(std::span<const double> x) const {
  return foreground_.predict(x);
}

std::unique_ptr<Classifier> AdaptiveHoeffdingTree::clone() const {
  return std::make_unique<AdaptiveHoeffdingTree>(*this);
}

}  // namespace streamex
