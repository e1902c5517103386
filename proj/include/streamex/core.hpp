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
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace streamex {

// Raised when a caller breaks a documented precondition.
class ContractViolation : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

// Raised for malformed external input (files, configs).
class DataError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

using ClassLabel = std::uint32_t;

struct Instance {
  std::vector<double> features;
  std::uint64_t arrival_index = 0;

  std::size_t dims() const { return features.size(); }
};

struct LabeledInstance {
  Instance instance;
  ClassLabel label = 0;

  std::span<const double> features() const { return instance.features; }
};

// Per-class scores. Learners return normalized distributions; all-zero
// vectors are permitted before a learner has seen data.
using Distribution = std::vector<double>;

// Scales scores to sum to one. All-zero (or empty-mass) input becomes uniform.
void normalize(Distribution& dist);

// Smallest index attaining the maximum score.
ClassLabel argmax_label(std::span<const double> dist);

// Difference between the largest and second-largest score.
double top_margin(std::span<const double> dist);

// Incremental classifier contract shared by every base learner.
//
// update() is order sensitive. predict() is const and never mutates model
// state. clone() returns a deep copy whose later updates do not affect the
// original.
class Classifier {
 public:
  virtual ~Classifier() = default;

  virtual void update(const LabeledInstance& example) = 0;
  virtual Distribution predict(std::span<const double> features) const = 0;
  virtual std::unique_ptr<Classifier> clone() const = 0;

  virtual std::size_t num_classes() const = 0;
  virtual std::string name() const = 0;
};

// Throws ContractViolation when features contain NaN or infinity.
void require_finite(std::span<const double> features);

}  // namespace streamex
