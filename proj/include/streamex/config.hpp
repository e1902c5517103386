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
#include <optional>
#include <string>
#include <vector>

#include "streamex/active.hpp"
#include "streamex/core.hpp"
#include "streamex/exploit.hpp"
#include "streamex/learners.hpp"

namespace streamex {

// Thrown for malformed or invalid experiment configs. line() is 1-based,
// 0 when the problem is not tied to one line (e.g. a missing key).
class ConfigError : public DataError {
 public:
  ConfigError(std::size_t line, const std::string& message);
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

enum class LearnerKind { kNaiveBayes, kSgd, kHoeffdingTree, kAdaptiveTree };
enum class StrategyKind { kBaseline, kUniformWindow, kExponentialWindow, kSingleExposition };
enum class EnsembleKind { kNone, kSwitching, kElevating };

std::string to_string(LearnerKind kind);
std::string to_string(StrategyKind kind);
std::string to_string(EnsembleKind kind);

struct ExperimentConfig {
  std::string id = "experiment";

  // [stream]: exactly one of preset / file.
  std::string preset;
  std::string file;
  std::optional<std::uint64_t> length;  // preset rescale or file truncation

  // [learner]
  LearnerKind learner = LearnerKind::kAdaptiveTree;
  SgdLoss loss = SgdLoss::kHinge;
  double learning_rate = 0.01;  // SGD only

  // [active]
  QueryKind query = QueryKind::kRandVar;
  std::vector<double> budgets{1.0, 0.5, 0.2, 0.1, 0.05, 0.01};
  std::vector<double> alpha_theta;  // one per budget

  // [exploit]
  std::vector<StrategyKind> strategies{StrategyKind::kExponentialWindow};
  std::string lambda_label = "risky";  // "risky", "safe" or the literal value(s)
  std::vector<std::size_t> lambda_max;  // one per budget
  WindowPolicy window;
  bool dynamic_intensity = true;
  double gamma = 4.0;

  // [ensemble]
  EnsembleKind ensemble = EnsembleKind::kNone;
  double alpha_e = 0.05;

  // [eval]
  std::size_t window_width = 1000;
  std::size_t stride = 1000;
  bool adaptive_window = false;

  // [run]
  std::vector<std::uint64_t> seeds{1};
  std::string output;  // empty: <id>.csv in the default output directory
};

// Parses the line-oriented format:
//
//   [section]
//   key = value          # comment
//   list = [a, b, c]
//
// and fills every default. Throws ConfigError.
ExperimentConfig parse_config(const std::string& text);
ExperimentConfig load_config(const std::string& path);

// Default alpha_theta and lambda schedules for an arbitrary budget.
double default_alpha_theta(double budget);
std::size_t default_lambda_max(LearnerKind learner, bool risky, double budget);

// Resolved config as `key = value` lines.
std::string describe(const ExperimentConfig& config);

}  // namespace streamex
