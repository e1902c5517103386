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
#include <iosfwd>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "streamex/config.hpp"
#include "streamex/core.hpp"
#include "streamex/streams.hpp"

namespace streamex {

std::unique_ptr<Classifier> make_classifier(LearnerKind kind, std::size_t classes, std::size_t dims,
                                            SgdLoss loss = SgdLoss::kHinge, double learning_rate = 0.01);

// One point of the budget x seed x strategy product.
struct GridCell {
  std::size_t budget_index = 0;
  std::size_t seed_index = 0;
  std::size_t strategy_index = 0;
};

std::vector<GridCell> expand_grid(const ExperimentConfig& config);

// Learner wrapper for one cell: the plain active learner for the baseline,
// otherwise the exploiting wrapper or a paired ensemble.
std::unique_ptr<StreamLearner> make_stream_learner(const ExperimentConfig& config,
                                                   const GridCell& cell, std::size_t classes,
                                                   std::size_t dims);

// Fresh source for one seed.
std::unique_ptr<InstanceSource> open_source(const ExperimentConfig& config, std::uint64_t seed);

struct ResultRow {
  GridCell cell;
  std::string config_id;
  std::uint64_t seed = 0;
  double budget = 0.0;
  std::string learner;
  std::string query;
  std::string strategy;
  std::size_t lambda_max = 0;
  std::string window;
  std::string ensemble;
  std::uint64_t instances = 0;
  double global_kappa = 0.0;
  std::optional<double> stable_kappa;
  std::optional<double> drift_kappa;
  std::optional<double> balanced_kappa;
  double accuracy = 0.0;
  double spending = 0.0;
  std::uint64_t labeled = 0;
  std::uint64_t updates = 0;
  std::uint64_t budget_violations = 0;
  std::uint64_t elevations = 0;
  std::uint64_t elevations_tp = 0;
  std::uint64_t elevations_fp = 0;
  std::string status = "ok";  // or "error: ..."
  double elapsed_ms = 0.0;    // kept out of the CSV body
};

// Runs one cell; failures come back as a row with an error status.
ResultRow run_cell(const ExperimentConfig& config, const GridCell& cell);

struct GridOptions {
  std::size_t jobs = 1;
  std::ostream* progress = nullptr;  // one line per finished cell
};

struct GridResult {
  std::vector<ResultRow> rows;  // sorted by budget, seed, strategy position
  std::size_t failures = 0;
};

GridResult run_grid(const ExperimentConfig& config, const GridOptions& options = {});

std::string csv_header();
std::string csv_row(const ResultRow& row);
// RFC 4180 quoting: cells with a comma, quote or line break are quoted.
std::string csv_quote(const std::string& cell);

// Writes the CSV plus `<path>.timing.csv` holding the elapsed wall time per
// row, so reruns produce an identical main file.
void write_results(const std::string& path, const std::vector<ResultRow>& rows);

// Config output, else `<id>.csv` in $STREAMEX_OUTPUT_DIR (or the working
// directory).
std::string default_output_path(const ExperimentConfig& config);

}  // namespace streamex
