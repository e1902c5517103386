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

#include "streamex/grid.hpp"

#include <algorithm>
#include <atomic>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <mutex>
#include <ostream>
#include <thread>
#include <tuple>

#include "streamex/active.hpp"
#include "streamex/ensemble.hpp"
#include "streamex/evaluation.hpp"
#include "streamex/exploit.hpp"
#include "streamex/learners.hpp"
#include "streamex/metrics.hpp"
#include "streamex/stream_reader.hpp"

namespace streamex {

std::unique_ptr<Classifier> make_classifier(LearnerKind kind, std::size_t classes, std::size_t dims,
                                            SgdLoss loss, double learning_rate) {
  switch (kind) {
    case LearnerKind::kNaiveBayes: return std::make_unique<NaiveBayes>(classes, dims);
    case LearnerKind::kSgd: {
      SgdOptions options;
      options.loss = loss;
      options.learning_rate = learning_rate;
      return std::make_unique<SgdLinear>(classes, dims, options);
    }
    case LearnerKind::kHoeffdingTree: return std::make_unique<HoeffdingTree>(classes, dims);
    case LearnerKind::kAdaptiveTree: return std::make_unique<AdaptiveHoeffdingTree>(classes, dims);
  }
  throw ContractViolation("make_classifier: unknown learner kind");
}

std::vector<GridCell> expand_grid(const ExperimentConfig& config) {
  std::vector<GridCell> cells;
  for (std::size_t b = 0; b < config.budgets.size(); ++b) {
    for (std::size_t s = 0; s < config.seeds.size(); ++s) {
      for (std::size_t k = 0; k < config.strategies.size(); ++k) cells.push_back({b, s, k});
    }
  }
  return cells;
}

namespace {

Rng learner_rng(std::uint64_t seed) { return Rng(seed).derive("learner"); }

ExploitKind exploit_kind(StrategyKind kind) {
  switch (kind) {
    case StrategyKind::kUniformWindow: return ExploitKind::kUniformWindow;
    case StrategyKind::kExponentialWindow: return ExploitKind::kExponentialWindow;
    case StrategyKind::kSingleExposition: return ExploitKind::kSingleExposition;
    case StrategyKind::kBaseline: break;
  }
  throw ContractViolation("exploit_kind: baseline has no exploitation strategy");
}

std::string format_real(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6f", v);
  return buf;
}

std::string format_optional(const std::optional<double>& v) { return v ? format_real(*v) : ""; }

}  // namespace

std::unique_ptr<StreamLearner> make_stream_learner(const ExperimentConfig& config,
                                                   const GridCell& cell, std::size_t classes,
                                                   std::size_t dims) {
  const double budget = config.budgets.at(cell.budget_index);
  const StrategyKind strategy = config.strategies.at(cell.strategy_index);
  const Rng rng = learner_rng(config.seeds.at(cell.seed_index));

  QueryOptions query;
  query.kind = config.query;
  query.budget = budget;

  auto base = make_classifier(config.learner, classes, dims, config.loss, config.learning_rate);
  if (strategy == StrategyKind::kBaseline) {
    return std::make_unique<ActiveLearner>(std::move(base), budget, query, rng);
  }

  ExploitOptions exploit;
  exploit.strategy.kind = exploit_kind(strategy);
  exploit.strategy.gamma = config.gamma;
  exploit.lambda_max = config.lambda_max.at(cell.budget_index);
  exploit.dynamic_intensity = config.dynamic_intensity;
  exploit.window = config.window;
  exploit.monitor_delta = config.alpha_theta.at(cell.budget_index);

  if (config.ensemble == EnsembleKind::kNone) {
    return std::make_unique<ExploitingWrapper>(std::move(base), budget, query, exploit, rng);
  }
  EnsembleOptions ensemble;
  ensemble.mode = config.ensemble == EnsembleKind::kElevating ? EnsembleMode::kElevating
                                                               : EnsembleMode::kSwitching;
  ensemble.alpha = config.alpha_e;
  ensemble.track_truth = true;
  return std::make_unique<PairedEnsemble>(std::move(base), budget, query, exploit, ensemble, rng);
}

std::unique_ptr<InstanceSource> open_source(const ExperimentConfig& config, std::uint64_t seed) {
  if (!config.preset.empty()) {
    return make_preset_stream(find_preset(config.preset), Rng(seed).derive("stream"), config.length);
  }
  return open_stream_file(config.file);
}

ResultRow run_cell(const ExperimentConfig& config, const GridCell& cell) {
  ResultRow row;
  row.cell = cell;
  row.config_id = config.id;
  row.seed = config.seeds.at(cell.seed_index);
  row.budget = config.budgets.at(cell.budget_index);
  row.learner = to_string(config.learner);
  row.query = to_string(config.query);
  const StrategyKind strategy = config.strategies.at(cell.strategy_index);
  row.strategy = to_string(strategy);
  const bool baseline = strategy == StrategyKind::kBaseline;
  row.lambda_max = baseline ? 0 : config.lambda_max.at(cell.budget_index);
  row.window = baseline ? "" : to_string(config.window);
  row.ensemble = baseline ? "none" : to_string(config.ensemble);

  try {
    auto source = open_source(config, row.seed);
    auto learner = make_stream_learner(config, cell, source->num_classes(), source->dims());

    EvaluationOptions options;
    options.window_width = config.window_width;
    options.stride = config.stride;
    options.adaptive_window = config.adaptive_window;
    if (config.preset.empty() && config.length) options.max_instances = *config.length;
    const EvaluationReport report = run_test_then_train(*learner, *source, options);

    row.instances = report.instances;
    row.global_kappa = report.global_kappa;
    row.accuracy = report.accuracy;
    row.spending = report.spending;
    row.labeled = report.labeled;
    row.updates = report.updates;
    row.budget_violations = report.budget_violations;
    row.elapsed_ms = report.elapsed_ms;

    const SegmentSchedule schedule =
        config.preset.empty() ? SegmentSchedule({}, report.instances)
                              : SegmentSchedule::for_preset(find_preset(config.preset), config.length);
    const SegmentSummary summary = segment_average(report.series, schedule);
    row.stable_kappa = summary.stable;
    row.drift_kappa = summary.drift;
    row.balanced_kappa = summary.balanced;

    if (const auto* pair = dynamic_cast<const PairedEnsemble*>(learner.get())) {
      row.elevations = pair->elevations().total;
      row.elevations_tp = pair->elevations().true_positive;
      row.elevations_fp = pair->elevations().false_positive;
    }
  } catch (const std::exception& e) {
    row.status = std::string("error: ") + e.what();
  }
  return row;
}

GridResult run_grid(const ExperimentConfig& config, const GridOptions& options) {
  const std::vector<GridCell> cells = expand_grid(config);
  std::vector<ResultRow> rows(cells.size());
  std::atomic<std::size_t> next{0};
  std::atomic<std::size_t> done{0};
  std::mutex progress_mutex;

  auto worker = [&]() {
    for (std::size_t i = next++; i < cells.size(); i = next++) {
      rows[i] = run_cell(config, cells[i]);
      const std::size_t finished = ++done;
      if (options.progress) {
        const ResultRow& r = rows[i];
        std::lock_guard<std::mutex> lock(progress_mutex);
        *options.progress << "[" << finished << "/" << cells.size() << "] budget=" << r.budget
                          << " seed=" << r.seed << " strategy=" << r.strategy
                          << " kappa=" << format_real(r.global_kappa) << " " << r.status << "\n";
        options.progress->flush();
      }
    }
  };

  const std::size_t jobs = std::max<std::size_t>(1, std::min(options.jobs, cells.size()));
  std::vector<std::thread> threads;
  for (std::size_t j = 1; j < jobs; ++j) threads.emplace_back(worker);
  worker();
  for (auto& t : threads) t.join();

  std::sort(rows.begin(), rows.end(), [](const ResultRow& a, const ResultRow& b) {
    return std::tie(a.cell.budget_index, a.cell.seed_index, a.cell.strategy_index) <
           std::tie(b.cell.budget_index, b.cell.seed_index, b.cell.strategy_index);
  });
  GridResult result;
  result.failures = static_cast<std::size_t>(
      std::count_if(rows.begin(), rows.end(), [](const ResultRow& r) { return r.status != "ok"; }));
  result.rows = std::move(rows);
  return result;
}

std::string csv_quote(const std::string& cell) {
  if (cell.find_first_of(",\"\r\n") == std::string::npos) return cell;
  std::string out = "\"";
  for (const char c : cell) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

std::string csv_header() {
  return "config_id,seed,budget,learner,query,strategy,lambda_max,window,ensemble,instances,"
         "global_kappa,stable_kappa,drift_kappa,balanced_kappa,accuracy,spending,labeled,updates,"
         "budget_violations,elevations,elevations_tp,elevations_fp,status";
}

std::string csv_row(const ResultRow& r) {
  const std::vector<std::string> cells{
      csv_quote(r.config_id),
      std::to_string(r.seed),
      format_real(r.budget),
      csv_quote(r.learner),
      csv_quote(r.query),
      csv_quote(r.strategy),
      std::to_string(r.lambda_max),
      csv_quote(r.window),
      csv_quote(r.ensemble),
      std::to_string(r.instances),
      format_real(r.global_kappa),
      format_optional(r.stable_kappa),
      format_optional(r.drift_kappa),
      format_optional(r.balanced_kappa),
      format_real(r.accuracy),
      format_real(r.spending),
      std::to_string(r.labeled),
      std::to_string(r.updates),
      std::to_string(r.budget_violations),
      std::to_string(r.elevations),
      std::to_string(r.elevations_tp),
      std::to_string(r.elevations_fp),
      csv_quote(r.status),
  };
  std::string line;
  for (std::size_t i = 0; i < cells.size(); ++i) {
    if (i) line += ',';
    line += cells[i];
  }
  return line;
}

void write_results(const std::string& path, const std::vector<ResultRow>& rows) {
  const std::filesystem::path target(path);
  if (target.has_parent_path()) std::filesystem::create_directories(target.parent_path());
  std::ofstream out(path, std::ios::binary);
  if (!out) throw DataError("cannot write '" + path + "'");
  out << csv_header() << "\n";
  for (const auto& row : rows) out << csv_row(row) << "\n";

  std::ofstream timing(path + ".timing.csv", std::ios::binary);
  if (!timing) throw DataError("cannot write '" + path + ".timing.csv'");
  timing << "config_id,seed,budget,strategy,elapsed_ms\n";
  for (const auto& r : rows) {
    timing << csv_quote(r.config_id) << ',' << r.seed << ',' << format_real(r.budget) << ','
           << csv_quote(r.strategy) << ',' << format_real(r.elapsed_ms) << "\n";
  }
}

std::string default_output_path(const ExperimentConfig& config) {
  if (!config.output.empty()) return config.output;
  std::filesystem::path dir = ".";
  if (const char* env = std::getenv("STREAMEX_OUTPUT_DIR"); env && *env) dir = env;
  return (dir / (config.id + ".csv")).string();
}

}  // namespace streamex
