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
#include <vector>

namespace streamex {

// Ranks 1..M of one row of scores, ties sharing the average rank.
// Rank 1 goes to the highest score when higher_is_better.
std::vector<double> rank_row(const std::vector<double>& scores, bool higher_is_better = true);

// Bonferroni-Dunn critical value for comparing `methods - 1` methods with a
// control: the standard normal quantile at 1 - alpha / (2 (methods - 1)).
double bonferroni_dunn_q(std::size_t methods, double alpha);

struct RankAnalysis {
  std::vector<double> average_ranks;
  double friedman_chi2 = 0.0;
  double q_alpha = 0.0;
  double critical_difference = 0.0;
  // Per method: average-rank distance from the control exceeds the CD.
  // Always false for the control itself.
  std::vector<bool> differs_from_control;
};

// scores[dataset][method]. Needs at least two methods and two datasets.
RankAnalysis friedman_bonferroni_dunn(const std::vector<std::vector<double>>& scores,
                                      std::size_t control, double alpha = 0.05,
                                      bool higher_is_better = true);

}  // namespace streamex
