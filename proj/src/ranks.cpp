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

#include "streamex/ranks.hpp"

#include <algorithm>
#include <boost/math/distributions/normal.hpp>
#include <cmath>
#include <numeric>

#include "streamex/core.hpp"

namespace streamex {

std::vector<double> rank_row(const std::vector<double>& scores, bool higher_is_better) {
  const std::size_t m = scores.size();
  std::vector<std::size_t> order(m);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return higher_is_better ? scores[a] > scores[b] : scores[a] < scores[b];
  });
  std::vector<double> ranks(m, 0.0);
  std::size_t i = 0;
  while (i < m) {
    std::size_t j = i;
    while (j + 1 < m && scores[order[j + 1]] == scores[order[i]]) ++j;
    const double shared = 0.5 * static_cast<double>(i + j) + 1.0;
    for (std::size_t k = i; k <= j; ++k) ranks[order[k]] = shared;
    i = j + 1;
  }
  return ranks;
}

double bonferroni_dunn_q(std::size_t methods, double alpha) {
  if (methods < 2) throw ContractViolation("bonferroni_dunn_q: need at least two methods");
  if (!(alpha > 0.0 && alpha < 1.0)) throw ContractViolation("bonferroni_dunn_q: alpha must lie in (0, 1)");
  const double tail = alpha / (2.0 * static_cast<double>(methods - 1));
  return boost::math::quantile(boost::math::normal(), 1.0 - tail);
}

RankAnalysis friedman_bonferroni_dunn(const std::vector<std::vector<double>>& scores,
                                      std::size_t control, double alpha, bool higher_is_better) {
  const std::size_t n = scores.size();
  if (n < 2) throw ContractViolation("friedman_bonferroni_dunn: need at least two datasets");
  const std::size_t m = scores.front().size();
  if (m < 2) throw ContractViolation("friedman_bonferroni_dunn: need at least two methods");
  if (control >= m) throw ContractViolation("friedman_bonferroni_dunn: control out of range");
  for (const auto& row : scores) {
    if (row.size() != m) throw ContractViolation("friedman_bonferroni_dunn: ragged score table");
    for (const double v : row) {
      if (!std::isfinite(v)) throw ContractViolation("friedman_bonferroni_dunn: non-finite score");
    }
  }

  RankAnalysis out;
  out.average_ranks.assign(m, 0.0);
  for (const auto& row : scores) {
    const auto r = rank_row(row, higher_is_better);
    for (std::size_t j = 0; j < m; ++j) out.average_ranks[j] += r[j];
  }
  for (double& r : out.average_ranks) r /= static_cast<double>(n);

  const double md = static_cast<double>(m);
  const double nd = static_cast<double>(n);
  double sum_sq = 0.0;
  for (const double r : out.average_ranks) sum_sq += r * r;
  out.friedman_chi2 = 12.0 * nd / (md * (md + 1.0)) * (sum_sq - md * (md + 1.0) * (md + 1.0) / 4.0);

  out.q_alpha = bonferroni_dunn_q(m, alpha);
  out.critical_difference = out.q_alpha * std::sqrt(md * (md + 1.0) / (6.0 * nd));
  out.differs_from_control.assign(m, false);
  for (std::size_t j = 0; j < m; ++j) {
    if (j == control) continue;
    out.differs_from_control[j] =
        std::abs(out.average_ranks[j] - out.average_ranks[control]) > out.critical_difference;
  }
  return out;
}

}  // namespace streamex
