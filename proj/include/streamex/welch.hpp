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

#include <cstdint>

namespace streamex {

// Regularized incomplete beta I_x(a, b), by continued fraction.
double regularized_incomplete_beta(double a, double b, double x);

// Two-sided p-value of Student's t with `df` degrees of freedom:
// I_{df / (df + t^2)}(df / 2, 1 / 2).
double student_t_two_sided_p(double t, double df);

// (mean_a - mean_b) / sqrt(var_a / n_a + var_b / n_b).
// With both variances zero: 0 for equal means, otherwise +-infinity.
double welch_statistic(double mean_a, double var_a, std::uint64_t n_a, double mean_b,
                       double var_b, std::uint64_t n_b);

// Welch-Satterthwaite degrees of freedom.
double welch_satterthwaite_df(double var_a, std::uint64_t n_a, double var_b, std::uint64_t n_b);

// p < alpha for the two-sided test. An infinite t is significant for any
// alpha > 0; alpha <= 0 is never significant.
bool welch_significant(double t, double df, double alpha);

struct WelchResult {
  double t = 0.0;
  double df = 0.0;
  double p_value = 1.0;
  bool significant = false;
};

// Full test on summary statistics. df is left at 0 (and p at 1 or 0) when
// both variances vanish.
WelchResult welch_test(double mean_a, double var_a, std::uint64_t n_a, double mean_b,
                       double var_b, std::uint64_t n_b, double alpha);

}  // namespace streamex
