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

#include "streamex/welch.hpp"

#include <cmath>
#include <limits>

#include "streamex/core.hpp"

namespace streamex {

namespace {

// Continued fraction for I_x(a, b) (modified Lentz).
double beta_continued_fraction(double a, double b, double x) {
  constexpr int kMaxIterations = 500;
  constexpr double kEps = 1e-16;
  constexpr double kTiny = 1e-300;

  const double qab = a + b;
  const double qap = a + 1.0;
  const double qam = a - 1.0;
  double c = 1.0;
  double d = 1.0 - qab * x / qap;
  if (std::abs(d) < kTiny) d = kTiny;
  d = 1.0 / d;
  double h = d;
  for (int m = 1; m <= kMaxIterations; ++m) {
    const double m2 = 2.0 * m;
    double aa = m * (b - m) * x / ((qam + m2) * (a + m2));
    d = 1.0 + aa * d;
    if (std::abs(d) < kTiny) d = kTiny;
    c = 1.0 + aa / c;
    if (std::abs(c) < kTiny) c = kTiny;
    d = 1.0 / d;
    h *= d * c;
    aa = -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2));
    d = 1.0 + aa * d;
    if (std::abs(d) < kTiny) d = kTiny;
    c = 1.0 + aa / c;
    if (std::abs(c) < kTiny) c = kTiny;
    d = 1.0 / d;
    const double del = d * c;
    h *= del;
    if (std::abs(del - 1.0) < kEps) break;
  }
  return h;
}

}  // namespace

double regularized_incomplete_beta(double a, double b, double x) {
  if (!(a > 0.0 && b > 0.0)) throw ContractViolation("incomplete beta: a and b must be positive");
  if (x <= 0.0) return 0.0;
  if (x >= 1.0) return 1.0;
  const double log_front = std::lgamma(a + b) - std::lgamma(a) - std::lgamma(b) +
                           a * std::log(x) + b * std::log1p(-x);
  const double front = std::exp(log_front);
  if (x < (a + 1.0) / (a + b + 2.0)) return front * beta_continued_fraction(a, b, x) / a;
  return 1.0 - front * beta_continued_fraction(b, a, 1.0 - x) / b;
}

double student_t_two_sided_p(double t, double df) {
  if (!(df > 0.0)) throw ContractViolation("student_t_two_sided_p: df must be positive");
  if (std::isinf(t)) return 0.0;
  if (t == 0.0) return 1.0;
  return regularized_incomplete_beta(0.5 * df, 0.5, df / (df + t * t));
}

double welch_statistic(double mean_a, double var_a, std::uint64_t n_a, double mean_b,
                       double var_b, std::uint64_t n_b) {
  if (n_a < 2 || n_b < 2) throw ContractViolation("welch_statistic: need at least two samples each");
  const double se2 = var_a / static_cast<double>(n_a) + var_b / static_cast<double>(n_b);
  const double diff = mean_a - mean_b;
  if (se2 <= 0.0) {
    if (diff == 0.0) return 0.0;
    return diff > 0.0 ? std::numeric_limits<double>::infinity()
                      : -std::numeric_limits<double>::infinity();
  }
  return diff / std::sqrt(se2);
}

double welch_satterthwaite_df(double var_a, std::uint64_t n_a, double var_b, std::uint64_t n_b) {
  if (n_a < 2 || n_b < 2) throw ContractViolation("welch_satterthwaite_df: need at least two samples each");
  if (var_a <= 0.0 && var_b <= 0.0) {
    throw ContractViolation("welch_satterthwaite_df: both variances are zero");
  }
  const double na = static_cast<double>(n_a);
  const double nb = static_cast<double>(n_b);
  const double qa = var_a / na;
  const double qb = var_b / nb;
  return (qa + qb) * (qa + qb) / (qa * qa / (na - 1.0) + qb * qb / (nb - 1.0));
}

bool welch_significant(double t, double df, double alpha) {
  if (alpha <= 0.0) return false;
  if (std::isinf(t)) return true;
  return student_t_two_sided_p(t, df) < alpha;
}

WelchResult welch_test(double mean_a, double var_a, std::uint64_t n_a, double mean_b,
                       double var_b, std::uint64_t n_b, double alpha) {
  WelchResult r;
  r.t = welch_statistic(mean_a, var_a, n_a, mean_b, var_b, n_b);
  if (var_a <= 0.0 && var_b <= 0.0) {
    r.p_value = r.t == 0.0 ? 1.0 : 0.0;
    r.significant = alpha > 0.0 && r.t != 0.0;
    return r;
  }
  r.df = welch_satterthwaite_df(var_a, n_a, var_b, n_b);
  r.p_value = student_t_two_sided_p(r.t, r.df);
  r.significant = welch_significant(r.t, r.df, alpha);
  return r;
}

}  // namespace streamex
