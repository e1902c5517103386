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


// End-to-end acceptance checks. Prints one PASS/FAIL line per criterion and
// exits non-zero when any of them fails.

#include <boost/math/distributions/chi_squared.hpp>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <map>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

#include "streamex/active.hpp"
#include "streamex/adwin.hpp"
#include "streamex/config.hpp"
#include "streamex/ensemble.hpp"
#include "streamex/evaluation.hpp"
#include "streamex/exploit.hpp"
#include "streamex/grid.hpp"
#include "streamex/learners.hpp"
#include "streamex/metrics.hpp"
#include "streamex/rng.hpp"
#include "streamex/streams.hpp"
#include "streamex/welch.hpp"
#include "support.hpp"

using namespace streamex;

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
};

std::string fmt(const char* f, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, f, args...);
  return buf;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

// Budget violations summed over every grid run of criteria 1 and 2.
std::uint64_t g_violations = 0;
std::uint64_t g_checked_runs = 0;

std::vector<ResultRow> run_rows(const std::string& text) {
  auto result = run_grid(parse_config(text));
  for (const auto& row : result.rows) {
    if (row.status != "ok") throw std::runtime_error("cell failed: " + row.status);
  }
  return result.rows;
}

void count_violations(const std::vector<ResultRow>& rows) {
  for (const auto& row : rows) {
    g_violations += row.budget_violations;
    ++g_checked_runs;
  }
}

// kappa[strategy][seed] for one budget.
std::map<std::string, std::vector<double>> by_strategy(const std::vector<ResultRow>& rows, double budget) {
  std::map<std::string, std::vector<double>> out;
  for (const auto& row : rows) {
    if (std::abs(row.budget - budget) < 1e-12) out[row.strategy].push_back(row.global_kappa);
  }
  return out;
}

double mean(const std::vector<double>& v) {
  double s = 0.0;
  for (const double x : v) s += x;
  return s / static_cast<double>(v.size());
}

const char* kSeaSuite = R"(
[stream]
preset = SEA1
length = 100000
[run]
seeds = [1, 2, 3, 4, 5, 6, 7, 8, 9, 10]
)";

double sgd_ratio(double learning_rate) {
  const auto rows = run_rows(std::string(kSeaSuite) + fmt(R"(
[learner]
type = SGD
learning_rate = %g
[active]
query = RandVar
budgets = [0.05]
[exploit]
strategies = [Baseline, EW]
lambda_max = 1000
window = fixed(1000)
dynamic_intensity = false
)", learning_rate));
  count_violations(rows);
  const auto k = by_strategy(rows, 0.05);
  return mean(k.at("EW")) / mean(k.at("Baseline"));
}

Outcome criterion1() {
  const auto t0 = std::chrono::steady_clock::now();
  const double slow = sgd_ratio(1e-4);
  const double elapsed = seconds_since(t0);
  const double fast = sgd_ratio(0.01);
  return {slow >= 1.5 && elapsed < 120.0,
          fmt("SGD(eta=1e-4) EW/base kappa ratio %.3f (>= 1.5), %.1fs; at eta=0.01 the ratio is %.3f", slow,
              elapsed, fast)};
}

Outcome criterion2() {
  const auto t0 = std::chrono::steady_clock::now();
  const auto rows = run_rows(std::string(kSeaSuite) + R"(
[learner]
type = AHT
[active]
query = RandVar
budgets = [0.5, 0.05]
[exploit]
strategies = [Baseline, EW]
lambda_max = 10
window = adwin
dynamic_intensity = false
)");
  count_violations(rows);
  const auto low = by_strategy(rows, 0.05), high = by_strategy(rows, 0.5);
  int wins = 0;
  const std::size_t n = low.at("EW").size();
  std::vector<double> r5, r50;
  for (std::size_t s = 0; s < n; ++s) {
    r5.push_back(low.at("EW")[s] / low.at("Baseline")[s]);
    r50.push_back(high.at("EW")[s] / high.at("Baseline")[s]);
    wins += r5.back() > r50.back();
  }
  // One-sided sign test: P(X >= wins) for X ~ Bin(n, 1/2).
  double p = 0.0;
  for (std::size_t k = static_cast<std::size_t>(wins); k <= n; ++k) {
    p += std::exp(std::lgamma(n + 1.0) - std::lgamma(k + 1.0) - std::lgamma(n - k + 1.0)) * std::pow(0.5, n);
  }
  const double elapsed = seconds_since(t0);
  return {p < 0.05 && elapsed < 300.0,
          fmt("AHT EW(10) gain at 5%% beats 50%% on %d/%zu seeds, sign-test p=%.4f (< 0.05); mean gain %.3f "
              "at 5%%, %.3f at 50%%, %.1fs",
              wins, n, p, mean(r5), mean(r50), elapsed)};
}

Outcome criterion3() {
  return {g_checked_runs > 0 && g_violations == 0,
          fmt("%llu budget violations over %llu runs", static_cast<unsigned long long>(g_violations),
              static_cast<unsigned long long>(g_checked_runs))};
}

testing::AdwinAgreement agreement_suite(bool with_shift, std::uint64_t seed) {
  Rng r(seed);
  testing::AdwinAgreement total;
  for (int trial = 0; trial < 300; ++trial) {
    const std::size_t len = 2 + r.below(255);
    const double p0 = r.uniform(), p1 = r.uniform();
    const std::size_t at = with_shift ? r.below(len) : len;
    std::vector<double> values;
    for (std::size_t i = 0; i < len; ++i) {
      const double p = i < at ? p0 : p1;
      values.push_back(trial % 2 ? (r.bernoulli(p) ? 1.0 : 0.0)
                                 : std::min(1.0, std::max(0.0, p + 0.1 * r.normal())));
    }
    const auto res = testing::compare_with_exhaustive(values, 0.002);
    total.steps += res.steps;
    total.agree += res.agree;
    total.justified += res.justified;
    total.unjustified += res.unjustified;
  }
  return total;
}

Outcome criterion4() {
  const auto t0 = std::chrono::steady_clock::now();
  const auto random = agreement_suite(false, 41);
  const auto shifted = agreement_suite(true, 42);
  Adwin a(0.002);
  for (int i = 0; i < 500; ++i) a.update(0.2);
  bool cut = false;
  for (int i = 0; i < 500; ++i) cut = a.update(0.8) || cut;
  const double rate = static_cast<double>(random.agree) / static_cast<double>(random.steps);
  const double shifted_rate = static_cast<double>(shifted.agree) / static_cast<double>(shifted.steps);
  const double elapsed = seconds_since(t0);
  const bool pass = rate >= 0.99 && random.unjustified == 0 && shifted.unjustified == 0 && cut &&
                    a.width() < 600 && elapsed < 30.0;
  return {pass, fmt("agreement %.4f on random sequences (%llu steps), %.4f with a mean shift; unjustified "
                    "mismatches %llu; 0.2->0.8 width %llu (< 600); %.1fs",
                    rate, static_cast<unsigned long long>(random.steps), shifted_rate,
                    static_cast<unsigned long long>(random.unjustified + shifted.unjustified),
                    static_cast<unsigned long long>(a.width()), elapsed)};
}

Outcome criterion5() {
  const auto t0 = std::chrono::steady_clock::now();
  Rng rng(5);
  const std::size_t omega = 100;
  const auto uw = select_indices({ExploitKind::kUniformWindow, 4.0}, omega, 400000, rng);
  std::vector<double> counts(omega, 0.0);
  for (const auto i : uw) counts[i - 1] += 1.0;
  const double expected = 400000.0 / static_cast<double>(omega);
  double chi2 = 0.0;
  for (const double c : counts) chi2 += (c - expected) * (c - expected) / expected;
  const double p = boost::math::cdf(boost::math::complement(boost::math::chi_squared(omega - 1.0), chi2));

  const auto ew = select_indices({ExploitKind::kExponentialWindow, 4.0}, 100, 1000000, rng);
  double ew_mean = 0.0;
  for (const auto i : ew) ew_mean += static_cast<double>(i);
  ew_mean /= static_cast<double>(ew.size());

  bool se_ok = true;
  for (const std::size_t w : {1, 7, 100, 1000}) {
    for (const auto i : select_indices({ExploitKind::kSingleExposition, 4.0}, w, 1000, rng)) se_ok = se_ok && i == w;
  }
  const double elapsed = seconds_since(t0);
  return {p > 0.01 && ew_mean > 75.0 && se_ok && elapsed < 30.0,
          fmt("UW chi-square p=%.3f (> 0.01); EW mean index %.2f (> 75); SE all newest: %s; %.1fs", p, ew_mean,
              se_ok ? "yes" : "no", elapsed)};
}

class Repeat final : public Classifier {
 public:
  Repeat(std::unique_ptr<Classifier> inner, std::size_t times) : inner_(std::move(inner)), times_(times) {}
  Repeat(const Repeat& other) : inner_(other.inner_->clone()), times_(other.times_) {}
  void update(const LabeledInstance& example) override {
    for (std::size_t i = 0; i < times_; ++i) inner_->update(example);
  }
  Distribution predict(std::span<const double> features) const override { return inner_->predict(features); }
  std::unique_ptr<Classifier> clone() const override { return std::make_unique<Repeat>(*this); }
  std::size_t num_classes() const override { return inner_->num_classes(); }
  std::string name() const override { return "repeat"; }

 private:
  std::unique_ptr<Classifier> inner_;
  std::size_t times_;
};

// Predicted labels of both learners agree at every step.
bool same_trace(StreamLearner& a, StreamLearner& b, std::uint64_t seed, std::size_t length) {
  auto stream = make_preset_stream(find_preset("SEA1"), Rng(seed).derive("stream"), length);
  while (auto ex = stream->next()) {
    if (argmax_label(a.predict(ex->features())) != argmax_label(b.predict(ex->features()))) return false;
    const ClassLabel y = ex->label;
    auto oracle = [y](const Instance&) { return y; };
    if (a.process(ex->instance, oracle).queried != b.process(ex->instance, oracle).queried) return false;
  }
  return true;
}

Outcome criterion6() {
  int uw_ok = 0, se_ok = 0, cases = 0;
  for (const std::uint64_t seed : {1, 2, 3}) {
    for (const auto kind : {LearnerKind::kSgd, LearnerKind::kAdaptiveTree, LearnerKind::kNaiveBayes}) {
      for (const double budget : {0.05, 0.5}) {
        ++cases;
        const QueryOptions q{.kind = QueryKind::kRandVar, .budget = budget};
        const Rng rng = Rng(seed).derive("learner");
        ExploitOptions uw;
        uw.strategy.kind = ExploitKind::kUniformWindow;
        uw.lambda_max = 0;
        ExploitingWrapper w(make_classifier(kind, 2, 3), budget, q, uw, rng);
        ActiveLearner base(make_classifier(kind, 2, 3), budget, q, rng);
        uw_ok += same_trace(w, base, seed, 20000);

        ExploitOptions se;
        se.strategy.kind = ExploitKind::kSingleExposition;
        se.lambda_max = 3;
        se.dynamic_intensity = false;
        ExploitingWrapper s(make_classifier(kind, 2, 3), budget, q, se, rng);
        ActiveLearner rep(std::make_unique<Repeat>(make_classifier(kind, 2, 3), 4), budget, q, rng);
        se_ok += same_trace(s, rep, seed, 20000);
      }
    }
  }
  return {uw_ok == cases && se_ok == cases,
          fmt("UW(lambda=0) trace equals baseline in %d/%d runs; SE(lambda=3) equals 4 repeated updates in %d/%d",
              uw_ok, cases, se_ok, cases)};
}

Outcome criterion7() {
  std::ifstream in(std::string(STREAMEX_TEST_DATA) + "/welch_reference.csv");
  if (!in) return {false, "reference fixture missing"};
  std::string line;
  std::getline(in, line);
  int rows = 0, ok = 0;
  double worst = 0.0;
  while (std::getline(in, line)) {
    std::stringstream ss(line);
    std::vector<double> v;
    for (std::string cell; std::getline(ss, cell, ',');) v.push_back(std::strtod(cell.c_str(), nullptr));
    if (v.size() != 9) continue;
    ++rows;
    const auto n0 = static_cast<std::uint64_t>(v[2]), n1 = static_cast<std::uint64_t>(v[5]);
    const double t = welch_statistic(v[0], v[1], n0, v[3], v[4], n1);
    const double df = welch_satterthwaite_df(v[1], n0, v[4], n1);
    const double et = std::abs(t - v[6]) / std::max(1e-300, std::abs(v[6]));
    const double ed = std::abs(df - v[7]) / v[7];
    worst = std::max({worst, et, ed});
    ok += et <= 1e-9 && ed <= 1e-9;
  }
  const double t = welch_statistic(0.6, 0.24, 100, 0.4, 0.24, 100);
  const double df = welch_satterthwaite_df(0.24, 100, 0.24, 100);
  const double p = student_t_two_sided_p(t, df);
  const bool worked = std::abs(t - 2.887) < 5e-4 && std::abs(df - 198.0) < 1e-9 && std::abs(p - 0.0043) < 5e-5;
  return {rows == 1000 && ok == rows && worked,
          fmt("%d/%d reference rows within 1e-9 (worst relative error %.2e); worked example t=%.4f df=%.1f p=%.5f",
              ok, rows, worst, t, df, p)};
}

// First elevation of each trial on Bernoulli error pairs with a gap of at
// least 0.3; returns {elevations, correct}.
std::pair<int, int> elevation_direction(double alpha, std::uint64_t seed) {
  Rng r(seed);
  int elevations = 0, correct = 0;
  for (int trial = 0; trial < 100; ++trial) {
    const double better = r.uniform(0.05, 0.35);
    const double worse = std::min(0.95, better + 0.3 + r.uniform(0.0, 0.2));
    const bool risky_worse = r.bernoulli(0.5);
    ElevationGate gate(alpha, 0.002);
    for (int step = 0; step < 2000; ++step) {
      const double e_r = r.bernoulli(risky_worse ? worse : better) ? 1.0 : 0.0;
      const double e_s = r.bernoulli(risky_worse ? better : worse) ? 1.0 : 0.0;
      gate.observe(e_r, e_s);
      if (const auto slot = gate.try_elevate()) {
        ++elevations;
        correct += (*slot == Slot::kRisky) == risky_worse;
        break;
      }
    }
  }
  return {elevations, correct};
}

// Elevations between learners with identical error rates.
int false_elevations(double alpha, std::uint64_t seed) {
  Rng r(seed);
  int count = 0;
  for (int trial = 0; trial < 100; ++trial) {
    const double p = r.uniform(0.1, 0.5);
    ElevationGate gate(alpha, 0.002);
    for (int step = 0; step < 1000; ++step) {
      gate.observe(r.bernoulli(p) ? 1.0 : 0.0, r.bernoulli(p) ? 1.0 : 0.0);
      count += gate.try_elevate().has_value();
    }
  }
  return count;
}

Outcome criterion8() {
  bool pass = true;
  std::string detail;
  for (const double alpha : {0.01, 0.05, 0.1}) {
    const auto [n, good] = elevation_direction(alpha, 80);
    const double rate = n ? static_cast<double>(good) / n : 0.0;
    pass = pass && n > 0 && rate >= 0.95;
    detail += fmt("alpha %.2f: %d/%d correct; ", alpha, good, n);
  }
  std::map<double, int> fp;
  for (const double alpha : {0.01, 0.05, 0.1, 0.2}) fp[alpha] = false_elevations(alpha, 81);
  for (const auto& [alpha, count] : fp) {
    if (alpha != 0.2) pass = pass && count < fp[0.2];
  }
  detail += fmt("false elevations %d/%d/%d/%d at 0.01/0.05/0.1/0.2", fp[0.01], fp[0.05], fp[0.1], fp[0.2]);
  return {pass, detail};
}

Outcome criterion9() {
  const std::string common = std::string(kSeaSuite) + R"(
[learner]
type = AHT
[active]
query = RandVar
budgets = [0.05]
[exploit]
lambda_max = 10
window = adwin
dynamic_intensity = false
)";
  const auto raw = by_strategy(run_rows(common + "strategies = [Baseline, SE]\n"), 0.05);
  const auto ens = by_strategy(run_rows(common + "strategies = [SE]\n[ensemble]\nmode = switching\n"), 0.05);
  const auto& base = raw.at("Baseline");
  const auto& se = raw.at("SE");
  const auto& sw = ens.at("SE");
  int held = 0, below = 0;
  double worst = 1.0;
  for (std::size_t s = 0; s < base.size(); ++s) {
    held += sw[s] >= base[s] - 0.02;
    below += se[s] < base[s];
    worst = std::min(worst, sw[s] - base[s]);
  }
  const int n = static_cast<int>(base.size());
  return {held == n && below >= 3,
          fmt("switching >= base - 0.02 on %d/%d seeds (worst gap %+.3f); raw SE below base on %d/%d; mean kappa "
              "base %.3f, SE %.3f, switching %.3f",
              held, n, worst, below, n, mean(base), mean(se), mean(sw))};
}

Outcome criterion10() {
  ConfusionMatrix m(2);
  m.add(0, 0, 40);
  m.add(0, 1, 10);
  m.add(1, 0, 20);
  m.add(1, 1, 30);
  const double k = kappa(m);

  std::size_t checked = 0, pure = 0;
  for (const char* name : {"SEA1", "STAG1", "RBF1", "TREE1"}) {
    auto stream = make_preset_stream(find_preset(name), Rng(3), 20000);
    while (auto ex = stream->next()) {
      if (stream->last_was_noise()) continue;
      ++checked;
      pure += stream->concept_at(stream->last_concept()).label_of(ex->features()) == ex->label;
    }
  }
  std::vector<DriftingStream::Drift> none;
  DriftingStream clean(std::make_unique<SeaConcept>(9.0), std::move(none), 0.0, 20000, Rng(5));
  std::size_t clean_n = 0, clean_ok = 0;
  while (auto ex = clean.next()) {
    ++clean_n;
    clean_ok += ex->label == (ex->features()[0] + ex->features()[1] <= 9.0 ? 1u : 0u);
  }

  auto noisy = make_preset_stream(find_preset("SEA1"), Rng(4), 100000);
  double flips = 0.0, n = 0.0;
  while (noisy->next()) {
    n += 1.0;
    flips += noisy->last_was_noise();
  }
  const double rate = flips / n;
  const double sigma = std::sqrt(0.05 * 0.95 / n);
  const double f0 = sigmoid_probability(transition_of_width(5000.0, 100.0), 5000.0);

  const bool pass = std::abs(k - 0.4) < 1e-12 && pure == checked && clean_ok == clean_n &&
                    std::abs(rate - 0.05) <= 3.0 * sigma && f0 == 0.5;
  return {pass, fmt("kappa %.4f; label purity %zu/%zu and %zu/%zu at noise 0; noise rate %.4f (3 sigma %.4f); "
                    "f(t0)=%.3f",
                    k, pure, checked, clean_ok, clean_n, rate, 3.0 * sigma, f0)};
}

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

Outcome criterion11() {
  const auto cfg = parse_config(R"(
[stream]
preset = STAG1
length = 20000
[learner]
type = AHT
[active]
budgets = [0.5, 0.1]
[exploit]
strategies = [Baseline, UW, EW, SE]
window = adwin
[ensemble]
mode = elevating
[run]
id = determinism
seeds = [1, 2]
)");
  const auto dir = std::filesystem::temp_directory_path() / "streamex_acceptance";
  std::filesystem::create_directories(dir);
  const std::string a = (dir / "a.csv").string(), b = (dir / "b.csv").string();
  write_results(a, run_grid(cfg, {.jobs = 1}).rows);
  write_results(b, run_grid(cfg, {.jobs = 2}).rows);
  const std::string first = slurp(a), second = slurp(b);
  std::filesystem::remove_all(dir);
  const auto lines = std::count(first.begin(), first.end(), '\n');
  return {!first.empty() && first == second,
          fmt("two runs (1 and 2 jobs) wrote %zu-byte CSVs with %ld lines; identical: %s", first.size(),
              static_cast<long>(lines), first == second ? "yes" : "no")};
}

}  // namespace

int main() {
  const std::vector<std::function<Outcome()>> criteria{criterion1, criterion2, criterion3, criterion4,
                                                        criterion5, criterion6, criterion7, criterion8,
                                                        criterion9, criterion10, criterion11};
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Outcome out;
    try {
      out = criteria[i]();
    } catch (const std::exception& e) {
      out = {false, std::string("exception: ") + e.what()};
    }
    failed += !out.pass;
    std::printf("criterion %2zu: %s  %s\n", i + 1, out.pass ? "PASS" : "FAIL", out.detail.c_str());
    std::fflush(stdout);
  }
  std::printf("%d of %zu criteria failed\n", failed, criteria.size());
  return failed == 0 ? 0 : 1;
}
